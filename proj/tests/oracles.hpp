// Independent brute-force oracles used by the tests.  They read categories
// through the raw accessors only (dom, cod, compose, leq, hom) and never
// call the library's checkers.

#ifndef POSCAT_TESTS_ORACLES_HPP
#define POSCAT_TESTS_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "poscat/category.hpp"

namespace oracle {

  using poscat::FinPosCategory;
  using poscat::MorphismId;
  using poscat::ObjectId;

  // ---------------------------------------------------------------------
  // Raw tables and the five laws.

  struct Table {
    int                            objects = 0;
    std::vector<int>               dom, cod, id;
    std::vector<std::vector<int>>  comp;  // comp[g][f] = g∘f or -1
    std::vector<std::vector<bool>> leq;   // generators, closed by laws_hold
  };

  inline Table from_tables(poscat::CategoryTables const& t) {
    Table r;
    r.objects    = static_cast<int>(t.object_names.size());
    auto const m = t.morphism_names.size();
    for (std::size_t k = 0; k < m; ++k) {
      r.dom.push_back(static_cast<int>(t.dom[k]));
      r.cod.push_back(static_cast<int>(t.cod[k]));
    }
    for (auto i : t.identity) {
      r.id.push_back(static_cast<int>(i));
    }
    r.comp.assign(m, std::vector<int>(m, -1));
    r.leq.assign(m, std::vector<bool>(m, false));
    for (auto const& c : t.compose) {
      auto& slot = r.comp[poscat::index(c.outer)][poscat::index(c.inner)];
      // Conflicting duplicates are recorded as an impossible value.
      slot = (slot == -1 || slot == static_cast<int>(c.result)) ? static_cast<int>(c.result) : -2;
    }
    for (auto [a, b] : t.order) {
      r.leq[poscat::index(a)][poscat::index(b)] = true;
    }
    return r;
  }

  inline bool laws_hold(Table t) {
    int const m = static_cast<int>(t.dom.size());
    if (static_cast<int>(t.id.size()) != t.objects || static_cast<int>(t.cod.size()) != m) {
      return false;
    }
    for (int k = 0; k < m; ++k) {
      if (t.dom[k] < 0 || t.dom[k] >= t.objects || t.cod[k] < 0 || t.cod[k] >= t.objects) {
        return false;
      }
    }
    std::vector<int> is_id(m, 0);
    for (int x = 0; x < t.objects; ++x) {
      int const i = t.id[x];
      if (i < 0 || i >= m || t.dom[i] != x || t.cod[i] != x || is_id[i]) {
        return false;
      }
      is_id[i] = 1;
    }
    // Identity pairs may be omitted.
    for (int g = 0; g < m; ++g) {
      for (int f = 0; f < m; ++f) {
        if (t.cod[f] != t.dom[g]) {
          if (t.comp[g][f] != -1) {
            return false;
          }
          continue;
        }
        if (t.comp[g][f] == -1) {
          if (is_id[g]) {
            t.comp[g][f] = f;
          } else if (is_id[f]) {
            t.comp[g][f] = g;
          }
        }
        int const r = t.comp[g][f];
        if (r < 0 || r >= m || t.dom[r] != t.dom[f] || t.cod[r] != t.cod[g]) {
          return false;
        }
      }
    }
    for (int f = 0; f < m; ++f) {
      if (t.comp[t.id[t.cod[f]]][f] != f || t.comp[f][t.id[t.dom[f]]] != f) {
        return false;
      }
      for (int g = 0; g < m; ++g) {
        if (t.cod[f] != t.dom[g]) {
          continue;
        }
        for (int h = 0; h < m; ++h) {
          if (t.cod[g] == t.dom[h] && t.comp[h][t.comp[g][f]] != t.comp[t.comp[h][g]][f]) {
            return false;
          }
        }
      }
    }
    for (int a = 0; a < m; ++a) {
      t.leq[a][a] = true;
      for (int b = 0; b < m; ++b) {
        if (t.leq[a][b] && (t.dom[a] != t.dom[b] || t.cod[a] != t.cod[b])) {
          return false;
        }
      }
    }
    for (int k = 0; k < m; ++k) {
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          if (t.leq[a][k] && t.leq[k][b]) {
            t.leq[a][b] = true;
          }
        }
      }
    }
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if (a != b && t.leq[a][b] && t.leq[b][a]) {
          return false;
        }
        if (!t.leq[a][b]) {
          continue;
        }
        for (int w = 0; w < m; ++w) {
          if (t.dom[w] == t.cod[a] && !t.leq[t.comp[w][a]][t.comp[w][b]]) {
            return false;
          }
          if (t.cod[w] == t.dom[a] && !t.leq[t.comp[a][w]][t.comp[b][w]]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  // ---------------------------------------------------------------------
  // Naive enumeration: identities are 0..n-1, the rest n..m-1.  Every
  // composition table and every partial order is tried, then classes are
  // counted by minimizing over all relabelings.

  inline std::vector<int> encode(Table const& t,
                                 std::vector<int> const& objs,
                                 std::vector<int> const& rest) {
    int const        n = t.objects;
    int const        m = static_cast<int>(t.dom.size());
    std::vector<int> to(m);
    for (int x = 0; x < n; ++x) {
      to[x] = objs[x];
    }
    for (int k = n; k < m; ++k) {
      to[k] = n + rest[k - n];
    }
    std::vector<int> from(m);
    for (int k = 0; k < m; ++k) {
      from[to[k]] = k;
    }
    std::vector<int> code{n, m};
    for (int k = 0; k < m; ++k) {
      code.push_back(objs[t.dom[from[k]]]);
      code.push_back(objs[t.cod[from[k]]]);
    }
    for (int g = 0; g < m; ++g) {
      for (int f = 0; f < m; ++f) {
        int const r = t.comp[from[g]][from[f]];
        code.push_back(r < 0 ? -1 : to[r]);
      }
    }
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        code.push_back(t.leq[from[a]][from[b]] ? 1 : 0);
      }
    }
    return code;
  }

  inline std::vector<int> canonical(Table const& t) {
    int const        n = t.objects;
    int const        k = static_cast<int>(t.dom.size()) - n;
    std::vector<int> objs(n), rest(k);
    std::iota(objs.begin(), objs.end(), 0);
    std::vector<int> best;
    do {
      std::iota(rest.begin(), rest.end(), 0);
      do {
        auto code = encode(t, objs, rest);
        if (best.empty() || code < best) {
          best = std::move(code);
        }
      } while (std::next_permutation(rest.begin(), rest.end()));
    } while (std::next_permutation(objs.begin(), objs.end()));
    return best;
  }

  // All (closed) partial orders on the parallel classes, as leq matrices.
  inline void for_each_order(Table& t, std::function<void()> const& visit) {
    int const                        m = static_cast<int>(t.dom.size());
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if (a != b && t.dom[a] == t.dom[b] && t.cod[a] == t.cod[b]) {
          pairs.emplace_back(a, b);
        }
      }
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
      t.leq.assign(m, std::vector<bool>(m, false));
      for (int a = 0; a < m; ++a) {
        t.leq[a][a] = true;
      }
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (mask >> p & 1) {
          t.leq[pairs[p].first][pairs[p].second] = true;
        }
      }
      bool ok = true;
      for (int a = 0; a < m && ok; ++a) {
        for (int b = 0; b < m && ok; ++b) {
          for (int c = 0; c < m && ok; ++c) {
            ok = !(t.leq[a][b] && t.leq[b][c] && !t.leq[a][c]);
          }
          ok = ok && !(a != b && t.leq[a][b] && t.leq[b][a]);
        }
      }
      if (ok) {
        visit();
      }
    }
  }

  inline std::size_t count_categories(int max_objects, int max_morphisms) {
    std::set<std::vector<int>> classes;
    for (int n = 1; n <= max_objects; ++n) {
      for (int m = n; m <= max_morphisms; ++m) {
        int const k = m - n;
        Table     t;
        t.objects = n;
        t.id.resize(n);
        std::iota(t.id.begin(), t.id.end(), 0);
        t.dom.assign(m, 0);
        t.cod.assign(m, 0);
        for (int x = 0; x < n; ++x) {
          t.dom[x] = t.cod[x] = x;
        }
        // dom/cod of the non-identities, as one base-n counter.
        std::vector<int> ends(2 * k, 0);
        while (true) {
          for (int j = 0; j < k; ++j) {
            t.dom[n + j] = ends[2 * j];
            t.cod[n + j] = ends[2 * j + 1];
          }
          t.comp.assign(m, std::vector<int>(m, -1));
          std::vector<std::pair<int, int>> free;
          for (int g = 0; g < m; ++g) {
            for (int f = 0; f < m; ++f) {
              if (t.cod[f] != t.dom[g]) {
                continue;
              }
              if (g < n) {
                t.comp[g][f] = f;
              } else if (f < n) {
                t.comp[g][f] = g;
              } else {
                free.emplace_back(g, f);
              }
            }
          }
          // Candidate results per free pair.
          std::vector<std::vector<int>> options;
          for (auto [g, f] : free) {
            std::vector<int> o;
            for (int r = 0; r < m; ++r) {
              if (t.dom[r] == t.dom[f] && t.cod[r] == t.cod[g]) {
                o.push_back(r);
              }
            }
            options.push_back(o);
          }
          std::vector<std::size_t> choice(free.size(), 0);
          bool                     feasible = std::all_of(options.begin(), options.end(),
                                                          [](auto const& o) { return !o.empty(); });
          while (feasible) {
            for (std::size_t p = 0; p < free.size(); ++p) {
              t.comp[free[p].first][free[p].second] = options[p][choice[p]];
            }
            Table discrete = t;
            discrete.leq.assign(m, std::vector<bool>(m, false));
            if (laws_hold(discrete)) {
              for_each_order(t, [&] {
                if (laws_hold(t)) {
                  classes.insert(canonical(t));
                }
              });
            }
            std::size_t p = 0;
            while (p < free.size() && ++choice[p] == options[p].size()) {
              choice[p++] = 0;
            }
            if (p == free.size()) {
              break;
            }
          }
          std::size_t j = 0;
          while (j < ends.size() && ++ends[j] == n) {
            ends[j++] = 0;
          }
          if (j == ends.size()) {
            break;
          }
        }
      }
    }
    return classes.size();
  }

  // ---------------------------------------------------------------------
  // Category-level helpers.

  inline std::vector<MorphismId> hom(FinPosCategory const& c, ObjectId x, ObjectId y) {
    std::vector<MorphismId> out;
    for (std::size_t k = 0; k < c.number_of_morphisms(); ++k) {
      auto const f = poscat::morphism_id(k);
      if (c.dom(f) == x && c.cod(f) == y) {
        out.push_back(f);
      }
    }
    return out;
  }

  inline std::vector<ObjectId> objects(FinPosCategory const& c) {
    std::vector<ObjectId> out;
    for (std::size_t i = 0; i < c.number_of_objects(); ++i) {
      out.push_back(poscat::object_id(i));
    }
    return out;
  }

  inline std::vector<MorphismId> morphisms(FinPosCategory const& c) {
    std::vector<MorphismId> out;
    for (std::size_t k = 0; k < c.number_of_morphisms(); ++k) {
      out.push_back(poscat::morphism_id(k));
    }
    return out;
  }

  inline MorphismId after(FinPosCategory const& c, MorphismId g, MorphismId f) {
    return c.compose(g, f);
  }

  // Legs of a binary cone (p0, p1) out of P.
  struct Pair {
    ObjectId   apex;
    MorphismId p0, p1;
    friend auto operator<=>(Pair const&, Pair const&) = default;
  };

  // Weak binary product: every (u, v) out of any A factors.
  inline std::set<Pair> weak_products(FinPosCategory const& c, ObjectId x, ObjectId y) {
    std::set<Pair> out;
    for (auto p : objects(c)) {
      for (auto p0 : hom(c, p, x)) {
        for (auto p1 : hom(c, p, y)) {
          bool ok = true;
          for (auto a : objects(c)) {
            for (auto u : hom(c, a, x)) {
              for (auto v : hom(c, a, y)) {
                bool found = false;
                for (auto h : hom(c, a, p)) {
                  found = found || (after(c, p0, h) == u && after(c, p1, h) == v);
                }
                ok = ok && found;
              }
            }
          }
          if (ok) {
            out.insert({p, p0, p1});
          }
        }
      }
    }
    return out;
  }

  // Strict binary product: h |-> (p0 h, p1 h) is an order isomorphism.
  inline std::set<Pair> strict_products(FinPosCategory const& c, ObjectId x, ObjectId y) {
    std::set<Pair> out;
    for (auto const& w : weak_products(c, x, y)) {
      bool ok = true;
      for (auto a : objects(c)) {
        auto const hs = hom(c, a, w.apex);
        for (auto h : hs) {
          for (auto k : hs) {
            bool const legs = c.leq(after(c, w.p0, h), after(c, w.p0, k))
                              && c.leq(after(c, w.p1, h), after(c, w.p1, k));
            ok = ok && (legs == c.leq(h, k));
          }
        }
      }
      if (ok) {
        out.insert(w);
      }
    }
    return out;
  }

  // Weak inserter of f, g: X -> Y, as (E, e) with f e <= g e.
  inline std::set<std::pair<ObjectId, MorphismId>>
  weak_inserters(FinPosCategory const& c, MorphismId f, MorphismId g) {
    std::set<std::pair<ObjectId, MorphismId>> out;
    auto const x = c.dom(f);
    for (auto e_obj : objects(c)) {
      for (auto e : hom(c, e_obj, x)) {
        if (!c.leq(after(c, f, e), after(c, g, e))) {
          continue;
        }
        bool ok = true;
        for (auto a : objects(c)) {
          for (auto h : hom(c, a, x)) {
            if (!c.leq(after(c, f, h), after(c, g, h))) {
              continue;
            }
            bool found = false;
            for (auto u : hom(c, a, e_obj)) {
              found = found || after(c, e, u) == h;
            }
            ok = ok && found;
          }
        }
        if (ok) {
          out.insert({e_obj, e});
        }
      }
    }
    return out;
  }

  // Weak comma of f: X -> Z, g: Y -> Z: legs (c0, c1) with f c0 <= g c1.
  inline std::set<Pair> weak_commas(FinPosCategory const& c, MorphismId f, MorphismId g) {
    std::set<Pair> out;
    auto const     x = c.dom(f);
    auto const     y = c.dom(g);
    for (auto p : objects(c)) {
      for (auto c0 : hom(c, p, x)) {
        for (auto c1 : hom(c, p, y)) {
          if (!c.leq(after(c, f, c0), after(c, g, c1))) {
            continue;
          }
          bool ok = true;
          for (auto a : objects(c)) {
            for (auto u : hom(c, a, x)) {
              for (auto v : hom(c, a, y)) {
                if (!c.leq(after(c, f, u), after(c, g, v))) {
                  continue;
                }
                bool found = false;
                for (auto h : hom(c, a, p)) {
                  found = found || (after(c, c0, h) == u && after(c, c1, h) == v);
                }
                ok = ok && found;
              }
            }
          }
          if (ok) {
            out.insert({p, c0, c1});
          }
        }
      }
    }
    return out;
  }

  // ---------------------------------------------------------------------
  // ff, so, coinserters, projectives, straight from the definitions.

  inline bool ff(FinPosCategory const& c, MorphismId m) {
    for (auto z : objects(c)) {
      auto const hs = hom(c, z, c.dom(m));
      for (auto u : hs) {
        for (auto v : hs) {
          if (c.leq(after(c, m, u), after(c, m, v)) && !c.leq(u, v)) {
            return false;
          }
        }
      }
    }
    return true;
  }

  inline bool so(FinPosCategory const& c, MorphismId e) {
    auto const a = c.dom(e);
    auto const b = c.cod(e);
    for (auto m : morphisms(c)) {
      if (!ff(c, m)) {
        continue;
      }
      auto const x = c.dom(m);
      auto const y = c.cod(m);
      for (auto f : hom(c, a, x)) {
        for (auto g : hom(c, b, y)) {
          if (after(c, g, e) != after(c, m, f)) {
            continue;
          }
          int count = 0;
          for (auto h : hom(c, b, x)) {
            count += (after(c, h, e) == f && after(c, m, h) == g) ? 1 : 0;
          }
          if (count != 1) {
            return false;
          }
        }
      }
      for (auto h : hom(c, b, x)) {
        for (auto k : hom(c, b, x)) {
          bool const both = c.leq(after(c, h, e), after(c, k, e))
                            && c.leq(after(c, m, h), after(c, m, k));
          if (both != c.leq(h, k)) {
            return false;
          }
        }
      }
    }
    return true;
  }

  // q: Y -> Q with q f <= q g, every h with h f <= h g factoring uniquely,
  // and u |-> u q order-reflecting.
  inline bool coinserter(FinPosCategory const& c, MorphismId f, MorphismId g, MorphismId q) {
    if (c.dom(q) != c.cod(f) || !c.leq(after(c, q, f), after(c, q, g))) {
      return false;
    }
    auto const y  = c.cod(f);
    auto const qo = c.cod(q);
    for (auto z : objects(c)) {
      for (auto h : hom(c, y, z)) {
        if (!c.leq(after(c, h, f), after(c, h, g))) {
          continue;
        }
        int count = 0;
        for (auto u : hom(c, qo, z)) {
          count += after(c, u, q) == h ? 1 : 0;
        }
        if (count != 1) {
          return false;
        }
      }
      for (auto u : hom(c, qo, z)) {
        for (auto v : hom(c, qo, z)) {
          if (c.leq(after(c, u, q), after(c, v, q)) != c.leq(u, v)) {
            return false;
          }
        }
      }
    }
    return true;
  }

  inline bool projective(FinPosCategory const& c, ObjectId p) {
    for (auto e : morphisms(c)) {
      if (!so(c, e)) {
        continue;
      }
      for (auto f : hom(c, p, c.cod(e))) {
        bool found = false;
        for (auto l : hom(c, p, c.dom(e))) {
          found = found || after(c, e, l) == f;
        }
        if (!found) {
          return false;
        }
      }
    }
    return true;
  }

  // ---------------------------------------------------------------------
  // Pseudocongruences and the size of the exact completion.

  struct Pseudo {
    ObjectId   x, r;
    MorphismId r0, r1;
  };

  inline bool pseudocongruence(FinPosCategory const& c, Pseudo const& s) {
    for (auto a : objects(c)) {
      auto const to_x = hom(c, a, s.x);
      auto const to_r = hom(c, a, s.r);
      for (auto a0 : to_x) {
        for (auto a1 : to_x) {
          if (!c.leq(a0, a1)) {
            continue;
          }
          bool found = false;
          for (auto u : to_r) {
            found = found || (after(c, s.r0, u) == a0 && after(c, s.r1, u) == a1);
          }
          if (!found) {
            return false;
          }
        }
      }
      for (auto u : to_r) {
        for (auto v : to_r) {
          if (after(c, s.r1, u) != after(c, s.r0, v)) {
            continue;
          }
          bool found = false;
          for (auto t : to_r) {
            found = found
                    || (after(c, s.r0, t) == after(c, s.r0, u)
                        && after(c, s.r1, t) == after(c, s.r1, v));
          }
          if (!found) {
            return false;
          }
        }
      }
    }
    return true;
  }

  inline std::vector<Pseudo> pseudocongruences(FinPosCategory const& c) {
    std::vector<Pseudo> out;
    for (auto x : objects(c)) {
      for (auto r : objects(c)) {
        for (auto r0 : hom(c, r, x)) {
          for (auto r1 : hom(c, r, x)) {
            Pseudo const s{x, r, r0, r1};
            if (pseudocongruence(c, s)) {
              out.push_back(s);
            }
          }
        }
      }
    }
    return out;
  }

  // Number of morphisms (X,R) -> (Y,S): liftable f modulo mutual ≼.
  inline std::size_t ex_hom_size(FinPosCategory const& c, Pseudo const& p, Pseudo const& q) {
    std::vector<MorphismId> liftable;
    for (auto f : hom(c, p.x, q.x)) {
      bool found = false;
      for (auto l : hom(c, p.r, q.r)) {
        found = found
                || (after(c, q.r0, l) == after(c, f, p.r0)
                    && after(c, q.r1, l) == after(c, f, p.r1));
      }
      if (found) {
        liftable.push_back(f);
      }
    }
    auto below = [&](MorphismId f, MorphismId g) {
      for (auto s : hom(c, p.x, q.r)) {
        if (after(c, q.r0, s) == f && after(c, q.r1, s) == g) {
          return true;
        }
      }
      return false;
    };
    std::size_t      classes = 0;
    std::vector<int> seen(liftable.size(), 0);
    for (std::size_t i = 0; i < liftable.size(); ++i) {
      if (seen[i]) {
        continue;
      }
      ++classes;
      for (std::size_t j = i; j < liftable.size(); ++j) {
        if (below(liftable[i], liftable[j]) && below(liftable[j], liftable[i])) {
          seen[j] = 1;
        }
      }
    }
    return classes;
  }

  struct ExSize {
    std::size_t objects   = 0;
    std::size_t morphisms = 0;
  };

  inline ExSize ex_size(FinPosCategory const& c) {
    auto const ps = pseudocongruences(c);
    ExSize     s{ps.size(), 0};
    for (auto const& p : ps) {
      for (auto const& q : ps) {
        s.morphisms += ex_hom_size(c, p, q);
      }
    }
    return s;
  }

  // ---------------------------------------------------------------------
  // Functors: every pair of maps satisfying the laws.

  inline std::size_t count_functors(FinPosCategory const& s, FinPosCategory const& t) {
    auto const       so = objects(s);
    auto const       sm = morphisms(s);
    std::size_t      count = 0;
    std::vector<int> om(so.size(), 0);
    while (true) {
      // Per source morphism, the candidates of the right type.
      std::vector<std::vector<MorphismId>> options;
      for (auto f : sm) {
        options.push_back(hom(t, poscat::object_id(om[poscat::index(s.dom(f))]),
                              poscat::object_id(om[poscat::index(s.cod(f))])));
      }
      bool feasible = std::all_of(options.begin(), options.end(),
                                  [](auto const& o) { return !o.empty(); });
      std::vector<std::size_t> choice(sm.size(), 0);
      while (feasible) {
        auto img = [&](MorphismId f) { return options[poscat::index(f)][choice[poscat::index(f)]]; };
        bool ok  = true;
        for (auto x : so) {
          ok = ok && img(s.identity(x)) == t.identity(poscat::object_id(om[poscat::index(x)]));
        }
        for (auto f : sm) {
          for (auto g : sm) {
            if (s.cod(f) == s.dom(g)) {
              ok = ok && img(s.compose(g, f)) == t.compose(img(g), img(f));
            }
            if (s.leq(f, g)) {
              ok = ok && t.leq(img(f), img(g));
            }
          }
        }
        count += ok ? 1 : 0;
        std::size_t p = 0;
        while (p < sm.size() && ++choice[p] == options[p].size()) {
          choice[p++] = 0;
        }
        if (p == sm.size()) {
          break;
        }
      }
      std::size_t j = 0;
      while (j < om.size() && ++om[j] == static_cast<int>(t.number_of_objects())) {
        om[j++] = 0;
      }
      if (j == om.size()) {
        break;
      }
    }
    return count;
  }

}  // namespace oracle

#endif  // POSCAT_TESTS_ORACLES_HPP
