#include "poscat/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace poscat {

  namespace {

    // Dense tables in standard layout: identities are ids 0..n-1 (object i has
    // identity i), then non-identities grouped by (dom, cod).
    struct Dense {
      int                       n = 0;
      int                       m = 0;
      std::vector<int>          dom, cod;
      std::vector<int>          comp;  // m*m, -1 when not composable
      std::vector<std::uint8_t> leq;   // m*m, reflexive

      int  at(int g, int f) const {
        return comp[static_cast<std::size_t>(g * m + f)];
      }
      bool parallel(int a, int b) const {
        return dom[static_cast<std::size_t>(a)] == dom[static_cast<std::size_t>(b)]
               && cod[static_cast<std::size_t>(a)] == cod[static_cast<std::size_t>(b)];
      }
    };

    // A relabeling old id -> new id, with its inverse.
    struct Relabel {
      std::vector<int> to;
      std::vector<int> from;
    };

    // Lexicographic comparison of the composition tables of sigma(d) and d,
    // cell by cell, stopping at the first difference.
    int compare_table(Dense const& d, Relabel const& s) {
      for (int i = 0; i < d.m; ++i) {
        for (int j = 0; j < d.m; ++j) {
          int const c  = d.at(s.from[static_cast<std::size_t>(i)],
                              s.from[static_cast<std::size_t>(j)]);
          int const lhs = c < 0 ? -1 : s.to[static_cast<std::size_t>(c)];
          int const rhs = d.at(i, j);
          if (lhs != rhs) {
            return lhs < rhs ? -1 : 1;
          }
        }
      }
      return 0;
    }

    int compare_order(Dense const& d, Relabel const& s) {
      for (int i = 0; i < d.m; ++i) {
        for (int j = 0; j < d.m; ++j) {
          if (i == j || !d.parallel(i, j)) {
            continue;
          }
          auto const lhs = d.leq[static_cast<std::size_t>(
              s.from[static_cast<std::size_t>(i)] * d.m
              + s.from[static_cast<std::size_t>(j)])];
          auto const rhs = d.leq[static_cast<std::size_t>(i * d.m + j)];
          if (lhs != rhs) {
            return lhs < rhs ? -1 : 1;
          }
        }
      }
      return 0;
    }

    using Matrix = std::vector<int>;  // n*n hom sizes of non-identities

    std::vector<std::pair<int, int>> layout_sequence(Matrix const&           h,
                                                     int                     n,
                                                     std::vector<int> const& pi) {
      std::vector<std::pair<int, int>> seq;
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          for (int k = 0; k < h[static_cast<std::size_t>(x * n + y)]; ++k) {
            seq.emplace_back(pi[static_cast<std::size_t>(x)],
                             pi[static_cast<std::size_t>(y)]);
          }
        }
      }
      std::sort(seq.begin(), seq.end());
      return seq;
    }

    // Every relabeling of a category given by (dom, cod) arrays with
    // identities `ids` into standard layout, restricted to object
    // permutations whose layout sequence is minimal.
    std::vector<Relabel> layout_relabelings(int                     n,
                                            std::vector<int> const& dom,
                                            std::vector<int> const& cod,
                                            std::vector<int> const& ids) {
      int const m = static_cast<int>(dom.size());
      Matrix    h(static_cast<std::size_t>(n * n), 0);
      std::vector<bool> is_id(static_cast<std::size_t>(m), false);
      for (int x = 0; x < n; ++x) {
        is_id[static_cast<std::size_t>(ids[static_cast<std::size_t>(x)])] = true;
      }
      for (int f = 0; f < m; ++f) {
        if (!is_id[static_cast<std::size_t>(f)]) {
          ++h[static_cast<std::size_t>(dom[static_cast<std::size_t>(f)] * n
                                       + cod[static_cast<std::size_t>(f)])];
        }
      }
      std::vector<int> pi(static_cast<std::size_t>(n));
      std::iota(pi.begin(), pi.end(), 0);
      std::vector<std::vector<int>>    best_pis;
      std::vector<std::pair<int, int>> best;
      do {
        auto seq = layout_sequence(h, n, pi);
        if (best_pis.empty() || seq < best) {
          best = std::move(seq);
          best_pis.assign(1, pi);
        } else if (seq == best) {
          best_pis.push_back(pi);
        }
      } while (std::next_permutation(pi.begin(), pi.end()));

      std::vector<Relabel> out;
      for (auto const& p : best_pis) {
        // Old groups in id order, new group start offsets from the layout.
        std::vector<std::vector<int>> groups(static_cast<std::size_t>(n * n));
        for (int f = 0; f < m; ++f) {
          if (!is_id[static_cast<std::size_t>(f)]) {
            auto const nx = p[static_cast<std::size_t>(dom[static_cast<std::size_t>(f)])];
            auto const ny = p[static_cast<std::size_t>(cod[static_cast<std::size_t>(f)])];
            groups[static_cast<std::size_t>(nx * n + ny)].push_back(f);
          }
        }
        std::vector<int> start(static_cast<std::size_t>(n * n), 0);
        int              next = n;
        for (std::size_t g = 0; g < groups.size(); ++g) {
          start[g] = next;
          next += static_cast<int>(groups[g].size());
        }
        std::vector<std::vector<int>> perm(groups.size());
        for (std::size_t g = 0; g < groups.size(); ++g) {
          perm[g].resize(groups[g].size());
          std::iota(perm[g].begin(), perm[g].end(), 0);
        }
        while (true) {
          Relabel r;
          r.to.assign(static_cast<std::size_t>(m), -1);
          for (int x = 0; x < n; ++x) {
            r.to[static_cast<std::size_t>(ids[static_cast<std::size_t>(x)])] =
                p[static_cast<std::size_t>(x)];
          }
          for (std::size_t g = 0; g < groups.size(); ++g) {
            for (std::size_t k = 0; k < groups[g].size(); ++k) {
              r.to[static_cast<std::size_t>(groups[g][k])] =
                  start[g] + perm[g][k];
            }
          }
          r.from.assign(static_cast<std::size_t>(m), -1);
          for (int f = 0; f < m; ++f) {
            r.from[static_cast<std::size_t>(r.to[static_cast<std::size_t>(f)])] = f;
          }
          out.push_back(std::move(r));
          // Odometer over the per-group permutations.
          std::size_t g = 0;
          for (; g < perm.size(); ++g) {
            if (std::next_permutation(perm[g].begin(), perm[g].end())) {
              break;
            }
          }
          if (g == perm.size()) {
            break;
          }
        }
      }
      return out;
    }

    Dense relabel(Dense const& d, Relabel const& s) {
      Dense r;
      r.n = d.n;
      r.m = d.m;
      r.dom.assign(static_cast<std::size_t>(d.m), 0);
      r.cod.assign(static_cast<std::size_t>(d.m), 0);
      r.comp.assign(static_cast<std::size_t>(d.m * d.m), -1);
      r.leq.assign(static_cast<std::size_t>(d.m * d.m), 0);
      // Object permutation from identities.
      std::vector<int> pi(static_cast<std::size_t>(d.n));
      for (int x = 0; x < d.n; ++x) {
        pi[static_cast<std::size_t>(x)] = s.to[static_cast<std::size_t>(x)];
      }
      for (int f = 0; f < d.m; ++f) {
        auto const nf = static_cast<std::size_t>(s.to[static_cast<std::size_t>(f)]);
        r.dom[nf] = pi[static_cast<std::size_t>(d.dom[static_cast<std::size_t>(f)])];
        r.cod[nf] = pi[static_cast<std::size_t>(d.cod[static_cast<std::size_t>(f)])];
      }
      for (int g = 0; g < d.m; ++g) {
        for (int f = 0; f < d.m; ++f) {
          auto const ng = s.to[static_cast<std::size_t>(g)];
          auto const nf = s.to[static_cast<std::size_t>(f)];
          auto const c  = d.at(g, f);
          r.comp[static_cast<std::size_t>(ng * d.m + nf)] =
              c < 0 ? -1 : s.to[static_cast<std::size_t>(c)];
          r.leq[static_cast<std::size_t>(ng * d.m + nf)] =
              d.leq[static_cast<std::size_t>(g * d.m + f)];
        }
      }
      return r;
    }

    std::vector<int> encode(Dense const& d) {
      std::vector<int> code{d.n, d.m};
      for (int f = d.n; f < d.m; ++f) {
        code.push_back(d.dom[static_cast<std::size_t>(f)]);
        code.push_back(d.cod[static_cast<std::size_t>(f)]);
      }
      code.insert(code.end(), d.comp.begin(), d.comp.end());
      for (int i = 0; i < d.m; ++i) {
        for (int j = 0; j < d.m; ++j) {
          if (i != j && d.parallel(i, j)) {
            code.push_back(d.leq[static_cast<std::size_t>(i * d.m + j)]);
          }
        }
      }
      return code;
    }

    Dense dense_of(FinPosCategory const& c, std::vector<int>& ids) {
      Dense d;
      d.n = static_cast<int>(c.number_of_objects());
      d.m = static_cast<int>(c.number_of_morphisms());
      for (std::size_t f = 0; f < c.number_of_morphisms(); ++f) {
        d.dom.push_back(static_cast<int>(index(c.dom(morphism_id(f)))));
        d.cod.push_back(static_cast<int>(index(c.cod(morphism_id(f)))));
      }
      d.comp.assign(static_cast<std::size_t>(d.m * d.m), -1);
      d.leq.assign(static_cast<std::size_t>(d.m * d.m), 0);
      for (int g = 0; g < d.m; ++g) {
        for (int f = 0; f < d.m; ++f) {
          auto const gi = morphism_id(static_cast<std::size_t>(g));
          auto const fi = morphism_id(static_cast<std::size_t>(f));
          if (c.composable(gi, fi)) {
            d.comp[static_cast<std::size_t>(g * d.m + f)] =
                static_cast<int>(index(c.compose(gi, fi)));
          }
          d.leq[static_cast<std::size_t>(g * d.m + f)] = c.leq(gi, fi) ? 1 : 0;
        }
      }
      ids.clear();
      for (std::size_t x = 0; x < c.number_of_objects(); ++x) {
        ids.push_back(static_cast<int>(index(c.identity(object_id(x)))));
      }
      return d;
    }

    std::string object_label(int x) {
      return std::string(1, static_cast<char>('A' + x));
    }

    FinPosCategory materialize(Dense const& d) {
      CategoryTables t;
      for (int x = 0; x < d.n; ++x) {
        t.object_names.push_back(object_label(x));
      }
      for (int f = 0; f < d.m; ++f) {
        t.morphism_names.push_back(
            f < d.n ? "id_" + object_label(f) : "f" + std::to_string(f - d.n));
        t.dom.push_back(object_id(static_cast<std::size_t>(d.dom[static_cast<std::size_t>(f)])));
        t.cod.push_back(object_id(static_cast<std::size_t>(d.cod[static_cast<std::size_t>(f)])));
      }
      for (int x = 0; x < d.n; ++x) {
        t.identity.push_back(morphism_id(static_cast<std::size_t>(x)));
      }
      for (int g = 0; g < d.m; ++g) {
        for (int f = 0; f < d.m; ++f) {
          auto const c = d.at(g, f);
          if (c >= 0) {
            t.compose.push_back({morphism_id(static_cast<std::size_t>(g)),
                                 morphism_id(static_cast<std::size_t>(f)),
                                 morphism_id(static_cast<std::size_t>(c))});
          }
          if (g != f && d.parallel(g, f) && d.leq[static_cast<std::size_t>(g * d.m + f)]) {
            t.order.emplace_back(morphism_id(static_cast<std::size_t>(g)),
                                 morphism_id(static_cast<std::size_t>(f)));
          }
        }
      }
      return validate_category(t);
    }

    // Composition tables for a fixed layout, by backtracking with
    // associativity checked on every assignment.
    class TableSearch {
     public:
      TableSearch(Dense proto, std::function<void(Dense const&)> visit)
          : _d(std::move(proto)), _visit(std::move(visit)) {
        int const m = _d.m;
        for (int g = 0; g < m; ++g) {
          for (int f = 0; f < m; ++f) {
            if (_d.cod[static_cast<std::size_t>(f)] != _d.dom[static_cast<std::size_t>(g)]) {
              set(g, f, -1);
            } else if (g < _d.n) {
              set(g, f, f);
            } else if (f < _d.n) {
              set(g, f, g);
            } else {
              set(g, f, kUnknown);
              _cells.emplace_back(g, f);
            }
          }
        }
      }

      void run() {
        step(0);
      }

     private:
      static constexpr int kUnknown = -2;

      void set(int g, int f, int v) {
        _d.comp[static_cast<std::size_t>(g * _d.m + f)] = v;
      }

      bool triple_ok(int h, int g, int f) const {
        int const gf = _d.at(g, f);
        int const hg = _d.at(h, g);
        if (gf < 0 || hg < 0) {
          return true;
        }
        int const l = _d.at(h, gf);
        int const r = _d.at(hg, f);
        return l < 0 || r < 0 || l == r;
      }

      // Triples in which cell (g, f) occurs.
      bool associative_around(int g, int f) const {
        int const m = _d.m;
        for (int x = 0; x < m; ++x) {
          if (!triple_ok(x, g, f) || !triple_ok(g, f, x)) {
            return false;
          }
        }
        for (int x = 0; x < m; ++x) {
          for (int y = 0; y < m; ++y) {
            if (_d.at(x, y) == f && !triple_ok(g, x, y)) {
              return false;
            }
            if (_d.at(x, y) == g && !triple_ok(x, y, f)) {
              return false;
            }
          }
        }
        return true;
      }

      void step(std::size_t i) {
        if (i == _cells.size()) {
          _visit(_d);
          return;
        }
        auto const [g, f] = _cells[i];
        int const x = _d.dom[static_cast<std::size_t>(f)];
        int const y = _d.cod[static_cast<std::size_t>(g)];
        for (int c = 0; c < _d.m; ++c) {
          if (_d.dom[static_cast<std::size_t>(c)] != x
              || _d.cod[static_cast<std::size_t>(c)] != y) {
            continue;
          }
          if (c < _d.n && c != x) {
            continue;
          }
          set(g, f, c);
          if (associative_around(g, f)) {
            step(i + 1);
          }
        }
        set(g, f, kUnknown);
      }

      Dense                               _d;
      std::function<void(Dense const&)>   _visit;
      std::vector<std::pair<int, int>>    _cells;
    };

    // Compatible partial orders on a fixed table: decide each ordered pair of
    // distinct parallel morphisms in turn, closing under transitivity and
    // whiskering after every inclusion.
    class OrderSearch {
     public:
      OrderSearch(Dense const& d, std::function<void(Dense const&)> visit)
          : _d(d), _visit(std::move(visit)) {
        int const m = _d.m;
        _d.leq.assign(static_cast<std::size_t>(m * m), 0);
        for (int i = 0; i < m; ++i) {
          _d.leq[static_cast<std::size_t>(i * m + i)] = 1;
        }
        _excluded.assign(static_cast<std::size_t>(m * m), 0);
        for (int a = 0; a < m; ++a) {
          for (int b = 0; b < m; ++b) {
            if (a != b && _d.parallel(a, b)) {
              _pairs.emplace_back(a, b);
            }
          }
        }
      }

      void run() {
        step(0);
      }

     private:
      bool close(int a, int b, std::vector<std::uint8_t>& rel) const {
        int const                        m = _d.m;
        std::vector<std::pair<int, int>> work{{a, b}};
        auto add = [&](int x, int y) {
          if (x == y || rel[static_cast<std::size_t>(x * m + y)]) {
            return true;
          }
          if (rel[static_cast<std::size_t>(y * m + x)]
              || _excluded[static_cast<std::size_t>(x * m + y)]) {
            return false;
          }
          rel[static_cast<std::size_t>(x * m + y)] = 1;
          work.emplace_back(x, y);
          return true;
        };
        if (rel[static_cast<std::size_t>(b * m + a)]
            || _excluded[static_cast<std::size_t>(a * m + b)]) {
          return false;
        }
        rel[static_cast<std::size_t>(a * m + b)] = 1;
        while (!work.empty()) {
          auto const [x, y] = work.back();
          work.pop_back();
          for (int w = 0; w < m; ++w) {
            int const wx = _d.at(w, x);
            if (wx >= 0 && !add(wx, _d.at(w, y))) {
              return false;
            }
            int const xw = _d.at(x, w);
            if (xw >= 0 && !add(xw, _d.at(y, w))) {
              return false;
            }
            if (w != x && w != y && _d.parallel(w, x)) {
              if (rel[static_cast<std::size_t>(y * m + w)] && !add(x, w)) {
                return false;
              }
              if (rel[static_cast<std::size_t>(w * m + x)] && !add(w, y)) {
                return false;
              }
            }
          }
        }
        return true;
      }

      void step(std::size_t i) {
        if (i == _pairs.size()) {
          _visit(_d);
          return;
        }
        auto const [a, b] = _pairs[i];
        int const  m      = _d.m;
        if (_d.leq[static_cast<std::size_t>(a * m + b)]) {
          step(i + 1);
          return;
        }
        auto rel = _d.leq;
        if (close(a, b, rel)) {
          std::swap(rel, _d.leq);
          step(i + 1);
          std::swap(rel, _d.leq);
        }
        _excluded[static_cast<std::size_t>(a * m + b)] = 1;
        step(i + 1);
        _excluded[static_cast<std::size_t>(a * m + b)] = 0;
      }

      Dense                             _d;
      std::function<void(Dense const&)> _visit;
      std::vector<std::pair<int, int>>  _pairs;
      std::vector<std::uint8_t>         _excluded;
    };

    void hom_matrices(int n, int k, std::size_t cell, Matrix& h,
                      std::vector<Matrix>& out) {
      if (cell + 1 == h.size()) {
        h[cell] = k;
        out.push_back(h);
        return;
      }
      for (int c = k; c >= 0; --c) {
        h[cell] = c;
        hom_matrices(n, k - c, cell + 1, h, out);
      }
      h[cell] = 0;
    }

    bool minimal_layout(Matrix const& h, int n) {
      std::vector<int> pi(static_cast<std::size_t>(n));
      std::iota(pi.begin(), pi.end(), 0);
      auto const base = layout_sequence(h, n, pi);
      while (std::next_permutation(pi.begin(), pi.end())) {
        if (layout_sequence(h, n, pi) < base) {
          return false;
        }
      }
      return true;
    }

    Dense prototype(Matrix const& h, int n) {
      Dense d;
      d.n = n;
      for (int x = 0; x < n; ++x) {
        d.dom.push_back(x);
        d.cod.push_back(x);
      }
      // Non-identities in layout order: sorted (dom, cod).
      std::vector<int> pi(static_cast<std::size_t>(n));
      std::iota(pi.begin(), pi.end(), 0);
      for (auto const& [x, y] : layout_sequence(h, n, pi)) {
        d.dom.push_back(x);
        d.cod.push_back(y);
      }
      d.m = static_cast<int>(d.dom.size());
      d.comp.assign(static_cast<std::size_t>(d.m * d.m), -1);
      d.leq.assign(static_cast<std::size_t>(d.m * d.m), 0);
      return d;
    }

  }  // namespace

  void for_each_category(std::size_t                                  max_objects,
                         std::size_t                                  max_morphisms,
                         std::function<void(FinPosCategory&&)> const& visit,
                         EnumerationLimits const&                     limits) {
    if (max_objects > limits.max_objects || max_morphisms > limits.max_morphisms) {
      throw BoundsTooLarge("enumeration bounds (" + std::to_string(max_objects) + ", "
                           + std::to_string(max_morphisms) + ") exceed the cap ("
                           + std::to_string(limits.max_objects) + ", "
                           + std::to_string(limits.max_morphisms) + ")");
    }
    for (int n = 1; n <= static_cast<int>(max_objects); ++n) {
      for (int m = n; m <= static_cast<int>(max_morphisms); ++m) {
        std::vector<Matrix> matrices;
        Matrix              h(static_cast<std::size_t>(n * n), 0);
        hom_matrices(n, m - n, 0, h, matrices);
        for (auto const& mat : matrices) {
          if (!minimal_layout(mat, n)) {
            continue;
          }
          Dense const proto = prototype(mat, n);
          std::vector<int> ids(static_cast<std::size_t>(n));
          std::iota(ids.begin(), ids.end(), 0);
          auto const group = layout_relabelings(n, proto.dom, proto.cod, ids);
          TableSearch(proto, [&](Dense const& table) {
            std::vector<Relabel const*> automorphisms;
            for (auto const& s : group) {
              int const cmp = compare_table(table, s);
              if (cmp < 0) {
                return;
              }
              if (cmp == 0) {
                automorphisms.push_back(&s);
              }
            }
            OrderSearch(table, [&](Dense const& ordered) {
              for (auto const* s : automorphisms) {
                if (compare_order(ordered, *s) < 0) {
                  return;
                }
              }
              visit(materialize(ordered));
            }).run();
          }).run();
        }
      }
    }
  }

  std::vector<FinPosCategory> enumerate_categories(std::size_t max_objects,
                                                   std::size_t max_morphisms,
                                                   EnumerationLimits const& limits) {
    std::vector<FinPosCategory> out;
    for_each_category(
        max_objects,
        max_morphisms,
        [&](FinPosCategory&& c) { out.push_back(std::move(c)); },
        limits);
    return out;
  }

  std::vector<int> canonical_code(FinPosCategory const& c) {
    std::vector<int> ids;
    Dense const      d = dense_of(c, ids);
    std::vector<int> best;
    for (auto const& s : layout_relabelings(d.n, d.dom, d.cod, ids)) {
      auto code = encode(relabel(d, s));
      if (best.empty() || code < best) {
        best = std::move(code);
      }
    }
    if (best.empty()) {
      best = {0, 0};
    }
    return best;
  }

}  // namespace poscat
