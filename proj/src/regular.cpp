#include "poscat/regular.hpp"

#include <algorithm>
#include <set>

namespace poscat {

  namespace {

    nlohmann::json names(FinPosCategory const& c, std::initializer_list<MorphismId> fs) {
      auto out = nlohmann::json::array();
      for (auto f : fs) {
        out.push_back(c.morphism_name(f));
      }
      return out;
    }

    Verdict so_against(FinPosCategory const& c, MorphismId e, std::vector<bool> const& ff) {
      auto const a = c.dom(e);
      auto const b = c.cod(e);
      for (std::size_t mi = 0; mi < c.number_of_morphisms(); ++mi) {
        if (!ff[mi]) {
          continue;
        }
        auto const m = morphism_id(mi);
        auto const x = c.dom(m);
        auto const y = c.cod(m);
        auto const mediators = c.hom(b, x);
        for (auto f : c.hom(a, x)) {
          for (auto g : c.hom(b, y)) {
            if (c.compose(g, e) != c.compose(m, f)) {
              continue;
            }
            std::size_t count = 0;
            for (auto h : mediators) {
              count += c.compose(h, e) == f && c.compose(m, h) == g ? 1 : 0;
            }
            if (count != 1) {
              return Verdict::no({{"ff", c.morphism_name(m)},
                                  {"pair", names(c, {f, g})},
                                  {"mediators", count}});
            }
          }
        }
        for (auto h : mediators) {
          for (auto k : mediators) {
            bool const both = c.leq(c.compose(h, e), c.compose(k, e))
                              && c.leq(c.compose(m, h), c.compose(m, k));
            if (both != c.leq(h, k)) {
              return Verdict::no({{"ff", c.morphism_name(m)},
                                  {"order", names(c, {h, k})}});
            }
          }
        }
      }
      return Verdict::yes();
    }

    std::vector<bool> ff_flags(FinPosCategory const& c) {
      std::vector<bool> ff(c.number_of_morphisms());
      for (std::size_t i = 0; i < ff.size(); ++i) {
        ff[i] = check_ff(c, morphism_id(i)).holds;
      }
      return ff;
    }

    // Does (a0, a1) equal (r0∘u, r1∘u) for some u?
    std::optional<MorphismId>
    factor_pair(FinPosCategory const& c, Span const& s, MorphismId a0, MorphismId a1) {
      for (auto u : c.hom(c.dom(a0), s.apex)) {
        if (c.compose(s.r0, u) == a0 && c.compose(s.r1, u) == a1) {
          return u;
        }
      }
      return std::nullopt;
    }

    // Pairs below-and-above a related pair are related.
    Verdict ideal_at(FinPosCategory const&       c,
                     Span const&                 s,
                     std::span<MorphismId const> legs,
                     std::span<MorphismId const> to_x) {
      for (auto u : legs) {
        auto const x0 = c.compose(s.r0, u);
        auto const x1 = c.compose(s.r1, u);
        for (auto lo : to_x) {
          if (!c.leq(lo, x0)) {
            continue;
          }
          for (auto hi : to_x) {
            if (c.leq(x1, hi) && !factor_pair(c, s, lo, hi)) {
              return Verdict::no(
                  {{"element", c.morphism_name(u)}, {"pair", names(c, {lo, hi})}});
            }
          }
        }
      }
      return Verdict::yes();
    }

    void require_span(FinPosCategory const& c, Span const& s) {
      if (c.dom(s.r0) != s.apex || !c.parallel(s.r0, s.r1)) {
        throw Error("span legs must be parallel morphisms out of the apex");
      }
    }

  }  // namespace

  nlohmann::json span_json(FinPosCategory const& c, Span const& s) {
    return {{"apex", c.object_name(s.apex)},
            {"r0", c.morphism_name(s.r0)},
            {"r1", c.morphism_name(s.r1)}};
  }

  Verdict check_ff(FinPosCategory const& c, MorphismId m) {
    auto const x = c.dom(m);
    for (auto z : c.objects()) {
      auto const homs = c.hom(z, x);
      for (auto u : homs) {
        for (auto v : homs) {
          if (!c.leq(u, v) && c.leq(c.compose(m, u), c.compose(m, v))) {
            return Verdict::no({{"u", c.morphism_name(u)}, {"v", c.morphism_name(v)}});
          }
        }
      }
    }
    return Verdict::yes();
  }

  Verdict check_so(FinPosCategory const& c, MorphismId e) {
    return so_against(c, e, ff_flags(c));
  }

  MorphismClasses classify_morphisms(FinPosCategory const& c) {
    MorphismClasses out;
    out.ff = ff_flags(c);
    out.so.resize(c.number_of_morphisms());
    for (std::size_t i = 0; i < out.so.size(); ++i) {
      out.so[i] = so_against(c, morphism_id(i), out.ff).holds;
    }
    return out;
  }

  namespace {

    std::vector<Factorization>
    factorizations(FinPosCategory const& c, MorphismId f, MorphismClasses const& k, bool first) {
      std::vector<Factorization> out;
      for (auto mid : c.objects()) {
        for (auto e : c.hom(c.dom(f), mid)) {
          if (!k.so[index(e)]) {
            continue;
          }
          for (auto m : c.hom(mid, c.cod(f))) {
            if (k.ff[index(m)] && c.compose(m, e) == f) {
              out.push_back({e, m, mid});
              if (first) {
                return out;
              }
            }
          }
        }
      }
      return out;
    }

  }  // namespace

  std::optional<Factorization> so_ff_factorize(FinPosCategory const& c, MorphismId f) {
    auto all = factorizations(c, f, classify_morphisms(c), true);
    if (all.empty()) {
      return std::nullopt;
    }
    return all.front();
  }

  std::vector<Factorization> all_factorizations(FinPosCategory const& c, MorphismId f) {
    return factorizations(c, f, classify_morphisms(c), false);
  }

  Relation relation_flags(FinPosCategory const& c, Span const& s) {
    require_span(c, s);
    Relation   out{s, {}, {}, {}, {}, {}};
    auto const x = c.cod(s.r0);
    auto const r = s.apex;

    for (auto a : c.objects()) {
      auto const legs = c.hom(a, r);
      for (auto u : legs) {
        for (auto v : legs) {
          if (out.jointly_order_monic && !c.leq(u, v)
              && c.leq(c.compose(s.r0, u), c.compose(s.r0, v))
              && c.leq(c.compose(s.r1, u), c.compose(s.r1, v))) {
            out.jointly_order_monic = Verdict::no(names(c, {u, v}));
          }
          if (out.transitive && c.compose(s.r1, u) == c.compose(s.r0, v)
              && !factor_pair(c, s, c.compose(s.r0, u), c.compose(s.r1, v))) {
            out.transitive = Verdict::no(names(c, {u, v}));
          }
        }
      }
      auto const to_x = c.hom(a, x);
      for (auto a0 : to_x) {
        for (auto a1 : to_x) {
          if (out.order_reflexive && c.leq(a0, a1) && !factor_pair(c, s, a0, a1)) {
            out.order_reflexive = Verdict::no(names(c, {a0, a1}));
          }
        }
      }
      if (out.order_ideal) {
        out.order_ideal = ideal_at(c, s, legs, to_x);
      }
    }
    auto const id = c.identity(x);
    if (auto d = factor_pair(c, s, id, id)) {
      out.reflexive = Verdict::yes(c.morphism_name(*d));
    } else {
      out.reflexive = Verdict::no(c.morphism_name(id));
    }
    return out;
  }

  CongruenceVerdict is_congruence(FinPosCategory const& c, Span const& s) {
    auto const rel = relation_flags(c, s);
    if (!rel.jointly_order_monic) {
      throw NotARelation("span " + span_json(c, s).dump() + " is not jointly order-monic: "
                         + rel.jointly_order_monic.witness.dump());
    }
    CongruenceVerdict out;
    auto combine = [](std::initializer_list<std::pair<char const*, Verdict const*>> parts) {
      for (auto const& [name, v] : parts) {
        if (!*v) {
          return Verdict::no({{"fails", name}, {"witness", v->witness}});
        }
      }
      return Verdict::yes();
    };
    out.reflexive_transitive_ideal = combine({{"reflexive", &rel.reflexive},
                                              {"transitive", &rel.transitive},
                                              {"order-ideal", &rel.order_ideal}});
    out.transitive_order_reflexive = combine({{"transitive", &rel.transitive},
                                              {"order-reflexive", &rel.order_reflexive}});
    if (out.reflexive_transitive_ideal.holds != out.transitive_order_reflexive.holds) {
      throw DefinitionMismatch("congruence characterizations disagree on "
                               + span_json(c, s).dump());
    }
    out.holds = out.transitive_order_reflexive.holds;
    return out;
  }

  std::optional<Span> kernel_congruence(FinPosCategory const& c, MorphismId f) {
    auto k = strict_comma(c, f, f);
    if (!k) {
      return std::nullopt;
    }
    return Span{k->cone.apex, k->cone.legs[0], k->cone.legs[1]};
  }

  bool same_subobject(FinPosCategory const& c, Span const& a, Span const& b) {
    return factor_pair(c, b, a.r0, a.r1).has_value()
           && factor_pair(c, a, b.r0, b.r1).has_value();
  }

  Verdict is_effective_congruence(FinPosCategory const& c, Span const& s) {
    require_span(c, s);
    for (auto q : c.outgoing(c.cod(s.r0))) {
      if (auto k = kernel_congruence(c, q); k && same_subobject(c, s, *k)) {
        return Verdict::yes({{"q", c.morphism_name(q)}});
      }
    }
    return Verdict::no({{"span", span_json(c, s)},
                        {"reason", "no morphism out of the carrier has this kernel"}});
  }

  std::vector<Span> all_congruences(FinPosCategory const& c) {
    std::vector<Span> out;
    for (auto x : c.objects()) {
      for (auto r : c.objects()) {
        auto const legs = c.hom(r, x);
        for (auto r0 : legs) {
          for (auto r1 : legs) {
            Span const s{r, r0, r1};
            auto const rel = relation_flags(c, s);
            if (rel.jointly_order_monic && rel.transitive && rel.order_reflexive) {
              out.push_back(s);
            }
          }
        }
      }
    }
    return out;
  }

  Verdict is_effective_epi(FinPosCategory const& c, MorphismId q) {
    auto const y = c.dom(q);
    for (auto z : c.objects()) {
      auto const pairs = c.hom(z, y);
      for (auto f : pairs) {
        for (auto g : pairs) {
          if (is_coinserter(c, f, g, q)) {
            return Verdict::yes({{"pair", names(c, {f, g})}});
          }
        }
      }
    }
    return Verdict::no({{"q", c.morphism_name(q)}, {"reason", "not a coinserter of any pair"}});
  }

  Report check_regular(FinPosCategory const& c) {
    Report r;
    r.command  = "regular";
    auto const objs = c.objects();
    auto const n    = c.number_of_morphisms();

    if (auto t = strict_terminal(c)) {
      r.pass("terminal", cone_json(c, t->cone));
    } else {
      r.fail("terminal", {{"refutations", refutations_json(c, t.refutations)}});
    }

    std::size_t found = 0;
    for (auto x : objs) {
      for (auto y : objs) {
        if (index(y) < index(x)) {
          continue;
        }
        if (auto p = strict_product(c, x, y)) {
          ++found;
        } else {
          r.fail("product " + c.object_name(x) + " x " + c.object_name(y),
                 {{"objects", {c.object_name(x), c.object_name(y)}},
                  {"refutations", refutations_json(c, p.refutations)}});
        }
      }
    }
    r.pass("binary products found", found);

    found = 0;
    for (std::size_t fi = 0; fi < n; ++fi) {
      auto const f = morphism_id(fi);
      for (auto g : c.hom(c.dom(f), c.cod(f))) {
        if (g == f) {
          continue;
        }
        if (auto e = strict_inserter(c, f, g)) {
          ++found;
        } else {
          r.fail("inserter " + c.morphism_name(f) + " <= " + c.morphism_name(g),
                 {{"pair", names(c, {f, g})}, {"refutations", refutations_json(c, e.refutations)}});
        }
      }
    }
    r.pass("inserters found", found);

    std::size_t commas    = 0;
    std::size_t pullbacks = 0;
    for (std::size_t fi = 0; fi < n; ++fi) {
      auto const f = morphism_id(fi);
      for (auto g : c.incoming(c.cod(f))) {
        if (auto k = strict_comma(c, f, g)) {
          ++commas;
        } else {
          r.fail("comma " + c.morphism_name(f) + " / " + c.morphism_name(g),
                 {{"pair", names(c, {f, g})}, {"refutations", refutations_json(c, k.refutations)}});
        }
        if (index(g) < fi) {
          continue;
        }
        if (auto p = strict_pullback(c, f, g)) {
          ++pullbacks;
        } else {
          r.fail("pullback " + c.morphism_name(f) + ", " + c.morphism_name(g),
                 {{"pair", names(c, {f, g})}, {"refutations", refutations_json(c, p.refutations)}});
        }
      }
    }
    r.pass("commas found", commas);
    r.pass("pullbacks found", pullbacks);

    auto const classes = classify_morphisms(c);
    found              = 0;
    for (std::size_t fi = 0; fi < n; ++fi) {
      auto const f = morphism_id(fi);
      if (factorizations(c, f, classes, true).empty()) {
        r.fail("(so, ff) factorization of " + c.morphism_name(f), {{"morphism", c.morphism_name(f)}});
      } else {
        ++found;
      }
    }
    r.pass("morphisms factored", found);

    std::size_t squares = 0;
    for (std::size_t ei = 0; ei < n; ++ei) {
      if (!classes.so[ei]) {
        continue;
      }
      auto const e = morphism_id(ei);
      for (auto g : c.incoming(c.cod(e))) {
        for (auto const& cone : all_strict_limits(c, specs::pullback(c, e, g))) {
          ++squares;
          if (!classes.so[index(cone.legs[1])]) {
            r.fail("so stable under pullback of " + c.morphism_name(e) + " along "
                       + c.morphism_name(g),
                   {{"so", c.morphism_name(e)},
                    {"along", c.morphism_name(g)},
                    {"pullback", cone_json(c, cone)}});
          }
        }
      }
    }
    r.pass("pullback squares of so-morphisms checked", squares);
    return r;
  }

  Report check_exact(FinPosCategory const& c) {
    Report r = check_regular(c);
    r.command = "exact";
    if (!r.verdict()) {
      return r;
    }
    std::size_t count = 0;
    for (auto const& s : all_congruences(c)) {
      ++count;
      if (auto v = is_effective_congruence(c, s); !v) {
        r.fail("congruence " + span_json(c, s).dump() + " effective", v.witness);
      }
    }
    r.pass("congruences checked", count);
    return r;
  }

  Verdict check_projective(FinPosCategory const& c, ObjectId p) {
    auto const classes = classify_morphisms(c);
    for (std::size_t ei = 0; ei < c.number_of_morphisms(); ++ei) {
      if (!classes.so[ei]) {
        continue;
      }
      auto const e = morphism_id(ei);
      for (auto f : c.hom(p, c.cod(e))) {
        auto const lifts = c.hom(p, c.dom(e));
        if (std::ranges::none_of(lifts, [&](MorphismId l) { return c.compose(e, l) == f; })) {
          return Verdict::no({{"so", c.morphism_name(e)}, {"map", c.morphism_name(f)}});
        }
      }
    }
    return Verdict::yes();
  }

  CoverVerdict check_projective_cover(FinPosCategory const& c, std::span<ObjectId const> objs) {
    CoverVerdict out;
    for (auto p : objs) {
      if (index(p) >= c.number_of_objects()) {
        throw UnknownObject("object index " + std::to_string(index(p)) + " out of range");
      }
      if (auto v = check_projective(c, p); !v) {
        out.verdict = Verdict::no({{"not projective", c.object_name(p)}, {"witness", v.witness}});
        return out;
      }
    }
    auto const classes = classify_morphisms(c);
    for (auto y : c.objects()) {
      std::optional<MorphismId> cover;
      for (auto p : objs) {
        for (auto e : c.hom(p, y)) {
          if (classes.so[index(e)]) {
            cover = e;
            break;
          }
        }
        if (cover) {
          break;
        }
      }
      if (!cover) {
        out.verdict = Verdict::no({{"uncovered", c.object_name(y)}});
        out.cover_map.clear();
        return out;
      }
      out.cover_map.push_back(*cover);
    }
    return out;
  }

  Report check_weak_limits_in_cover(FinPosCategory const&     c,
                                    std::span<ObjectId const> objs,
                                    LimitFamily               family) {
    if (auto v = check_projective_cover(c, objs); !v) {
      throw NotACover("not a projective cover: " + v.verdict.witness.dump());
    }
    auto const p = full_subcategory(c, objs);
    Report     r;
    r.command = "weak limits in cover";
    auto const sub = p.objects();
    switch (family) {
      case LimitFamily::terminal:
        if (auto t = weak_terminal(p); !t) {
          r.fail("weak terminal", refutations_json(p, t.refutations));
        } else {
          r.pass("weak terminal", cone_json(p, t->cone));
        }
        break;
      case LimitFamily::product:
        for (auto x : sub) {
          for (auto y : sub) {
            if (auto w = weak_product(p, x, y); !w) {
              r.fail("weak product " + p.object_name(x) + " x " + p.object_name(y),
                     refutations_json(p, w.refutations));
            }
          }
        }
        r.pass("weak products");
        break;
      case LimitFamily::inserter:
        for (std::size_t fi = 0; fi < p.number_of_morphisms(); ++fi) {
          auto const f = morphism_id(fi);
          for (auto g : p.hom(p.dom(f), p.cod(f))) {
            if (auto w = weak_inserter(p, f, g); !w) {
              r.fail("weak inserter " + p.morphism_name(f) + " <= " + p.morphism_name(g),
                     refutations_json(p, w.refutations));
            }
          }
        }
        r.pass("weak inserters");
        break;
      case LimitFamily::identity_comma:
        for (auto x : sub) {
          auto const id = p.identity(x);
          if (auto w = weak_comma(p, id, id); !w) {
            r.fail("weak comma " + p.morphism_name(id), refutations_json(p, w.refutations));
          }
        }
        r.pass("weak identity commas");
        break;
    }
    return r;
  }

}  // namespace poscat
