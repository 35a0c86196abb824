#include "poscat/functor.hpp"

#include <algorithm>

namespace poscat {

  std::string_view to_string(FunctorLaw law) noexcept {
    switch (law) {
      case FunctorLaw::malformed:
        return "Malformed";
      case FunctorLaw::dom_cod:
        return "DomCod";
      case FunctorLaw::identity:
        return "Identity";
      case FunctorLaw::composition:
        return "Composition";
      case FunctorLaw::monotone:
        return "Monotone";
    }
    return "?";
  }

  NotAFunctor::NotAFunctor(FunctorLaw law, std::string witness)
      : Error("NotAFunctor(" + std::string(to_string(law)) + "): " + witness),
        _law(law),
        _witness(std::move(witness)) {}

  PosFunctor validate_functor(PosFunctor raw) {
    if (!raw.source || !raw.target) {
      throw NotAFunctor(FunctorLaw::malformed, "missing source or target");
    }
    auto const& s = *raw.source;
    auto const& t = *raw.target;
    if (raw.objects.size() != s.number_of_objects()
        || raw.morphisms.size() != s.number_of_morphisms()) {
      throw NotAFunctor(FunctorLaw::malformed, "maps are not total on the source");
    }
    for (auto x : raw.objects) {
      if (index(x) >= t.number_of_objects()) {
        throw NotAFunctor(FunctorLaw::malformed, "object image out of range");
      }
    }
    for (auto f : raw.morphisms) {
      if (index(f) >= t.number_of_morphisms()) {
        throw NotAFunctor(FunctorLaw::malformed, "morphism image out of range");
      }
    }
    auto const n = s.number_of_morphisms();
    for (std::size_t i = 0; i < n; ++i) {
      auto const f  = morphism_id(i);
      auto const ff = raw(f);
      if (t.dom(ff) != raw(s.dom(f)) || t.cod(ff) != raw(s.cod(f))) {
        throw NotAFunctor(FunctorLaw::dom_cod,
                          s.morphism_name(f) + " |-> " + t.morphism_name(ff));
      }
    }
    for (auto x : s.objects()) {
      if (raw(s.identity(x)) != t.identity(raw(x))) {
        throw NotAFunctor(FunctorLaw::identity, s.morphism_name(s.identity(x)));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto const f = morphism_id(i);
      for (auto g : s.outgoing(s.cod(f))) {
        if (raw(s.compose(g, f)) != t.compose(raw(g), raw(f))) {
          throw NotAFunctor(FunctorLaw::composition,
                            s.morphism_name(g) + " o " + s.morphism_name(f));
        }
      }
    }
    for (auto [a, b] : s.strict_order_pairs()) {
      if (!t.leq(raw(a), raw(b))) {
        throw NotAFunctor(FunctorLaw::monotone, s.morphism_name(a) + " <= " + s.morphism_name(b));
      }
    }
    return raw;
  }

  PosFunctor identity_functor(CategoryPtr c) {
    PosFunctor f{c, c, c->objects(), {}};
    for (std::size_t i = 0; i < c->number_of_morphisms(); ++i) {
      f.morphisms.push_back(morphism_id(i));
    }
    return f;
  }

  PosFunctor compose(PosFunctor const& g, PosFunctor const& f) {
    if (f.target != g.source && !(f.target && g.source && *f.target == *g.source)) {
      throw Error("functors are not composable");
    }
    PosFunctor out{f.source, g.target, {}, {}};
    for (auto x : f.objects) {
      out.objects.push_back(g(x));
    }
    for (auto m : f.morphisms) {
      out.morphisms.push_back(g(m));
    }
    return out;
  }

  PosFunctor inclusion_functor(CategoryPtr c, std::span<ObjectId const> objs) {
    auto       sub = std::make_shared<FinPosCategory const>(full_subcategory(*c, objs));
    PosFunctor out{sub, c, {objs.begin(), objs.end()}, {}};
    // Morphisms of the subcategory are those between retained objects, in
    // ascending id order.
    std::vector<bool> kept(c->number_of_objects(), false);
    for (auto x : objs) {
      kept[index(x)] = true;
    }
    for (std::size_t i = 0; i < c->number_of_morphisms(); ++i) {
      auto const f = morphism_id(i);
      if (kept[index(c->dom(f))] && kept[index(c->cod(f))]) {
        out.morphisms.push_back(f);
      }
    }
    return validate_functor(std::move(out));
  }

  Verdict check_fully_order_faithful(PosFunctor const& f) {
    auto const& s = *f.source;
    auto const& t = *f.target;
    for (auto x : s.objects()) {
      for (auto y : s.objects()) {
        auto const src = s.hom(x, y);
        auto const tgt = t.hom(f(x), f(y));
        std::vector<int> hits(tgt.size(), 0);
        for (auto g : src) {
          auto const pos = std::ranges::find(tgt, f(g)) - tgt.begin();
          ++hits[static_cast<std::size_t>(pos)];
        }
        for (std::size_t k = 0; k < tgt.size(); ++k) {
          if (hits[k] == 0) {
            return Verdict::no({{"hom", {s.object_name(x), s.object_name(y)}},
                                {"not full", t.morphism_name(tgt[k])}});
          }
          if (hits[k] > 1) {
            return Verdict::no({{"hom", {s.object_name(x), s.object_name(y)}},
                                {"not faithful", t.morphism_name(tgt[k])}});
          }
        }
        for (auto a : src) {
          for (auto b : src) {
            if (!s.leq(a, b) && t.leq(f(a), f(b))) {
              return Verdict::no({{"hom", {s.object_name(x), s.object_name(y)}},
                                  {"order not reflected",
                                   {s.morphism_name(a), s.morphism_name(b)}}});
            }
          }
        }
      }
    }
    return Verdict::yes();
  }

  Verdict check_essentially_surjective(PosFunctor const& f) {
    auto const& t = *f.target;
    for (auto y : t.objects()) {
      bool const hit = std::ranges::any_of(f.objects, [&](ObjectId fx) {
        return find_isomorphism(t, fx, y).has_value();
      });
      if (!hit) {
        return Verdict::no({{"missed", t.object_name(y)}});
      }
    }
    return Verdict::yes();
  }

  Verdict check_equivalence(PosFunctor const& f) {
    if (auto v = check_fully_order_faithful(f); !v) {
      return Verdict::no({{"fully order-faithful", v.witness}});
    }
    if (auto v = check_essentially_surjective(f); !v) {
      return Verdict::no({{"essentially surjective", v.witness}});
    }
    return Verdict::yes();
  }

  PosFunctor pseudo_inverse(PosFunctor const& f) {
    if (!check_equivalence(f)) {
      throw Error("pseudo_inverse of a functor that is not an equivalence");
    }
    auto const& s = *f.source;
    auto const& t = *f.target;
    PosFunctor  g{f.target, f.source, {}, {}};
    // iso[y]: y -> F(g y)
    std::vector<MorphismId> iso;
    for (auto y : t.objects()) {
      for (auto x : s.objects()) {
        if (auto u = find_isomorphism(t, y, f(x))) {
          g.objects.push_back(x);
          iso.push_back(*u);
          break;
        }
      }
    }
    for (std::size_t i = 0; i < t.number_of_morphisms(); ++i) {
      auto const h   = morphism_id(i);
      auto const a   = t.dom(h);
      auto const b   = t.cod(h);
      auto const img = t.compose(iso[index(b)], t.compose(h, *inverse(t, iso[index(a)])));
      auto const src = s.hom(g.objects[index(a)], g.objects[index(b)]);
      auto const it  = std::ranges::find_if(src, [&](MorphismId k) { return f(k) == img; });
      g.morphisms.push_back(*it);
    }
    return validate_functor(std::move(g));
  }

  std::optional<std::vector<MorphismId>>
  find_natural_isomorphism(PosFunctor const& f, PosFunctor const& g) {
    auto const& s = *f.source;
    auto const& t = *f.target;
    auto const  n = s.number_of_objects();
    std::vector<MorphismId> alpha(n);
    std::vector<bool>       set(n, false);

    auto natural_at = [&](ObjectId x) {
      for (std::size_t i = 0; i < s.number_of_morphisms(); ++i) {
        auto const m = morphism_id(i);
        auto const a = s.dom(m);
        auto const b = s.cod(m);
        if ((a != x && b != x) || !set[index(a)] || !set[index(b)]) {
          continue;
        }
        if (t.compose(alpha[index(b)], f(m)) != t.compose(g(m), alpha[index(a)])) {
          return false;
        }
      }
      return true;
    };
    auto rec = [&](auto& self, std::size_t k) -> bool {
      if (k == n) {
        return true;
      }
      auto const x = object_id(k);
      for (auto u : t.hom(f(x), g(x))) {
        if (!is_isomorphism(t, u)) {
          continue;
        }
        alpha[k] = u;
        set[k]   = true;
        if (natural_at(x) && self(self, k + 1)) {
          return true;
        }
        set[k] = false;
      }
      return false;
    };
    if (!rec(rec, 0)) {
      return std::nullopt;
    }
    return alpha;
  }

  void for_each_functor(CategoryPtr const&                            source,
                        CategoryPtr const&                            target,
                        std::function<void(PosFunctor const&)> const& visit) {
    auto const& s  = *source;
    auto const& t  = *target;
    auto const  no = s.number_of_objects();
    auto const  nm = s.number_of_morphisms();
    PosFunctor  f{source, target, std::vector<ObjectId>(no), std::vector<MorphismId>(nm)};

    auto consistent = [&](std::size_t k) {
      auto const m = morphism_id(k);
      for (std::size_t j = 0; j <= k; ++j) {
        auto const o = morphism_id(j);
        if (s.composable(m, o)) {
          auto const r = s.compose(m, o);
          if (index(r) <= k && f(r) != t.compose(f(m), f(o))) {
            return false;
          }
        }
        if (s.composable(o, m)) {
          auto const r = s.compose(o, m);
          if (index(r) <= k && f(r) != t.compose(f(o), f(m))) {
            return false;
          }
        }
        if (j < k && s.parallel(o, m)) {
          if ((s.leq(o, m) && !t.leq(f(o), f(m))) || (s.leq(m, o) && !t.leq(f(m), f(o)))) {
            return false;
          }
        }
      }
      // Pairs whose composite is m, with both factors already assigned.
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
          auto const ma = morphism_id(a);
          auto const mb = morphism_id(b);
          if (s.composable(ma, mb) && s.compose(ma, mb) == m
              && f(m) != t.compose(f(ma), f(mb))) {
            return false;
          }
        }
      }
      return true;
    };

    auto morphisms = [&](auto& self, std::size_t k) -> void {
      if (k == nm) {
        visit(f);
        return;
      }
      auto const m = morphism_id(k);
      if (s.is_identity(m)) {
        f.morphisms[k] = t.identity(f(s.dom(m)));
        if (consistent(k)) {
          self(self, k + 1);
        }
        return;
      }
      for (auto cand : t.hom(f(s.dom(m)), f(s.cod(m)))) {
        f.morphisms[k] = cand;
        if (consistent(k)) {
          self(self, k + 1);
        }
      }
    };
    auto objects = [&](auto& self, std::size_t k) -> void {
      if (k == no) {
        morphisms(morphisms, 0);
        return;
      }
      for (auto y : t.objects()) {
        f.objects[k] = y;
        self(self, k + 1);
      }
    };
    objects(objects, 0);
  }

  std::vector<PosFunctor> enumerate_functors(CategoryPtr const& source, CategoryPtr const& target) {
    std::vector<PosFunctor> out;
    for_each_functor(source, target, [&](PosFunctor const& f) { out.push_back(f); });
    return out;
  }

  nlohmann::json functor_summary(PosFunctor const& f) {
    nlohmann::json objs = nlohmann::json::object();
    for (auto x : f.source->objects()) {
      objs[f.source->object_name(x)] = f.target->object_name(f(x));
    }
    nlohmann::json mors = nlohmann::json::object();
    for (std::size_t i = 0; i < f.morphisms.size(); ++i) {
      mors[f.source->morphism_name(morphism_id(i))] = f.target->morphism_name(f.morphisms[i]);
    }
    return {{"objMap", objs}, {"morMap", mors}};
  }

}  // namespace poscat
