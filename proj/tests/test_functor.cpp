#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "poscat/builder.hpp"
#include "poscat/completion.hpp"
#include "poscat/enumerate.hpp"
#include "poscat/extension.hpp"
#include "poscat/json_io.hpp"
#include "shapes.hpp"

using namespace poscat;

namespace {

  MorphismId mor(FinPosCategory const& c, char const* name) {
    auto m = c.find_morphism(name);
    REQUIRE(m);
    return *m;
  }

  ObjectId obj(FinPosCategory const& c, char const* name) {
    auto x = c.find_object(name);
    REQUIRE(x);
    return *x;
  }

  CategoryPtr share(FinPosCategory c) {
    return std::make_shared<FinPosCategory const>(std::move(c));
  }

  // a, b |-> *, f |-> id.
  PosFunctor collapse() {
    auto const a   = share(fixtures::arrow());
    auto const one = share(fixtures::one());
    auto const id  = one->identity(object_id(0));
    return validate_functor({a, one, {object_id(0), object_id(0)}, {id, id, id}});
  }

  std::vector<CategoryPtr> const& weakly_lex_sample() {
    static std::vector<CategoryPtr> out;
    if (out.empty()) {
      for_each_category(2, 5, [&](FinPosCategory&& c) {
        if (check_weakly_lex(c).verdict()) {
          out.push_back(share(std::move(c)));
        }
      });
      out.push_back(share(shapes::chain3()));
    }
    return out;
  }

  std::vector<CategoryPtr> const& exact_sample() {
    static std::vector<CategoryPtr> out;
    if (out.empty()) {
      for (auto const& c : weakly_lex_sample()) {
        if (check_exact(*c).verdict()) {
          out.push_back(c);
        }
      }
    }
    return out;
  }

  // The unique h with legs∘h = target, if any.
  std::optional<MorphismId> mediator(FinPosCategory const&   t,
                                     ObjectId                from,
                                     ObjectId                apex,
                                     std::vector<MorphismId> legs,
                                     std::vector<MorphismId> image) {
    std::optional<MorphismId> found;
    for (auto h : t.hom(from, apex)) {
      bool ok = true;
      for (std::size_t i = 0; i < legs.size(); ++i) {
        ok = ok && t.compose(legs[i], h) == image[i];
      }
      if (ok) {
        found = h;
      }
    }
    return found;
  }

  // Left covering straight from the definition: comparisons from the images
  // of all weak terminals, weak products and weak inserters to the strict
  // limits of the target are so.
  bool left_covering_oracle(PosFunctor const& f) {
    auto const& s = *f.source;
    auto const& t = *f.target;
    // Strict terminal of the target.
    std::optional<ObjectId> top;
    for (auto z : oracle::objects(t)) {
      bool ok = true;
      for (auto a : oracle::objects(t)) {
        ok = ok && t.hom(a, z).size() == 1;
      }
      if (ok && !top) {
        top = z;
      }
    }
    if (!top) {
      return false;
    }
    for (auto w : oracle::objects(s)) {
      bool weak = true;
      for (auto a : oracle::objects(s)) {
        weak = weak && !s.hom(a, w).empty();
      }
      if (weak && !oracle::so(t, t.hom(f(w), *top)[0])) {
        return false;
      }
    }
    for (auto x : oracle::objects(s)) {
      for (auto y : oracle::objects(s)) {
        auto const strict = oracle::strict_products(t, f(x), f(y));
        if (strict.empty()) {
          return false;
        }
        auto const p = *strict.begin();
        for (auto const& w : oracle::weak_products(s, x, y)) {
          auto const h = mediator(t, f(w.apex), p.apex, {p.p0, p.p1}, {f(w.p0), f(w.p1)});
          if (!h || !oracle::so(t, *h)) {
            return false;
          }
        }
      }
    }
    for (auto g0 : oracle::morphisms(s)) {
      for (auto g1 : oracle::morphisms(s)) {
        if (!s.parallel(g0, g1)) {
          continue;
        }
        // Strict inserter of (F g0, F g1): a weak one that is order-monic
        // with unique factorizations.
        std::optional<std::pair<ObjectId, MorphismId>> strict;
        for (auto const& [apex, e] : oracle::weak_inserters(t, f(g0), f(g1))) {
          bool ok = oracle::ff(t, e);
          for (auto a : oracle::objects(t)) {
            auto const hs = t.hom(a, apex);
            for (auto u : hs) {
              for (auto v : hs) {
                ok = ok && (u == v || t.compose(e, u) != t.compose(e, v));
              }
            }
          }
          if (ok && !strict) {
            strict = std::pair{apex, e};
          }
        }
        if (!strict) {
          return false;
        }
        for (auto const& [apex, e] : oracle::weak_inserters(s, g0, g1)) {
          auto const h = mediator(t, f(apex), strict->first, {strict->second}, {f(e)});
          if (!h || !oracle::so(t, *h)) {
            return false;
          }
        }
      }
    }
    return true;
  }

}  // namespace

TEST_CASE("functor validation") {
  auto const a = share(fixtures::arrow());
  CHECK_NOTHROW(identity_functor(a));
  CHECK_NOTHROW(collapse());
  // f |-> id_a breaks dom/cod.
  PosFunctor bad{a, a, {object_id(0), object_id(1)}, {mor(*a, "id_a"), mor(*a, "id_a"), mor(*a, "id_b")}};
  try {
    validate_functor(bad);
    FAIL("expected NotAFunctor");
  } catch (NotAFunctor const& e) {
    CHECK(e.law() == FunctorLaw::dom_cod);
    CHECK(e.witness().find("f") != std::string::npos);
  }
  PosFunctor short_map{a, a, {object_id(0)}, {}};
  CHECK_THROWS_AS(validate_functor(short_map), NotAFunctor);

  // Collapsing e to id is a functor on IDEM.  Renaming into the copy with
  // e <= id is not, since id <= e is not preserved.
  auto const c = share(fixtures::idem());
  PosFunctor to_id{c, c, {object_id(0)}, {mor(*c, "id"), mor(*c, "id")}};
  CHECK_NOTHROW(validate_functor(to_id));
  auto const r = share(CategoryBuilder()
                           .object("x")
                           .identity("x", "id")
                           .morphism("id", "x", "x")
                           .morphism("e", "x", "x")
                           .compose("e", "e", "e")
                           .order("e", "id")
                           .build());
  PosFunctor flip{c, r, {object_id(0)}, {mor(*r, "id"), mor(*r, "e")}};
  try {
    validate_functor(flip);
    FAIL("expected NotAFunctor");
  } catch (NotAFunctor const& e) {
    CHECK(e.law() == FunctorLaw::monotone);
  }
}

TEST_CASE("fully order-faithful") {
  auto const one = share(fixtures::one());
  CHECK(check_fully_order_faithful(identity_functor(one)));
  auto const v = check_fully_order_faithful(collapse());
  REQUIRE_FALSE(v);
  CHECK(v.witness["hom"] == nlohmann::json{"b", "a"});
  CHECK(v.witness.contains("not full"));
  CHECK_FALSE(check_equivalence(collapse()));

  // Two isomorphic objects collapse onto ONE by an equivalence.
  auto const iso = share(shapes::iso2());
  auto const id  = one->identity(object_id(0));
  auto const e   = validate_functor({iso, one, {object_id(0), object_id(0)}, {id, id, id, id}});
  CHECK(check_equivalence(e));
  auto const back = pseudo_inverse(e);
  CHECK(find_natural_isomorphism(compose(e, back), identity_functor(one)));
  CHECK(find_natural_isomorphism(compose(back, e), identity_functor(iso)));
  CHECK_THROWS_AS(pseudo_inverse(collapse()), Error);
}

TEST_CASE("functor enumeration matches the oracle") {
  auto const list = enumerate_categories(2, 3);
  std::vector<CategoryPtr> cats;
  for (auto const& c : list) {
    cats.push_back(share(c));
  }
  cats.push_back(share(fixtures::idem()));
  cats.push_back(share(shapes::chain3()));
  for (auto const& s : cats) {
    for (auto const& t : cats) {
      auto const all = enumerate_functors(s, t);
      CHECK(all.size() == oracle::count_functors(*s, *t));
      for (auto const& f : all) {
        CHECK_NOTHROW(validate_functor(f));
      }
    }
  }
  auto const a = share(fixtures::arrow());
  CHECK(enumerate_functors(a, a).size() == 3);
}

TEST_CASE("inclusions and composition") {
  auto const sq = share(shapes::lattice2x2());
  std::vector<ObjectId> objs{obj(*sq, "00"), obj(*sq, "11")};
  auto const inc = inclusion_functor(sq, objs);
  CHECK(inc.source->number_of_objects() == 2);
  CHECK(check_fully_order_faithful(inc));
  CHECK_FALSE(check_essentially_surjective(inc));
  auto const twice = compose(identity_functor(sq), inc);
  CHECK(twice.objects == inc.objects);
  CHECK_THROWS_AS(compose(inc, inc), Error);
}

TEST_CASE("left covering agrees with the definition") {
  std::size_t checked = 0, covering = 0;
  std::vector<CategoryPtr> targets;
  for (auto const& c : weakly_lex_sample()) {
    if (check_regular(*c).verdict()) {
      targets.push_back(c);
    }
  }
  for (auto const& s : weakly_lex_sample()) {
    for (auto const& t : targets) {
      for_each_functor(s, t, [&](PosFunctor const& f) {
        bool const lc = check_left_covering(f).verdict();
        CHECK(lc == left_covering_oracle(f));
        ++checked;
        covering += lc ? 1 : 0;
      });
    }
  }
  CHECK(checked > covering);
  CHECK(covering > 0);

  // Both objects to b, f to id_b.
  auto const a = share(fixtures::arrow());
  PosFunctor to_b{a, a, {object_id(1), object_id(1)}, {mor(*a, "id_b"), mor(*a, "id_b"), mor(*a, "id_b")}};
  CHECK(check_left_covering(validate_functor(to_b)).verdict() == left_covering_oracle(to_b));

  auto const e = build_exact_completion(a);
  CHECK(check_left_covering(gamma(e).functor).verdict());
  for (auto const& c : targets) {
    CHECK(check_left_covering(identity_functor(c)).verdict());
  }

  auto const idem = share(fixtures::idem());
  PosFunctor into_idem{share(fixtures::one()), idem, {object_id(0)}, {mor(*idem, "id")}};
  CHECK_THROWS_AS(check_left_covering(into_idem), PreconditionFailed);
}

TEST_CASE("images of pseudocongruences are congruences") {
  auto const a   = share(fixtures::arrow());
  auto const e   = build_exact_completion(a);
  auto const g   = gamma(e);
  for (auto x : a->objects()) {
    auto const p  = make_pseudocongruence(*a, g.comma[index(x)]);
    REQUIRE(p);
    auto const ic = image_congruence_check(g.functor, *p);
    CHECK(ic.verdict);
    // The comma of the identity at ΓX.
    auto const gx = g.functor(x);
    CHECK(same_subobject(*e.cat, ic.span, Span{gx, e.cat->identity(gx), e.cat->identity(gx)}));
  }
  for (auto const& c : exact_sample()) {
    auto const id = identity_functor(c);
    for (auto const& s : all_congruences(*c)) {
      auto const p = make_pseudocongruence(*c, s);
      REQUIRE(p);
      auto const ic = image_congruence_check(id, *p);
      CHECK(ic.verdict);
      CHECK(same_subobject(*c, ic.span, s));
    }
  }
}

TEST_CASE("extensions") {
  SUBCASE("Γ over ARROW extends to the identity") {
    auto const a   = share(fixtures::arrow());
    auto const cex = build_exact_completion(a);
    auto const g   = gamma(cex);
    auto const ext = extend_functor(g.functor, cex, g);
    CHECK(ext.contract.verdict());
    CHECK(find_natural_isomorphism(ext.fbar, identity_functor(cex.cat)));
    CHECK(check_equivalence(ext.fbar));
    for (std::size_t i = 0; i < cex.objects.size(); ++i) {
      auto const& p = cex.objects[i];
      CHECK(oracle::coinserter(*cex.cat, g.functor(p.r0), g.functor(p.r1), ext.quotient[i]));
    }
    auto const u = check_extension_uniqueness(g.functor, cex, g, ext);
    CHECK(u.verdict());
  }
  SUBCASE("identity on ONE") {
    auto const one = share(fixtures::one());
    auto const cex = build_exact_completion(one);
    auto const g   = gamma(cex);
    auto const ext = extend_functor(identity_functor(one), cex, g);
    CHECK(ext.fbar.objects == std::vector<ObjectId>{object_id(0)});
    CHECK(ext.contract.verdict());
  }
  SUBCASE("not left covering") {
    auto const a   = share(fixtures::arrow());
    auto const cex = build_exact_completion(a);
    auto const g   = gamma(cex);
    for_each_functor(a, a, [&](PosFunctor const& f) {
      if (!check_left_covering(f).verdict()) {
        CHECK_THROWS_AS(extend_functor(f, cex, g), PreconditionFailed);
      }
    });
  }
  SUBCASE("every left covering functor between corpus categories") {
    std::size_t extended = 0;
    for (auto const& s : weakly_lex_sample()) {
      auto const cex = build_exact_completion(s);
      auto const g   = gamma(cex);
      for (auto const& t : exact_sample()) {
        for_each_functor(s, t, [&](PosFunctor const& f) {
          if (!check_left_covering(f, false).verdict()) {
            return;
          }
          auto const ext = extend_functor(f, cex, g);
          CHECK(ext.contract.verdict());
          CHECK(check_regular_functor(ext.fbar).verdict());
          CHECK(find_natural_isomorphism(compose(ext.fbar, g.functor), f));
          auto const u = check_extension_uniqueness(f, cex, g, ext);
          CHECK(u.verdict());
          CHECK(check_extension_equivalence(f, ext).verdict());
          ++extended;
        });
      }
    }
    CHECK(extended > 10);
  }
}

TEST_CASE("regular functor contract") {
  auto const one = share(fixtures::one());
  auto const a   = share(fixtures::arrow());
  CHECK(check_regular_functor(identity_functor(a)).verdict());
  // * |-> a misses the terminal object b.
  PosFunctor pick_a{one, a, {object_id(0)}, {mor(*a, "id_a")}};
  CHECK_FALSE(check_regular_functor(validate_functor(pick_a)).verdict());
}

TEST_CASE("uniqueness gate") {
  auto const iso = share(shapes::iso2());
  auto const cex = build_exact_completion(iso);
  REQUIRE(cex.cat->number_of_objects() == 4);
  auto const g   = gamma(cex);
  auto const ext = extend_functor(g.functor, cex, g);
  auto const below = check_extension_uniqueness(g.functor, cex, g, ext, 3);
  CHECK(below.verdict());
  CHECK(below.entries.front().name == "skipped above the gate");
  auto const at = check_extension_uniqueness(g.functor, cex, g, ext, 4);
  CHECK(at.verdict());
  CHECK(at.entries.front().name == "functors enumerated");
}

TEST_CASE("lemma on inserter rows") {
  auto const a = fixtures::arrow();
  auto const f = mor(a, "f");
  auto const ida = mor(a, "id_a");
  auto const idb = mor(a, "id_b");
  CHECK(useful_lemma_check(a, {f, f, f, f, ida, idb}).verdict());
  CHECK_THROWS_AS(useful_lemma_check(a, {f, ida, f, f, ida, idb}), DiagramShapeInvalid);
  for (auto const& c : exact_sample()) {
    auto const diagrams = scan_lemma_diagrams(*c);
    CHECK_FALSE(diagrams.empty());
    for (auto const& d : diagrams) {
      CHECK(useful_lemma_check(*c, d).verdict());
    }
  }
}

TEST_CASE("projective cover theorem and corollary") {
  for (auto const& c : weakly_lex_sample()) {
    auto const cex = build_exact_completion(c);
    auto const g   = gamma(cex);
    std::vector<ObjectId> image;
    for (auto x : c->objects()) {
      image.push_back(g.functor(x));
    }
    CHECK(check_projective_cover_theorem(cex.cat, image).verdict());
  }
  auto const one = share(fixtures::one());
  std::vector<ObjectId> star{object_id(0)};
  CHECK(check_projective_cover_theorem(one, star).verdict());

  auto const iso = share(shapes::iso2());
  std::vector<ObjectId> just_a{obj(*iso, "a")};
  auto const cor = check_cover_corollary(iso, just_a, one, star);
  CHECK(cor.report.verdict());
  REQUIRE(cor.equivalence);
  CHECK(check_equivalence(*cor.equivalence));

  auto const a = share(fixtures::arrow());
  std::vector<ObjectId> both{object_id(0), object_id(1)};
  auto const cex = build_exact_completion(a);
  auto const cor2 = check_cover_corollary(a, both, cex.cat, both);
  CHECK(cor2.report.verdict());

  std::vector<ObjectId> only_a{obj(*a, "a")};
  CHECK_THROWS_AS(check_projective_cover_theorem(a, only_a), PreconditionFailed);
}

TEST_CASE("extension equivalence hypotheses") {
  auto const a   = share(fixtures::arrow());
  auto const r   = check_extension_equivalence(identity_functor(a));
  CHECK(r.verdict());
  auto const cex = build_exact_completion(a);
  CHECK(check_extension_equivalence(gamma(cex).functor).verdict());
}

TEST_CASE("functor JSON") {
  auto const j = nlohmann::json::parse(R"({
    "source": "builtin:ARROW", "target": "builtin:ONE",
    "objMap": {"a": "*", "b": "*"}, "morMap": {"f": "id_*"}})");
  auto const f = parse_functor(j);
  CHECK(f.morphisms == collapse().morphisms);
  auto const again = parse_functor(functor_to_json(f));
  CHECK(again.objects == f.objects);
  CHECK(again.morphisms == f.morphisms);

  auto missing = j;
  missing["morMap"].erase("f");
  CHECK_THROWS_AS(parse_functor(missing), ParseError);
  auto extra = j;
  extra["note"] = 1;
  CHECK_THROWS_AS(parse_functor(extra), ParseError);
  auto wrong = j;
  wrong["objMap"]["a"] = "nowhere";
  CHECK_THROWS_AS(parse_functor(wrong), ParseError);
}
