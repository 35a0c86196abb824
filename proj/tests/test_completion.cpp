#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "oracles.hpp"
#include "poscat/builder.hpp"
#include "poscat/completion.hpp"
#include "poscat/enumerate.hpp"
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

  // Weakly lex members of the (2,5) corpus and the hand-built thin ones.
  std::vector<CategoryPtr> const& weakly_lex_sample() {
    static std::vector<CategoryPtr> out;
    if (!out.empty()) {
      return out;
    }
    for_each_category(2, 5, [&](FinPosCategory&& c) {
      if (check_weakly_lex(c).verdict()) {
        out.push_back(share(std::move(c)));
      }
    });
    out.push_back(share(shapes::chain3()));
    out.push_back(share(shapes::lattice2x2()));
    return out;
  }

  struct GuardEnv {
    explicit GuardEnv(char const* value) {
      ::setenv("POSCAT_SIZE_GUARD", value, 1);
    }
    ~GuardEnv() {
      ::unsetenv("POSCAT_SIZE_GUARD");
    }
  };

}  // namespace

TEST_CASE("pseudocongruences of the fixtures") {
  auto const one = fixtures::one();
  auto const p1  = enumerate_pseudocongruences(one);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].r0 == one.identity(object_id(0)));
  CHECK(p1[0].r1 == one.identity(object_id(0)));

  auto const a  = fixtures::arrow();
  auto const pa = enumerate_pseudocongruences(a);
  REQUIRE(pa.size() == 2);
  CHECK(pa[0].carrier == obj(a, "a"));
  CHECK(pa[0].relation == obj(a, "a"));
  CHECK(pa[0].r0 == mor(a, "id_a"));
  CHECK(pa[1].carrier == obj(a, "b"));
  CHECK(pa[1].r1 == mor(a, "id_b"));

  // (a; f, f) on b: id_b <= id_b does not factor through a.
  auto const v = check_pseudocongruence(a, Span{obj(a, "a"), mor(a, "f"), mor(a, "f")});
  CHECK_FALSE(v);
  CHECK_FALSE(oracle::pseudocongruence(a, {obj(a, "b"), obj(a, "a"), mor(a, "f"), mor(a, "f")}));
  CHECK(v.witness.dump().find("id_b") != std::string::npos);

  CHECK_THROWS_AS(enumerate_pseudocongruences(fixtures::idem()), NotWeaklyLex);
  CHECK_THROWS_AS(build_exact_completion(share(fixtures::idem())), NotWeaklyLex);
}

TEST_CASE("pseudocongruences match the oracle and carry valid witnesses") {
  for (auto const& c : weakly_lex_sample()) {
    auto const found    = enumerate_pseudocongruences(*c);
    auto const expected = oracle::pseudocongruences(*c);
    REQUIRE(found.size() == expected.size());
    for (std::size_t i = 0; i < found.size(); ++i) {
      auto const& p = found[i];
      CHECK(p.carrier == expected[i].x);
      CHECK(p.relation == expected[i].r);
      CHECK(p.r0 == expected[i].r0);
      CHECK(p.r1 == expected[i].r1);
      for (auto const& w : p.reflexivity) {
        CHECK(c->leq(w.a0, w.a1));
        CHECK(c->compose(p.r0, w.u) == w.a0);
        CHECK(c->compose(p.r1, w.u) == w.a1);
      }
      for (auto const& w : p.transitivity) {
        CHECK(c->compose(p.r1, w.a) == c->compose(p.r0, w.b));
        CHECK(c->compose(p.r0, w.t) == c->compose(p.r0, w.a));
        CHECK(c->compose(p.r1, w.t) == c->compose(p.r1, w.b));
      }
    }
    // Every weak comma of identities is a pseudocongruence.
    auto const commas = identity_comma_choices(*c);
    for (auto x : c->objects()) {
      REQUIRE_FALSE(commas[index(x)].empty());
      for (auto const& s : commas[index(x)]) {
        CHECK(oracle::pseudocongruence(*c, {x, s.apex, s.r0, s.r1}));
      }
    }
  }
}

TEST_CASE("completion sizes match the oracle") {
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  for (auto const& c : weakly_lex_sample()) {
    auto const e = build_exact_completion(c);
    auto const o = oracle::ex_size(*c);
    CHECK(e.cat->number_of_objects() == o.objects);
    CHECK(e.cat->number_of_morphisms() == o.morphisms);
    sizes.emplace_back(o.objects, o.morphisms);
  }
  // ONE, ARROW, two isomorphic objects, the 3-chain, the square.
  CHECK(sizes == std::vector<std::pair<std::size_t, std::size_t>>{
                     {1, 1}, {2, 3}, {4, 16}, {3, 6}, {4, 9}});
}

TEST_CASE("completions of exact fixtures are themselves") {
  auto const one = share(fixtures::one());
  auto const arrow = share(fixtures::arrow());
  CHECK(isomorphic(*build_exact_completion(one).cat, *one));
  CHECK(isomorphic(*build_exact_completion(arrow).cat, *arrow));
  auto const e = build_exact_completion(arrow);
  CHECK(e.cat->object_name(object_id(0)) == "⟨a;a,id_a,id_a⟩");
  CHECK(e.cat->morphism_name(morphism_id(1)) == "[f]:0->1");
}

TEST_CASE("stored provenance replays") {
  for (auto const& c : weakly_lex_sample()) {
    auto const e = build_exact_completion(c);
    for (std::size_t k = 0; k < e.morphisms.size(); ++k) {
      auto const& m = e.morphisms[k];
      auto const& p = e.object(m.source);
      auto const& q = e.object(m.target);
      CHECK(m.representative == m.members.front());
      CHECK(c->compose(q.r0, m.lift) == c->compose(m.representative, p.r0));
      CHECK(c->compose(q.r1, m.lift) == c->compose(m.representative, p.r1));
      CHECK(e.class_of(m.source, m.target, m.representative) == morphism_id(k));
    }
    for (auto const& w : e.order) {
      auto const& lo = e.morphism(w.lesser);
      auto const& hi = e.morphism(w.greater);
      auto const& t  = e.object(lo.target);
      CHECK(e.cat->leq(w.lesser, w.greater));
      CHECK(c->compose(t.r0, w.sigma) == lo.representative);
      CHECK(c->compose(t.r1, w.sigma) == hi.representative);
    }
    auto const prov = provenance_json(e);
    CHECK(prov["objects"].size() == e.objects.size());
    CHECK(prov["morphisms"].size() == e.morphisms.size());
  }
}

TEST_CASE("Γ is a fully order-faithful functor onto a projective cover") {
  for (auto const& c : weakly_lex_sample()) {
    auto const e = build_exact_completion(c);
    auto const g = gamma(e);
    std::vector<ObjectId> image;
    for (auto x : c->objects()) {
      image.push_back(g.functor(x));
      CHECK(oracle::projective(*e.cat, g.functor(x)));
    }
    CHECK(check_fully_order_faithful(g.functor));
    CHECK(check_projective_cover(*e.cat, image));
    for (auto f : oracle::morphisms(*c)) {
      for (auto h : oracle::morphisms(*c)) {
        if (c->parallel(f, h)) {
          CHECK(c->leq(f, h) == e.cat->leq(g.functor(f), g.functor(h)));
        }
      }
    }
    // Choice independence.
    auto const choices = identity_comma_choices(*c);
    for (auto x : c->objects()) {
      for (auto const& alt : choices[index(x)]) {
        auto commas      = g.comma;
        commas[index(x)] = alt;
        CHECK(find_natural_isomorphism(g.functor, gamma(e, commas).functor));
      }
    }
  }
  auto const arrow = share(fixtures::arrow());
  auto const e     = build_exact_completion(arrow);
  auto const g     = gamma(e);
  CHECK(g.comma[0].r0 == mor(*arrow, "id_a"));
  CHECK(g.comma[1].apex == obj(*arrow, "b"));
  CHECK(check_equivalence(g.functor));
}

TEST_CASE("coinserter presentations") {
  auto const arrow = share(fixtures::arrow());
  auto const e     = build_exact_completion(arrow);
  auto const g     = gamma(e);
  auto const f     = e.class_of(object_id(0), object_id(1), mor(*arrow, "f"));
  auto const d     = coinserter_presentation(e, g, f);
  CHECK(d.checks.verdict());
  CHECK(e.cat->is_identity(d.source.q));
  CHECK(e.cat->is_identity(d.target.q));
  CHECK(d.middle == f);

  for (auto const& c : weakly_lex_sample()) {
    auto const ec = build_exact_completion(c);
    auto const gc = gamma(ec);
    for (auto m : oracle::morphisms(*ec.cat)) {
      auto const p = coinserter_presentation(ec, gc, m);
      CHECK(p.checks.verdict());
      CHECK(oracle::coinserter(*ec.cat, p.source.d0, p.source.d1, p.source.q));
      CHECK(oracle::coinserter(*ec.cat, p.target.d0, p.target.d1, p.target.q));
      CHECK(ec.cat->compose(m, p.source.q) == ec.cat->compose(p.target.q, p.middle));
    }
  }
}

TEST_CASE("explicit constructions agree with search") {
  for (auto const& c : weakly_lex_sample()) {
    auto const e = build_exact_completion(c);
    CHECK(check_exact(*e.cat).verdict());
    for (auto kind : all_constructions()) {
      CAPTURE(to_string(kind));
      auto const r = internal_construction_crosscheck(e, kind);
      CHECK(r.verdict());
      CHECK_FALSE(r.entries.empty());
    }
  }
}

TEST_CASE("so morphisms of the completion are identity classes up to isomorphism") {
  for (auto const& c : weakly_lex_sample()) {
    auto const  e   = build_exact_completion(c);
    auto const& cat = *e.cat;
    for (auto m : oracle::morphisms(cat)) {
      if (!oracle::so(cat, m)) {
        continue;
      }
      bool found = false;
      for (auto n : cat.outgoing(cat.dom(m))) {
        if (!c->is_identity(e.morphism(n).representative)) {
          continue;
        }
        for (auto u : cat.hom(cat.cod(n), cat.cod(m))) {
          found = found || (is_isomorphism(cat, u) && cat.compose(u, n) == m);
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("size guard") {
  auto const arrow = share(fixtures::arrow());
  CHECK_THROWS_AS(build_exact_completion(arrow, SizeGuard{1, 100}), SizeGuardExceeded);
  CHECK_THROWS_AS(build_exact_completion(arrow, SizeGuard{10, 2}), SizeGuardExceeded);
  {
    GuardEnv env("1");
    CHECK(SizeGuard::from_environment().objects == 1);
    CHECK_THROWS_AS(build_exact_completion(arrow), SizeGuardExceeded);
  }
  {
    GuardEnv env("3,7");
    auto const g = SizeGuard::from_environment();
    CHECK(g.objects == 3);
    CHECK(g.morphisms == 7);
    CHECK(build_exact_completion(arrow).cat->number_of_objects() == 2);
  }
  {
    GuardEnv env("lots");
    CHECK_THROWS_AS(SizeGuard::from_environment(), Error);
  }
  CHECK(SizeGuard::from_environment().objects == 512);
  CHECK(SizeGuard::from_environment().morphisms == 8192);
}
