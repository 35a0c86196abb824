#include "poscat/extension.hpp"

#include <algorithm>

#include "poscat/limits.hpp"

namespace poscat {

  PreconditionFailed::PreconditionFailed(std::string what, Report report)
      : Error("PreconditionFailed: " + what), _report(std::move(report)) {}

  namespace {

    Cone image(PosFunctor const& f, Cone const& c) {
      Cone out{f(c.apex), {}};
      for (auto l : c.legs) {
        out.legs.push_back(f(l));
      }
      return out;
    }

    void require(bool ok, std::string const& what, Report const& why = {}) {
      if (!ok) {
        throw PreconditionFailed(what, why);
      }
    }

    // The comparison from the image of a weak limit cone to the canonical
    // strict limit of the image diagram, checked for being so.
    class CoveringSweep {
     public:
      CoveringSweep(PosFunctor const& f, Report& r)
          : _f(f), _s(*f.source), _t(*f.target), _r(r), _so(classify_morphisms(_t).so) {}

      void run(std::string const&  what,
               DiagramSpec const&  source_spec,
               DiagramSpec const&  target_spec) {
        auto const strict = search_strict_limit(_t, target_spec);
        if (!strict) {
          _r.fail(what + ": no strict limit in the target", nlohmann::json::object());
          return;
        }
        std::size_t so = 0;
        std::size_t n  = 0;
        for (auto const& cone : all_weak_limits(_s, source_spec)) {
          ++_count;
          ++n;
          auto const img = image(_f, cone);
          auto const cmp = factor_through(_t, img, strict->cone);
          if (!cmp) {
            _r.fail(what + ": image is not a cone", cone_json(_s, cone));
          } else if (!_so[index(*cmp)]) {
            _r.fail(what, {{"weak limit", cone_json(_s, cone)},
                           {"strict limit", cone_json(_t, strict->cone)},
                           {"comparison", _t.morphism_name(*cmp)},
                           {"so", false}});
          } else {
            ++so;
          }
        }
        // All weak limits of one diagram factor through each other, so the
        // verdict cannot depend on the choice.
        if (so != 0 && so != n) {
          _r.fail(what + ": verdict depends on the chosen weak limit",
                  {{"so", so}, {"weak limits", n}});
        }
      }

      std::size_t count() const noexcept {
        return _count;
      }

     private:
      PosFunctor const&     _f;
      FinPosCategory const& _s;
      FinPosCategory const& _t;
      Report&               _r;
      std::vector<bool>     _so;
      std::size_t           _count = 0;
    };

  }  // namespace

  Report check_left_covering(PosFunctor const& f, bool check_preconditions) {
    auto const& s = *f.source;
    auto const& t = *f.target;
    if (check_preconditions) {
      auto lex = check_weakly_lex(s);
      require(lex.verdict(), "source is not weakly lex", lex);
      auto reg = check_regular(t);
      require(reg.verdict(), "target is not regular", reg);
    }
    Report r;
    r.command = "left-covering";
    CoveringSweep sweep(f, r);
    sweep.run("terminal", specs::terminal(), specs::terminal());
    for (auto x : s.objects()) {
      for (auto y : s.objects()) {
        sweep.run("product " + s.object_name(x) + " x " + s.object_name(y),
                  specs::product(x, y),
                  specs::product(f(x), f(y)));
      }
    }
    for (std::size_t k = 0; k < s.number_of_morphisms(); ++k) {
      auto const a = morphism_id(k);
      for (auto b : s.hom(s.dom(a), s.cod(a))) {
        sweep.run("inserter " + s.morphism_name(a) + " <= " + s.morphism_name(b),
                  specs::inserter(s, a, b),
                  specs::inserter(t, f(a), f(b)));
      }
    }
    r.pass("weak limit cones swept", sweep.count());
    return r;
  }

  ImageCongruence image_congruence_check(PosFunctor const& f, Pseudocongruence const& p) {
    auto const& t  = *f.target;
    auto const  fx = f(p.carrier);
    auto const  product = strict_product(t, fx, fx);
    require(product.limit.has_value(), "target lacks the product " + t.object_name(fx) + " x "
                                           + t.object_name(fx));
    ImageCongruence out;
    out.product = product->cone;
    auto h = factor_through(t, Cone{f(p.relation), {f(p.r0), f(p.r1)}}, out.product);
    if (!h) {
      throw Error("pairing does not factor through the strict product");
    }
    out.pairing   = *h;
    auto const fac = so_ff_factorize(t, *h);
    require(fac.has_value(), "pairing " + t.morphism_name(*h) + " has no (so,ff) factorization");
    out.factorization = *fac;
    out.span          = {fac->middle,
                         t.compose(out.product.legs[0], fac->m),
                         t.compose(out.product.legs[1], fac->m)};
    out.verdict       = is_congruence(t, out.span);
    return out;
  }

  Report check_regular_functor(PosFunctor const& g) {
    auto const& s = *g.source;
    auto const& t = *g.target;
    Report      r;
    r.command = "regular-functor";

    if (auto term = strict_terminal(s)) {
      auto const img = image(g, term->cone);
      r.record("preserves terminal",
               is_strict_limit(t, specs::terminal(), img)
                   ? Verdict::yes()
                   : Verdict::no({{"image", t.object_name(img.apex)}}));
    } else {
      r.fail("source has a strict terminal", nlohmann::json::object());
    }

    std::size_t products = 0;
    for (auto x : s.objects()) {
      for (auto y : s.objects()) {
        auto p = strict_product(s, x, y);
        if (!p) {
          r.fail("source product " + s.object_name(x) + " x " + s.object_name(y),
                 nlohmann::json::object());
          continue;
        }
        auto const img = image(g, p->cone);
        if (!is_strict_limit(t, specs::product(g(x), g(y)), img)) {
          r.fail("preserves product " + s.object_name(x) + " x " + s.object_name(y),
                 {{"image", cone_json(t, img)}});
        }
        ++products;
      }
    }
    r.pass("products checked", products);

    std::size_t inserters = 0;
    for (std::size_t k = 0; k < s.number_of_morphisms(); ++k) {
      auto const a = morphism_id(k);
      for (auto b : s.hom(s.dom(a), s.cod(a))) {
        auto e = strict_inserter(s, a, b);
        if (!e) {
          r.fail("source inserter " + s.morphism_name(a) + " <= " + s.morphism_name(b),
                 nlohmann::json::object());
          continue;
        }
        auto const img = image(g, e->cone);
        if (!is_strict_limit(t, specs::inserter(t, g(a), g(b)), img)) {
          r.fail("preserves inserter " + s.morphism_name(a) + " <= " + s.morphism_name(b),
                 {{"image", cone_json(t, img)}});
        }
        ++inserters;
      }
    }
    r.pass("inserters checked", inserters);

    auto const src = classify_morphisms(s);
    auto const tgt = classify_morphisms(t);
    std::size_t so = 0;
    for (std::size_t k = 0; k < s.number_of_morphisms(); ++k) {
      if (!src.so[k]) {
        continue;
      }
      ++so;
      auto const img = g(morphism_id(k));
      if (!tgt.so[index(img)]) {
        r.fail("preserves so " + s.morphism_name(morphism_id(k)),
               {{"image", t.morphism_name(img)}});
      }
    }
    r.pass("so-morphisms checked", so);
    return r;
  }

  ExtensionResult extend_functor(PosFunctor const&    f,
                                 ExCompletion const&  cex,
                                 GammaFunctor const&  g,
                                 ExtendOptions const& options) {
    auto const& t = *f.target;
    if (f.source != cex.base && !(*f.source == *cex.base)) {
      throw Error("functor source is not the base of the completion");
    }
    if (options.check_preconditions) {
      auto exact = check_exact(t);
      require(exact.verdict(), "target is not exact", exact);
      auto covering = check_left_covering(f);
      require(covering.verdict(), "functor is not left covering", covering);
    }
    auto const&     c = *cex.cat;
    ExtensionResult out;
    out.fbar = PosFunctor{cex.cat, f.target, {}, {}};
    for (auto const& p : cex.objects) {
      auto const co = search_coinserter(t, f(p.r0), f(p.r1));
      if (!co) {
        throw CoinserterMissing("no coinserter of " + t.morphism_name(f(p.r0)) + ", "
                                + t.morphism_name(f(p.r1)));
      }
      out.quotient.push_back(co->q);
      out.fbar.objects.push_back(t.cod(co->q));
    }
    for (std::size_t k = 0; k < c.number_of_morphisms(); ++k) {
      auto const& m      = cex.morphisms[k];
      auto const  qs     = out.quotient[index(m.source)];
      auto const  qt     = out.quotient[index(m.target)];
      auto const  target = t.compose(qt, f(m.representative));
      std::optional<MorphismId> mediator;
      for (auto u : t.hom(t.cod(qs), t.cod(qt))) {
        if (t.compose(u, qs) == target) {
          if (mediator) {
            throw ConstructionMismatch("two mediators for " + c.morphism_name(morphism_id(k)));
          }
          mediator = u;
        }
      }
      if (!mediator) {
        throw ConstructionMismatch("no mediator for " + c.morphism_name(morphism_id(k)));
      }
      out.fbar.morphisms.push_back(*mediator);
    }
    out.fbar = validate_functor(std::move(out.fbar));

    auto& r = out.contract;
    r.command = "extension";
    r.absorb(check_regular_functor(out.fbar), "F̄ ");
    auto const& s = *f.source;
    for (auto x : s.objects()) {
      auto const a = out.quotient[index(g.functor(x))];
      out.natural_iso.push_back(a);
      if (!is_isomorphism(t, a)) {
        r.fail("component at " + s.object_name(x) + " is invertible", t.morphism_name(a));
      }
    }
    auto const fg = compose(out.fbar, g.functor);
    for (std::size_t k = 0; k < s.number_of_morphisms(); ++k) {
      auto const m = morphism_id(k);
      auto const x = s.dom(m);
      auto const y = s.cod(m);
      if (t.compose(fg(m), out.natural_iso[index(x)])
          != t.compose(out.natural_iso[index(y)], f(m))) {
        r.fail("naturality at " + s.morphism_name(m), nlohmann::json::object());
      }
    }
    r.record("F̄∘Γ ≅ F",
             find_natural_isomorphism(f, fg) ? Verdict::yes() : Verdict::no("no natural iso"));
    return out;
  }

  Report check_extension_uniqueness(PosFunctor const&      f,
                                    ExCompletion const&    cex,
                                    GammaFunctor const&    g,
                                    ExtensionResult const& ext,
                                    std::size_t            gate) {
    Report r;
    r.command = "uniqueness";
    if (cex.cat->number_of_objects() > gate) {
      r.pass("skipped above the gate", {{"objects", cex.cat->number_of_objects()},
                                        {"gate", gate}});
      return r;
    }
    std::size_t functors = 0;
    std::size_t regular  = 0;
    for_each_functor(cex.cat, f.target, [&](PosFunctor const& h) {
      ++functors;
      if (!find_natural_isomorphism(compose(h, g.functor), f)) {
        return;
      }
      if (!check_regular_functor(h).verdict()) {
        return;
      }
      ++regular;
      if (!find_natural_isomorphism(h, ext.fbar)) {
        r.fail("regular extension not isomorphic to F̄", functor_summary(h));
      }
    });
    r.pass("functors enumerated", functors);
    r.pass("regular extensions found", regular);
    if (regular == 0) {
      r.fail("F̄ itself was enumerated", nlohmann::json::object());
    }
    return r;
  }

  Report useful_lemma_check(FinPosCategory const& e, LemmaDiagram const& d) {
    auto shape = [](bool ok, std::string const& what) {
      if (!ok) {
        throw DiagramShapeInvalid(what);
      }
    };
    shape(e.parallel(d.f0, d.f1), "top row is not a parallel pair");
    shape(e.parallel(d.g0, d.g1), "bottom row is not a parallel pair");
    shape(e.dom(d.p) == e.dom(d.f0) && e.cod(d.p) == e.dom(d.g0), "p does not join the rows");
    shape(e.dom(d.m) == e.cod(d.f0) && e.cod(d.m) == e.cod(d.g0), "m does not join the rows");
    shape(e.compose(d.g0, d.p) == e.compose(d.m, d.f0)
              && e.compose(d.g1, d.p) == e.compose(d.m, d.f1),
          "squares do not commute");
    shape(is_effective_epi(e, d.p).holds, "p is not an effective epi");
    shape(check_ff(e, d.m).holds, "m is not ff");

    auto top    = strict_inserter(e, d.f0, d.f1);
    auto bottom = strict_inserter(e, d.g0, d.g1);
    require(top && bottom, "missing strict inserter");
    auto const i  = top->cone.legs[0];
    auto const i2 = bottom->cone.legs[0];

    Report r;
    r.command = "useful-lemma";
    auto q = factor_through(e, Cone{e.dom(i), {e.compose(d.p, i)}}, bottom->cone);
    if (!q) {
      r.fail("q exists", nlohmann::json::object());
      return r;
    }
    r.record("q is an effective epi", is_effective_epi(e, *q));
    Cone square{e.dom(i), {i, *q}};
    r.record("(i, q) is a pullback of (p, i')",
             is_strict_limit(e, specs::pullback(e, d.p, i2), square)
                 ? Verdict::yes()
                 : Verdict::no({{"cone", cone_json(e, square)}}));
    return r;
  }

  std::vector<LemmaDiagram> scan_lemma_diagrams(FinPosCategory const& e) {
    std::vector<bool> effective(e.number_of_morphisms());
    for (std::size_t k = 0; k < e.number_of_morphisms(); ++k) {
      effective[k] = is_effective_epi(e, morphism_id(k)).holds;
    }
    auto const classes = classify_morphisms(e);
    std::vector<LemmaDiagram> out;
    for (std::size_t pk = 0; pk < e.number_of_morphisms(); ++pk) {
      if (!effective[pk]) {
        continue;
      }
      auto const p = morphism_id(pk);
      for (std::size_t mk = 0; mk < e.number_of_morphisms(); ++mk) {
        if (!classes.ff[mk]) {
          continue;
        }
        auto const m   = morphism_id(mk);
        auto const top = e.hom(e.dom(p), e.dom(m));
        auto const bot = e.hom(e.cod(p), e.cod(m));
        for (auto f0 : top) {
          for (auto g0 : bot) {
            if (e.compose(g0, p) != e.compose(m, f0)) {
              continue;
            }
            for (auto f1 : top) {
              for (auto g1 : bot) {
                if (e.compose(g1, p) == e.compose(m, f1)) {
                  out.push_back({f0, f1, g0, g1, p, m});
                }
              }
            }
          }
        }
      }
    }
    return out;
  }

  Report check_extension_equivalence(PosFunctor const& f) {
    auto const cex = build_exact_completion(f.source);
    auto const g   = gamma(cex);
    auto const ext = extend_functor(f, cex, g);
    auto       r   = check_extension_equivalence(f, ext);
    r.absorb(ext.contract);
    return r;
  }

  Report check_extension_equivalence(PosFunctor const& f, ExtensionResult const& ext) {
    Report r;
    r.command = "extension-equivalence";
    auto const& t   = *f.target;
    auto        fof = check_fully_order_faithful(f);
    bool        projective = std::ranges::all_of(f.objects, [&](ObjectId y) {
      return check_projective(t, y).holds;
    });
    if (!fof || !projective) {
      r.pass("hypotheses not met", {{"fully order-faithful", fof.holds},
                                    {"projective images", projective}});
      return r;
    }
    r.record("F̄ fully order-faithful", check_fully_order_faithful(ext.fbar));
    if (!check_projective_cover(t, f.objects)) {
      r.pass("images do not cover the target", nlohmann::json::object());
      return r;
    }
    r.record("F̄ equivalence", check_equivalence(ext.fbar));
    return r;
  }

  namespace {

    struct CoverExtension {
      PosFunctor      inclusion;
      ExCompletion    completion;
      GammaFunctor    gamma;
      ExtensionResult extension;
    };

    CoverExtension extend_inclusion(CategoryPtr const& e, std::span<ObjectId const> cover,
                                    Report& r, std::string const& prefix) {
      auto exact = check_exact(*e);
      require(exact.verdict(), "category is not exact", exact);
      auto cv = check_projective_cover(*e, cover);
      require(cv.verdict.holds, "not a projective cover: " + cv.verdict.witness.dump());

      auto inclusion = inclusion_functor(e, cover);
      auto lex       = check_weakly_lex(*inclusion.source);
      r.record(prefix + "cover is weakly lex",
               lex.verdict() ? Verdict::yes() : Verdict::no(lex.to_json()));
      if (!lex.verdict()) {
        throw PreconditionFailed("cover is not weakly lex", lex);
      }
      auto covering = check_left_covering(inclusion, false);
      r.absorb(covering, prefix + "inclusion ");
      auto completion = build_exact_completion(inclusion.source);
      auto g          = gamma(completion);
      auto ext        = extend_functor(inclusion, completion, g, {false});
      r.absorb(ext.contract, prefix);
      return {std::move(inclusion), std::move(completion), std::move(g), std::move(ext)};
    }

  }  // namespace

  Report check_projective_cover_theorem(CategoryPtr e, std::span<ObjectId const> cover) {
    Report r;
    r.command = "cover-theorem";
    auto const ce = extend_inclusion(e, cover, r, "");
    r.record("extension of the inclusion is an equivalence",
             check_equivalence(ce.extension.fbar));
    return r;
  }

  CoverEquivalence check_cover_corollary(CategoryPtr               e,
                                         std::span<ObjectId const> cover_e,
                                         CategoryPtr               f,
                                         std::span<ObjectId const> cover_f) {
    CoverEquivalence out;
    auto&            r = out.report;
    r.command          = "cover-corollary";
    auto const left    = extend_inclusion(e, cover_e, r, "E: ");
    auto const right   = extend_inclusion(f, cover_f, r, "F: ");

    auto const& p   = left.inclusion.source;
    auto const& q   = right.inclusion.source;
    auto const  iso = find_category_isomorphism(*p, *q);
    require(iso.has_value(), "covers are not isomorphic");
    PosFunctor phi = validate_functor({p, q, iso->objects, iso->morphisms});

    // P -> Q -> Q_ex, extended to P_ex -> Q_ex.
    auto const into = compose(right.gamma.functor, phi);
    auto const mid  = extend_functor(into, left.completion, left.gamma);
    r.absorb(mid.contract, "P_ex -> Q_ex: ");
    r.record("P_ex ≃ Q_ex", check_equivalence(mid.fbar));

    auto const back  = pseudo_inverse(left.extension.fbar);
    auto const total = compose(right.extension.fbar, compose(mid.fbar, back));
    auto const v     = check_equivalence(total);
    r.record("E ≃ F", v);
    if (v) {
      out.equivalence = total;
    }
    return out;
  }

}  // namespace poscat
