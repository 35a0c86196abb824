#include "poscat/theorems.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include "poscat/enumerate.hpp"
#include "poscat/limits.hpp"

namespace poscat {

  namespace {

    void absorb_failures(Report& into, Report const& from, std::string const& prefix) {
      for (auto const& e : from.failures()) {
        into.entries.push_back({prefix + e.name, false, e.witness});
      }
    }

    // Runs body, turning a library exception into a failing entry.
    template <typename F>
    void guarded(Report& r, std::string const& name, F&& body) {
      try {
        body();
      } catch (Error const& e) {
        r.fail(name, {{"exception", e.what()}});
      }
    }

  }  // namespace

  Report completion_battery(ExCompletion const& e) {
    Report      r;
    auto const& cat  = *e.cat;
    auto const& base = *e.base;
    r.command        = "completion";

    r.absorb(check_exact(cat), "exactness: ");

    std::optional<GammaFunctor> g;
    guarded(r, "embedding: Γ", [&] { g = gamma(e); });
    if (!g) {
      return r;
    }
    r.pass("embedding: Γ is a functor");
    r.record("embedding: Γ fully order-faithful", check_fully_order_faithful(g->functor));
    std::vector<ObjectId> image;
    for (auto x : base.objects()) {
      auto const gx = g->functor(x);
      image.push_back(gx);
      r.record("embedding: Γ" + base.object_name(x) + " projective", check_projective(cat, gx));
    }
    auto cover = check_projective_cover(cat, image);
    r.record("embedding: Γ-image is a projective cover", cover.verdict);
    if (cover) {
      for (auto family : {LimitFamily::terminal, LimitFamily::product, LimitFamily::inserter,
                          LimitFamily::identity_comma}) {
        absorb_failures(r, check_weak_limits_in_cover(cat, image, family), "embedding: cover ");
      }
    }

    std::size_t presentations = 0;
    for (std::size_t k = 0; k < cat.number_of_morphisms(); ++k) {
      auto const d = coinserter_presentation(e, *g, morphism_id(k));
      absorb_failures(r, d.checks, "presentation " + cat.morphism_name(morphism_id(k)) + ": ");
      ++presentations;
    }
    r.pass("presentation: morphisms checked", presentations);

    for (auto kind : all_constructions()) {
      auto const prefix = "crosscheck " + std::string(to_string(kind)) + ": ";
      guarded(r, prefix + "run", [&] { r.absorb(internal_construction_crosscheck(e, kind), prefix); });
    }

    // Any other weak comma of identities gives a naturally isomorphic Γ.
    std::size_t choices = 0;
    auto const  all     = identity_comma_choices(base);
    for (auto x : base.objects()) {
      for (auto const& alt : all[index(x)]) {
        auto commas      = g->comma;
        commas[index(x)] = alt;
        guarded(r, "choice independence at " + base.object_name(x), [&] {
          auto const other = gamma(e, commas);
          ++choices;
          if (!find_natural_isomorphism(g->functor, other.functor)) {
            r.fail("choice independence at " + base.object_name(x), span_json(base, alt));
          }
        });
      }
    }
    r.pass("embedding: weak comma choices checked", choices);
    return r;
  }

  Report definitional_battery(FinPosCategory const& c, bool regular) {
    Report r;
    r.command = "definitions";

    std::size_t relations = 0;
    std::size_t congruences = 0;
    for (auto x : c.objects()) {
      for (auto rel : c.objects()) {
        auto const legs = c.hom(rel, x);
        for (auto r0 : legs) {
          for (auto r1 : legs) {
            Span const s{rel, r0, r1};
            if (!relation_flags(c, s).jointly_order_monic) {
              continue;
            }
            ++relations;
            try {
              congruences += is_congruence(c, s).holds ? 1 : 0;
            } catch (DefinitionMismatch const& e) {
              r.fail("congruence characterizations agree", span_json(c, s));
            }
          }
        }
      }
    }
    r.pass("jointly order-monic spans", relations);
    r.pass("congruences", congruences);
    if (!regular) {
      return r;
    }

    auto const classes = classify_morphisms(c);
    for (std::size_t k = 0; k < c.number_of_morphisms(); ++k) {
      auto const f         = morphism_id(k);
      bool const so        = classes.so[k];
      bool const effective = is_effective_epi(c, f).holds;
      auto const kernel    = kernel_congruence(c, f);
      bool const own       = kernel && is_coinserter(c, kernel->r0, kernel->r1, f);
      if (so != effective || so != own) {
        r.fail("so ⟺ effective epi ⟺ coinserter of kernel at " + c.morphism_name(f),
               {{"so", so}, {"effective epi", effective}, {"coinserter of kernel", own}});
      }
    }
    r.pass("morphisms classified", c.number_of_morphisms());

    auto const diagrams = scan_lemma_diagrams(c);
    for (auto const& d : diagrams) {
      absorb_failures(r, useful_lemma_check(c, d), "lemma: ");
    }
    r.pass("lemma diagrams", diagrams.size());
    return r;
  }

  Report idempotence_battery(CategoryPtr const& c) {
    Report r;
    r.command = "idempotence";
    auto const objs = c->objects();
    if (!check_exact(*c).verdict() || !check_projective_cover(*c, objs)) {
      r.pass("not exact with itself as projective cover");
      return r;
    }
    guarded(r, "extension of the identity", [&] {
      r.absorb(check_extension_equivalence(identity_functor(c)), "identity: ");
    });
    guarded(r, "cover theorem", [&] {
      r.absorb(check_projective_cover_theorem(c, objs), "cover theorem: ");
    });
    return r;
  }

  Report universal_property_battery(CategoryPtr const&  source,
                                    ExCompletion const& cex,
                                    CategoryPtr const&  target,
                                    std::size_t         gate) {
    Report r;
    r.command = "universal-property";
    if (!check_exact(*target).verdict()) {
      r.pass("target not exact");
      return r;
    }
    auto const  g         = gamma(cex);
    std::size_t functors  = 0;
    std::size_t covering  = 0;
    for_each_functor(source, target, [&](PosFunctor const& f) {
      ++functors;
      if (!check_left_covering(f, false).verdict()) {
        return;
      }
      ++covering;
      auto const tag = "F = " + functor_summary(f).dump() + ": ";
      guarded(r, tag + "extension", [&] {
        auto const ext = extend_functor(f, cex, g, {false});
        absorb_failures(r, ext.contract, tag);
        absorb_failures(r, check_extension_uniqueness(f, cex, g, ext, gate), tag);
        absorb_failures(r, check_extension_equivalence(f, ext), tag);
        for (auto const& p : cex.objects) {
          auto const ic = image_congruence_check(f, p);
          if (!ic.verdict) {
            r.fail(tag + "image congruence", span_json(*target, ic.span));
          }
        }
      });
    });
    r.pass("functors", functors);
    r.pass("left covering functors", covering);
    return r;
  }

  nlohmann::json CorpusSummary::to_json() const {
    auto rows_json = nlohmann::json::array();
    for (auto const& row : rows) {
      rows_json.push_back({{"index", row.index},
                           {"objects", row.objects},
                           {"morphisms", row.morphisms},
                           {"exObjects", row.ex_objects},
                           {"exMorphisms", row.ex_morphisms},
                           {"exact", row.exact},
                           {"passed", row.passed}});
    }
    auto out       = report.to_json();
    out["summary"] = {{"categories", categories},
                      {"weaklyLex", weakly_lex},
                      {"regular", regular},
                      {"exact", exact},
                      {"rows", rows_json}};
    return out;
  }

  std::string CorpusSummary::table() const {
    std::ostringstream out;
    out << "categories " << categories << ", weakly lex " << weakly_lex << ", regular "
        << regular << ", exact " << exact << "\n";
    out << std::setw(8) << "index" << std::setw(6) << "objs" << std::setw(6) << "mors"
        << std::setw(9) << "ex objs" << std::setw(9) << "ex mors" << std::setw(7) << "exact"
        << std::setw(8) << "checks" << "\n";
    for (auto const& row : rows) {
      out << std::setw(8) << row.index << std::setw(6) << row.objects << std::setw(6)
          << row.morphisms << std::setw(9) << row.ex_objects << std::setw(9)
          << row.ex_morphisms << std::setw(7) << (row.exact ? "yes" : "no") << std::setw(8)
          << (row.passed ? "pass" : "FAIL") << "\n";
    }
    return out.str();
  }

  CorpusSummary run_corpus(CorpusOptions const& options) {
    auto const    start = std::chrono::steady_clock::now();
    CorpusSummary s;
    auto&         r = s.report;
    r.command       = "corpus " + std::to_string(options.max_objects) + " "
                + std::to_string(options.max_morphisms);

    struct Lex {
      std::size_t  row;
      CategoryPtr  c;
      ExCompletion cex;
    };
    std::vector<Lex>         lex;
    std::vector<CategoryPtr> exact;
    std::size_t              index = 0;

    for_each_category(options.max_objects, options.max_morphisms, [&](FinPosCategory&& raw) {
      auto const tag = "#" + std::to_string(index) + " ";
      ++s.categories;
      bool const weakly_lex = check_weakly_lex(raw).verdict();
      bool const regular    = weakly_lex && check_regular(raw).verdict();
      if (options.assert_theorems) {
        absorb_failures(r, definitional_battery(raw, regular), tag);
      }
      if (weakly_lex) {
        auto      c = std::make_shared<FinPosCategory const>(std::move(raw));
        CorpusRow row{index, c->number_of_objects(), c->number_of_morphisms()};
        ++s.weakly_lex;
        s.regular += regular ? 1 : 0;
        guarded(r, tag + "completion", [&] {
          auto cex         = build_exact_completion(c);
          row.ex_objects   = cex.cat->number_of_objects();
          row.ex_morphisms = cex.cat->number_of_morphisms();
          if (options.assert_theorems) {
            auto const before = r.failures().size();
            absorb_failures(r, completion_battery(cex), tag);
            absorb_failures(r, idempotence_battery(c), tag);
            row.passed = r.failures().size() == before;
          }
          lex.push_back({s.rows.size(), c, std::move(cex)});
        });
        row.exact = check_exact(*c).verdict();
        if (row.exact) {
          ++s.exact;
          exact.push_back(c);
        }
        s.rows.push_back(row);
      }
      ++index;
    });

    if (options.assert_theorems) {
      for (auto& source : lex) {
        for (auto const& target : exact) {
          auto const before = r.failures().size();
          absorb_failures(
              r,
              universal_property_battery(source.c, source.cex, target, options.uniqueness_gate),
              "#" + std::to_string(s.rows[source.row].index) + " -> ");
          if (r.failures().size() != before) {
            s.rows[source.row].passed = false;
          }
        }
      }
    }
    r.pass("categories", s.categories);
    r.pass("weakly lex", s.weakly_lex);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
  }

}  // namespace poscat
