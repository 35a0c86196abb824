// poscat command-line interface.
//
// Exit codes: 0 pass, 1 semantic failure (the report carries a witness),
// 2 input or parse error.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "poscat/completion.hpp"
#include "poscat/enumerate.hpp"
#include "poscat/extension.hpp"
#include "poscat/json_io.hpp"
#include "poscat/limits.hpp"
#include "poscat/regular.hpp"
#include "poscat/theorems.hpp"

namespace {

  using namespace poscat;

  struct Output {
    std::string format = "json";

    int emit(Report& r, std::chrono::steady_clock::time_point start) const {
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (format == "text") {
        std::cout << r.to_text();
      } else {
        std::cout << r.to_json().dump(2) << '\n';
      }
      return r.verdict() ? 0 : 1;
    }
  };

  Report error_report(std::string command, std::string const& kind, std::string const& what,
                      nlohmann::json witness = nullptr) {
    Report r;
    r.command = std::move(command);
    nlohmann::json w{{"error", kind}, {"message", what}};
    if (!witness.is_null()) {
      w["witness"] = std::move(witness);
    }
    r.fail(kind, std::move(w));
    return r;
  }

  // Maps library exceptions onto the exit-code contract.
  template <typename F>
  int run(std::string const& command, Output const& out, F&& body) {
    auto const start = std::chrono::steady_clock::now();
    try {
      return body(start);
    } catch (ParseError const& e) {
      auto r = error_report(command, "ParseError", e.what());
      out.emit(r, start);
      return 2;
    } catch (BoundsTooLarge const& e) {
      auto r = error_report(command, "BoundsTooLarge", e.what());
      out.emit(r, start);
      return 2;
    } catch (ValidationError const& e) {
      auto r = error_report(command, std::string(to_string(e.kind())), e.what(), e.witness());
      return out.emit(r, start);
    } catch (NotWeaklyLex const& e) {
      auto r = error_report(command, "NotWeaklyLex", e.what());
      r.absorb(e.report(), "weakly-lex: ");
      return out.emit(r, start);
    } catch (PreconditionFailed const& e) {
      auto r = error_report(command, "PreconditionFailed", e.what());
      r.absorb(e.report());
      return out.emit(r, start);
    } catch (NotAFunctor const& e) {
      auto r = error_report(command, "NotAFunctor", e.what(), e.witness());
      return out.emit(r, start);
    } catch (Error const& e) {
      auto r = error_report(command, "Error", e.what());
      return out.emit(r, start);
    }
  }

  Report projectives_report(FinPosCategory const& c) {
    Report                r;
    std::vector<ObjectId> projective;
    for (auto x : c.objects()) {
      auto v = check_projective(c, x);
      r.pass("projective " + c.object_name(x), {{"projective", v.holds}, {"witness", v.witness}});
      if (v) {
        projective.push_back(x);
      }
    }
    auto cover = check_projective_cover(c, projective);
    r.record("projective objects form a projective cover", cover.verdict);
    return r;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"poscat: exact completions of finite poset-enriched categories"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("--format", out.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string source;

  auto* validate = app.add_subcommand("validate", "Check the category laws");
  validate->add_option("category", source, "File path or builtin:NAME")->required();

  bool  weakly_lex = false, regular = false, exact = false, projectives = false;
  auto* check      = app.add_subcommand("check", "Run a structural checker");
  check->add_option("category", source, "File path or builtin:NAME")->required();
  check->add_flag("--weakly-lex", weakly_lex, "Weak finite limits");
  check->add_flag("--regular", regular, "Regularity");
  check->add_flag("--exact", exact, "Exactness");
  check->add_flag("--projectives", projectives, "Projective objects and covers");

  std::string output;
  bool        provenance = false, crosscheck = false;
  auto*       complete   = app.add_subcommand("complete", "Build the exact completion");
  complete->add_option("category", source, "File path or builtin:NAME")->required();
  complete->add_option("-o,--output", output, "Output JSON file")->required();
  complete->add_flag("--provenance", provenance, "Store pseudocongruences and witnesses");
  complete->add_flag("--crosscheck", crosscheck, "Verify the completion against the theorems");

  std::string functor_path, completion_path;
  std::size_t gate   = default_uniqueness_gate;
  auto*       extend = app.add_subcommand("extend", "Extend a left covering functor along Γ");
  extend->add_option("--functor", functor_path, "Functor JSON file")->required();
  extend->add_option("--completion", completion_path,
                     "Completion file written by 'complete'; rebuilt and compared");
  extend->add_option("--gate", gate, "Uniqueness check size gate (completion objects)")
      ->capture_default_str();

  std::size_t objects = 2, morphisms = 5;
  bool        assert_theorems = false;
  auto*       corpus = app.add_subcommand("corpus", "Enumerate small categories and check theorems");
  corpus->add_option("--objects", objects, "Maximum number of objects")->capture_default_str();
  corpus->add_option("--morphisms", morphisms, "Maximum number of morphisms")
      ->capture_default_str();
  corpus->add_flag("--assert-theorems", assert_theorems, "Run the full theorem battery");
  corpus->add_option("--gate", gate, "Uniqueness check size gate")->capture_default_str();

  bool  show_ids = false;
  auto* dot      = app.add_subcommand("dot", "Render a category as Graphviz DOT");
  dot->add_option("category", source, "File path or builtin:NAME")->required();
  dot->add_flag("--show-ids", show_ids, "Draw identity morphisms");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  if (validate->parsed()) {
    return run("validate", out, [&](auto start) {
      auto const c = load_category(source);
      Report     r;
      r.command = "validate " + source;
      r.pass("category laws",
             {{"objects", c->number_of_objects()}, {"morphisms", c->number_of_morphisms()}});
      return out.emit(r, start);
    });
  }

  if (check->parsed()) {
    return run("check", out, [&](auto start) {
      if (!weakly_lex && !regular && !exact && !projectives) {
        throw ParseError("check: pass --weakly-lex, --regular, --exact or --projectives");
      }
      auto const c = load_category(source);
      Report     r;
      r.command = "check " + source;
      if (weakly_lex) {
        r.absorb(check_weakly_lex(*c), "weakly-lex: ");
      }
      if (regular) {
        r.absorb(check_regular(*c), "regular: ");
      }
      if (exact) {
        r.absorb(check_exact(*c), "exact: ");
      }
      if (projectives) {
        r.absorb(projectives_report(*c), "projectives: ");
      }
      return out.emit(r, start);
    });
  }

  if (complete->parsed()) {
    return run("complete", out, [&](auto start) {
      auto const c = load_category(source);
      auto const e = build_exact_completion(c);
      auto       j = category_to_json(*e.cat);
      if (provenance) {
        j["provenance"] = provenance_json(e);
      }
      std::ofstream file(output);
      if (!file || !(file << j.dump(2) << '\n')) {
        throw ParseError("cannot write " + output);
      }
      Report r;
      r.command = "complete " + source;
      r.pass("completion written", {{"path", output},
                                    {"objects", e.cat->number_of_objects()},
                                    {"morphisms", e.cat->number_of_morphisms()},
                                    {"isomorphic to input", isomorphic(*e.cat, *c)}});
      if (crosscheck) {
        r.absorb(completion_battery(e), "crosscheck: ");
      }
      return out.emit(r, start);
    });
  }

  if (extend->parsed()) {
    return run("extend", out, [&](auto start) {
      auto const f   = load_functor(functor_path);
      auto const cex = build_exact_completion(f.source);
      if (!completion_path.empty()) {
        auto const stored = parse_category(read_json_file(completion_path));
        if (!(stored == *cex.cat)) {
          throw ParseError(completion_path + " is not the completion of the functor's source");
        }
      }
      auto const g = gamma(cex);
      Report     r;
      r.command = "extend " + functor_path;
      r.absorb(check_left_covering(f), "left covering: ");
      auto const ext = extend_functor(f, cex, g);
      r.absorb(ext.contract, "contract: ");
      r.absorb(check_extension_uniqueness(f, cex, g, ext, gate), "uniqueness: ");
      r.absorb(check_extension_equivalence(f, ext), "hypotheses: ");
      r.pass("F̄", functor_summary(ext.fbar));
      r.pass("F̄ equivalence", check_equivalence(ext.fbar).holds);
      return out.emit(r, start);
    });
  }

  if (corpus->parsed()) {
    return run("corpus", out, [&](auto start) {
      CorpusOptions options{objects, morphisms, gate, assert_theorems};
      auto          summary = run_corpus(options);
      summary.report.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (out.format == "text") {
        std::cout << summary.table() << summary.report.to_text();
      } else {
        std::cout << summary.to_json().dump(2) << '\n';
      }
      return summary.report.verdict() ? 0 : 1;
    });
  }

  if (dot->parsed()) {
    return run("dot", out, [&](auto) {
      std::cout << to_dot(*load_category(source), show_ids);
      return 0;
    });
  }
  return 2;
}
