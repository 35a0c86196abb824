// poscat - batteries of theorem checks run over single categories and over
// enumerated corpora.

#ifndef POSCAT_THEOREMS_HPP
#define POSCAT_THEOREMS_HPP

#include <cstddef>
#include <vector>

#include "poscat/completion.hpp"
#include "poscat/extension.hpp"
#include "poscat/report.hpp"

namespace poscat {

  // For a completion E of a weakly lex C:
  //   exactness       E.cat is exact
  //   embedding       Γ is a fully order-faithful functor, every ΓA is
  //                   projective and the Γ-image is a projective cover
  //   presentation    every morphism has its coinserter presentation
  //   crosscheck      every explicit construction agrees with search
  // plus choice independence of Γ, the weak-comma pseudocongruences and the
  // weak limits of the cover.
  Report completion_battery(ExCompletion const& e);

  // Congruence characterizations on every jointly order-monic span; when the
  // category is regular also so ⟺ effective epi ⟺ coinserter of its kernel
  // congruence, and the lemma on inserter rows.
  Report definitional_battery(FinPosCategory const& c, bool regular);

  // For exact C that is its own projective cover: the extension of the
  // identity along Γ and of the inclusion of C are equivalences.
  Report idempotence_battery(CategoryPtr const& c);

  // Every left covering functor source -> target (target exact) extends; the
  // extension is regular, restricts to F along Γ and is unique up to
  // isomorphism when C_ex is within the gate.
  Report universal_property_battery(CategoryPtr const&  source,
                                    ExCompletion const& cex,
                                    CategoryPtr const&  target,
                                    std::size_t         gate = default_uniqueness_gate);

  struct CorpusOptions {
    std::size_t max_objects     = 2;
    std::size_t max_morphisms   = 5;
    std::size_t uniqueness_gate = default_uniqueness_gate;
    bool        assert_theorems = true;
  };

  struct CorpusRow {
    std::size_t index      = 0;  // position in the enumeration
    std::size_t objects    = 0;
    std::size_t morphisms  = 0;
    std::size_t ex_objects = 0;
    std::size_t ex_morphisms = 0;
    bool        exact      = false;
    bool        passed     = true;
  };

  struct CorpusSummary {
    std::size_t            categories = 0;
    std::size_t            weakly_lex = 0;
    std::size_t            regular    = 0;
    std::size_t            exact      = 0;
    std::vector<CorpusRow> rows;  // one per weakly lex category
    Report                 report;

    nlohmann::json to_json() const;
    std::string    table() const;
  };

  CorpusSummary run_corpus(CorpusOptions const& options);

}  // namespace poscat

#endif  // POSCAT_THEOREMS_HPP
