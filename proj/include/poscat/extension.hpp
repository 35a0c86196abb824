// poscat - left covering functors, their extension along Γ, and the
// projective cover theorems.

#ifndef POSCAT_EXTENSION_HPP
#define POSCAT_EXTENSION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "poscat/completion.hpp"
#include "poscat/functor.hpp"
#include "poscat/regular.hpp"
#include "poscat/report.hpp"

namespace poscat {

  class PreconditionFailed : public Error {
   public:
    PreconditionFailed(std::string what, Report report = {});
    Report const& report() const noexcept {
      return _report;
    }

   private:
    Report _report;
  };

  // The target is supposed exact, so a missing coinserter is a library bug.
  class CoinserterMissing : public Error {
   public:
    using Error::Error;
  };

  class DiagramShapeInvalid : public Error {
   public:
    using Error::Error;
  };

  // Every weak terminal, weak binary product and weak inserter of the source
  // (all of them, not one choice per instance) is sent to a cone whose
  // comparison with the strict limit in the target is so.  Throws
  // PreconditionFailed unless the source is weakly lex and the target regular
  // (skipped when check_preconditions is false).
  Report check_left_covering(PosFunctor const& f, bool check_preconditions = true);

  struct ImageCongruence {
    MorphismId        pairing = {};  // ⟨Fr0, Fr1⟩: FR -> FX × FX
    Cone              product;       // the strict product FX × FX
    Factorization     factorization;
    Span              span;  // (middle; π0∘m, π1∘m)
    CongruenceVerdict verdict;
  };

  ImageCongruence image_congruence_check(PosFunctor const& f, Pseudocongruence const& p);

  struct ExtendOptions {
    bool check_preconditions = true;
  };

  struct ExtensionResult {
    PosFunctor fbar;
    // q_(X,R): F X -> F̄(X,R), per completion object.
    std::vector<MorphismId> quotient;
    // F X -> F̄ Γ X, per source object.
    std::vector<MorphismId> natural_iso;
    // Regular-functor contract and the natural isomorphism.
    Report contract;
  };

  // F̄(X,R) is the canonical coinserter of (F r0, F r1); F̄[f] the unique u
  // with u∘q_R = q_S∘F f.  Throws PreconditionFailed (F not left covering or
  // target not exact) or CoinserterMissing.
  ExtensionResult extend_functor(PosFunctor const&   f,
                                 ExCompletion const& cex,
                                 GammaFunctor const& g,
                                 ExtendOptions const& options = {});

  // Preserves the strict terminal, binary products, inserters and
  // so-morphisms.
  Report check_regular_functor(PosFunctor const& g);

  inline constexpr std::size_t default_uniqueness_gate = 4;

  // Enumerates every regular G: C_ex -> E with G∘Γ ≅ F and checks G ≅ F̄.
  // Records a skip when C_ex has more objects than the gate.
  Report check_extension_uniqueness(PosFunctor const&      f,
                                    ExCompletion const&    cex,
                                    GammaFunctor const&    g,
                                    ExtensionResult const& ext,
                                    std::size_t            gate = default_uniqueness_gate);

  //   I  --i-->  X  ==f0,f1==>  Y
  //   |q         |p             |m
  //   I' --i'--> X' ==g0,g1==>  Y'
  // Rows are the canonical inserters; p an effective epi, m ff,
  // g_k∘p = m∘f_k.
  struct LemmaDiagram {
    MorphismId f0 = {}, f1 = {};
    MorphismId g0 = {}, g1 = {};
    MorphismId p = {}, m = {};
  };

  // q is an effective epi and (i, q) is a strict pullback of (p, i').  Throws
  // DiagramShapeInvalid on a malformed diagram.
  Report useful_lemma_check(FinPosCategory const& e, LemmaDiagram const& d);
  std::vector<LemmaDiagram> scan_lemma_diagrams(FinPosCategory const& e);

  // For F: C -> E with C weakly lex, E exact and F left covering: if F is
  // fully order-faithful and every F X is projective, F̄ is fully
  // order-faithful; if moreover the F X cover E, F̄ is an equivalence.
  Report check_extension_equivalence(PosFunctor const& f);
  // Same, for an extension already built.
  Report check_extension_equivalence(PosFunctor const& f, ExtensionResult const& ext);

  // P = full_subcategory(E, cover) is weakly lex and the extension of the
  // inclusion P_ex -> E is an equivalence.  Throws PreconditionFailed unless
  // E is exact and cover is a projective cover.
  Report check_projective_cover_theorem(CategoryPtr e, std::span<ObjectId const> cover);

  struct CoverEquivalence {
    std::optional<PosFunctor> equivalence;  // E -> F
    Report                    report;
  };

  // Exact E and F with isomorphic projective covers are equivalent: the
  // composite E ≃ P_ex ≃ Q_ex ≃ F is built and checked.
  CoverEquivalence check_cover_corollary(CategoryPtr               e,
                                         std::span<ObjectId const> cover_e,
                                         CategoryPtr               f,
                                         std::span<ObjectId const> cover_f);

}  // namespace poscat

#endif  // POSCAT_EXTENSION_HPP
