// poscat - the exact completion of a weakly lex finite Pos-category.
//
// Objects are pseudocongruences (X; R, r0, r1).  A morphism (X,R) -> (Y,S) is
// a class of morphisms f: X -> Y admitting a lift f̄: R -> S with
// s0∘f̄ = f∘r0 and s1∘f̄ = f∘r1; f ≼ g when some Σ: X -> S has s0∘Σ = f and
// s1∘Σ = g, and classes are the mutual-≼ classes.

#ifndef POSCAT_COMPLETION_HPP
#define POSCAT_COMPLETION_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "poscat/category.hpp"
#include "poscat/functor.hpp"
#include "poscat/regular.hpp"
#include "poscat/report.hpp"

namespace poscat {

  class NotWeaklyLex : public Error {
   public:
    explicit NotWeaklyLex(Report report);
    Report const& report() const noexcept {
      return _report;
    }

   private:
    Report _report;
  };

  class SizeGuardExceeded : public Error {
   public:
    using Error::Error;
  };

  // Raised when one of the explicit constructions disagrees with brute-force
  // search.  Signals a library bug.
  class ConstructionMismatch : public Error {
   public:
    using Error::Error;
  };

  struct SizeGuard {
    std::size_t objects   = 512;
    std::size_t morphisms = 8192;

    // POSCAT_SIZE_GUARD="objects" or "objects,morphisms"; defaults otherwise.
    static SizeGuard from_environment();
  };

  struct Pseudocongruence {
    ObjectId   carrier  = {};  // X
    ObjectId   relation = {};  // R
    MorphismId r0       = {};
    MorphismId r1       = {};

    // a0 <= a1: A -> X factors as (r0∘u, r1∘u).
    struct Reflexivity {
      MorphismId a0, a1, u;
    };
    // a, b: A -> R with r1∘a = r0∘b; r0∘t = r0∘a and r1∘t = r1∘b.
    struct Transitivity {
      MorphismId a, b, t;
    };
    std::vector<Reflexivity>  reflexivity;
    std::vector<Transitivity> transitivity;

    Span span() const {
      return {relation, r0, r1};
    }
  };

  // Both conditions checked over every generalized element; the witness of a
  // failure names the pair that does not factor.
  Verdict check_pseudocongruence(FinPosCategory const& c, Span const& s);
  std::optional<Pseudocongruence> make_pseudocongruence(FinPosCategory const& c, Span const& s);

  // Ordered by (X, R, r0, r1).  Throws NotWeaklyLex.
  std::vector<Pseudocongruence> enumerate_pseudocongruences(FinPosCategory const& c);

  struct ExMorphism {
    ObjectId                source = {};  // object of cat
    ObjectId                target = {};
    MorphismId              representative = {};  // least member, in the base
    MorphismId              lift           = {};  // f̄ for the representative
    std::vector<MorphismId> members;
  };

  // [lesser] <= [greater] in cat, witnessed by Σ on representatives.
  struct OrderWitness {
    MorphismId lesser  = {};
    MorphismId greater = {};
    MorphismId sigma   = {};
  };

  struct ExCompletion {
    CategoryPtr                   base;
    CategoryPtr                   cat;
    std::vector<Pseudocongruence> objects;    // indexed by cat object
    std::vector<ExMorphism>       morphisms;  // indexed by cat morphism
    std::vector<OrderWitness>     order;

    std::optional<ObjectId> find_object(ObjectId x, Span const& s) const;
    ObjectId                object_of(ObjectId x, Span const& s) const;  // throws Error
    // The class of f: X -> Y as a morphism between cat objects i and j.
    std::optional<MorphismId> find_class(ObjectId i, ObjectId j, MorphismId f) const;
    MorphismId                class_of(ObjectId i, ObjectId j, MorphismId f) const;  // throws

    Pseudocongruence const& object(ObjectId i) const {
      return objects[index(i)];
    }
    ExMorphism const& morphism(MorphismId m) const {
      return morphisms[index(m)];
    }

    std::map<std::tuple<ObjectId, MorphismId, MorphismId>, ObjectId> by_span;
    std::map<std::tuple<ObjectId, ObjectId, MorphismId>, MorphismId> by_member;
  };

  // Throws NotWeaklyLex or SizeGuardExceeded.
  ExCompletion build_exact_completion(CategoryPtr c, SizeGuard guard = SizeGuard::from_environment());

  nlohmann::json provenance_json(ExCompletion const& e);

  struct GammaFunctor {
    PosFunctor        functor;  // base -> cat
    std::vector<Span> comma;    // the chosen weak comma I_X, per base object
  };

  // ΓX = (X; I_X) with I_X the canonical weak comma of (1_X, 1_X); Γf = [f].
  // Throws ConstructionMismatch if Γ is not fully order-faithful.
  GammaFunctor gamma(ExCompletion const& e);
  // Same with explicitly chosen weak commas.
  GammaFunctor gamma(ExCompletion const& e, std::vector<Span> const& commas);

  // Every weak comma of (1_X, 1_X), per base object.
  std::vector<std::vector<Span>> identity_comma_choices(FinPosCategory const& c);

  //   ΓR ⇉ ΓX ↠ (X,R)
  //   ↓     ↓      ↓ [f]
  //   ΓS ⇉ ΓY ↠ (Y,S)
  struct PresentationRow {
    ObjectId   top    = {};  // ΓR
    ObjectId   middle = {};  // ΓX
    ObjectId   bottom = {};  // (X,R)
    MorphismId d0     = {};  // Γr0
    MorphismId d1     = {};  // Γr1
    MorphismId q      = {};  // [1_X]
  };

  struct PresentationDiagram {
    MorphismId      morphism = {};
    PresentationRow source;
    PresentationRow target;
    MorphismId      top    = {};  // Γf̄
    MorphismId      middle = {};  // Γf
    Report          checks;
  };

  PresentationDiagram coinserter_presentation(ExCompletion const& e,
                                              GammaFunctor const& g,
                                              MorphismId          f);

  enum class Construction {
    terminal,
    product,
    inserter,
    comma,
    pullback,
    so_ff,
    effective_congruence,
    so_from_identities
  };

  std::string_view to_string(Construction k) noexcept;
  std::vector<Construction> all_constructions();

  // Runs the explicit recipe for every instance of the kind in e.cat and
  // compares the outcome with brute-force search in e.cat.
  Report internal_construction_crosscheck(ExCompletion const& e, Construction kind);

}  // namespace poscat

#endif  // POSCAT_COMPLETION_HPP
