// poscat - ff and so morphisms, factorizations, congruences, and the
// regularity / exactness / projectivity verdicts.

#ifndef POSCAT_REGULAR_HPP
#define POSCAT_REGULAR_HPP

#include <optional>
#include <vector>

#include "poscat/category.hpp"
#include "poscat/limits.hpp"
#include "poscat/report.hpp"

namespace poscat {

  // Post-composition with m reflects the order on every hom-set.
  Verdict check_ff(FinPosCategory const& c, MorphismId m);

  // For every ff m: X -> Y the square of hom-posets
  //   hom(B, X) -> hom(A, X) x hom(B, Y),  h |-> (h∘e, m∘h)
  // is a pullback: compatible pairs have exactly one mediator and the
  // mediators are ordered exactly when both components are.
  Verdict check_so(FinPosCategory const& c, MorphismId e);

  // Per-morphism flags computed once per category.
  struct MorphismClasses {
    std::vector<bool> ff;
    std::vector<bool> so;
  };
  MorphismClasses classify_morphisms(FinPosCategory const& c);

  struct Factorization {
    MorphismId e      = {};  // so part
    MorphismId m      = {};  // ff part
    ObjectId   middle = {};
  };

  // Least middle object, then least e, then least m.
  std::optional<Factorization> so_ff_factorize(FinPosCategory const& c, MorphismId f);
  std::vector<Factorization>   all_factorizations(FinPosCategory const& c, MorphismId f);

  // A span r0, r1: R -> X.
  struct Span {
    ObjectId   apex = {};
    MorphismId r0   = {};
    MorphismId r1   = {};
  };

  // The flags of a span, each with its counterexample when false.
  struct Relation {
    Span    span;
    Verdict jointly_order_monic;
    Verdict reflexive;
    Verdict order_reflexive;
    Verdict transitive;
    Verdict order_ideal;
  };

  Relation relation_flags(FinPosCategory const& c, Span const& s);

  class NotARelation : public Error {
   public:
    using Error::Error;
  };
  // Raised when the two congruence characterizations disagree.  This would
  // be a bug in the library.
  class DefinitionMismatch : public Error {
   public:
    using Error::Error;
  };

  struct CongruenceVerdict {
    bool    holds = false;
    Verdict reflexive_transitive_ideal;
    Verdict transitive_order_reflexive;

    explicit operator bool() const noexcept {
      return holds;
    }
  };

  // Evaluates both characterizations (reflexive, transitive and an order
  // ideal; transitive and order-reflexive).  Throws NotARelation when the
  // span is not jointly order-monic.
  CongruenceVerdict is_congruence(FinPosCategory const& c, Span const& s);

  // The canonical strict comma f/f.
  std::optional<Span> kernel_congruence(FinPosCategory const& c, MorphismId f);

  // Each span factors through the other (same subobject).
  bool same_subobject(FinPosCategory const& c, Span const& a, Span const& b);

  // Some q out of the carrier whose kernel congruence is the same subobject;
  // the witness names the least such q.
  Verdict is_effective_congruence(FinPosCategory const& c, Span const& s);

  // Every congruence on every object, in (X, R, r0, r1) order.
  std::vector<Span> all_congruences(FinPosCategory const& c);

  // Coinserter of some parallel pair into its domain; the witness names the
  // least such pair.
  Verdict is_effective_epi(FinPosCategory const& c, MorphismId q);

  // Strict terminal, binary products, inserters, commas and pullbacks; every
  // morphism factors as so then ff; so-morphisms are stable under every
  // strict pullback.
  Report check_regular(FinPosCategory const& c);
  // Regular, and every congruence is effective.
  Report check_exact(FinPosCategory const& c);

  // Every so e: A -> B lifts every f: P -> B.
  Verdict check_projective(FinPosCategory const& c, ObjectId p);

  struct CoverVerdict {
    Verdict verdict;
    // For each object, an so-morphism from a listed object.
    std::vector<MorphismId> cover_map;

    explicit operator bool() const noexcept {
      return verdict.holds;
    }
  };
  CoverVerdict check_projective_cover(FinPosCategory const& c, std::span<ObjectId const> objs);

  class NotACover : public Error {
   public:
    using Error::Error;
  };

  enum class LimitFamily { terminal, product, inserter, identity_comma };

  // The full subcategory on objs has every weak limit of the family.
  // Throws NotACover unless objs is a projective cover.
  Report check_weak_limits_in_cover(FinPosCategory const&     c,
                                    std::span<ObjectId const> objs,
                                    LimitFamily               family);

  nlohmann::json span_json(FinPosCategory const& c, Span const& s);

}  // namespace poscat

#endif  // POSCAT_REGULAR_HPP
