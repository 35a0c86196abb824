// poscat - brute-force search for weak and strict limits and coinserters.
//
// Universal properties are decided with generalized elements: a cone L is a
// weak limit when, for every object A, every cone at A is L∘h for some
// h: A -> apex.  Strict limits additionally need h unique and the legs
// jointly order-reflecting.

#ifndef POSCAT_LIMITS_HPP
#define POSCAT_LIMITS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poscat/category.hpp"
#include "poscat/diagram.hpp"
#include "poscat/report.hpp"

namespace poscat {

  enum class LimitKind { weak, strict };

  // The cone with index `cone` among cones_at(test) equals legs∘via.
  struct Factoring {
    ObjectId    test;
    std::size_t cone;
    MorphismId  via;
  };

  struct LimitResult {
    LimitKind   kind = LimitKind::weak;
    Cone        cone;
    std::size_t all_cones = 0;  // cones over the diagram, summed over all apexes
    // One factoring per cone (weak) or the full bijection (strict); only
    // filled when requested.
    std::vector<Factoring> witnesses;
  };

  // Why one candidate cone is not a limit.
  struct Refutation {
    Cone                candidate;
    std::optional<Cone> uncovered;  // a cone that does not factor
    std::string         reason;
  };

  struct LimitOutcome {
    std::optional<LimitResult> limit;
    // Filled when no limit exists: every candidate with its refutation.
    std::vector<Refutation> refutations;

    explicit operator bool() const noexcept {
      return limit.has_value();
    }
    LimitResult const& operator*() const {
      return *limit;
    }
    LimitResult const* operator->() const {
      return &*limit;
    }
  };

  struct SearchOptions {
    bool record_witnesses = false;
  };

  // Canonical choice: least apex id, then lexicographically least legs.
  LimitOutcome search_weak_limit(FinPosCategory const& c,
                                 DiagramSpec const&    spec,
                                 SearchOptions const&  options = {});
  LimitOutcome search_strict_limit(FinPosCategory const& c,
                                   DiagramSpec const&    spec,
                                   SearchOptions const&  options = {});

  std::vector<Cone> all_weak_limits(FinPosCategory const& c, DiagramSpec const& spec);
  std::vector<Cone> all_strict_limits(FinPosCategory const& c, DiagramSpec const& spec);

  bool is_weak_limit(FinPosCategory const& c, DiagramSpec const& spec, Cone const& cone);
  bool is_strict_limit(FinPosCategory const& c, DiagramSpec const& spec, Cone const& cone);

  // Some h: a.apex -> b.apex with b∘h = a.
  std::optional<MorphismId>
  factor_through(FinPosCategory const& c, Cone const& a, Cone const& b);
  // An isomorphism h: a.apex -> b.apex with b∘h = a.
  std::optional<MorphismId>
  cone_isomorphism(FinPosCategory const& c, Cone const& a, Cone const& b);

  LimitOutcome weak_terminal(FinPosCategory const& c);
  LimitOutcome weak_product(FinPosCategory const& c, ObjectId x, ObjectId y);
  LimitOutcome weak_inserter(FinPosCategory const& c, MorphismId f, MorphismId g);
  LimitOutcome weak_comma(FinPosCategory const& c, MorphismId f, MorphismId g);
  LimitOutcome weak_pullback(FinPosCategory const& c, MorphismId f, MorphismId g);

  LimitOutcome strict_terminal(FinPosCategory const& c);
  LimitOutcome strict_product(FinPosCategory const& c, ObjectId x, ObjectId y);
  LimitOutcome strict_inserter(FinPosCategory const& c, MorphismId f, MorphismId g);
  LimitOutcome strict_comma(FinPosCategory const& c, MorphismId f, MorphismId g);
  LimitOutcome strict_pullback(FinPosCategory const& c, MorphismId f, MorphismId g);

  class NotParallel : public Error {
   public:
    using Error::Error;
  };

  struct CoinserterResult {
    MorphismId f = {};
    MorphismId g = {};
    MorphismId q = {};
    // (h, u) with u∘q = h, for every h with h∘f <= h∘g; only when requested.
    std::vector<std::pair<MorphismId, MorphismId>> mediators;
  };

  struct CoinserterOutcome {
    std::optional<CoinserterResult> coinserter;
    // Every candidate q with q∘f <= q∘g and why it fails.
    std::vector<std::pair<MorphismId, std::string>> refutations;

    explicit operator bool() const noexcept {
      return coinserter.has_value();
    }
    CoinserterResult const& operator*() const {
      return *coinserter;
    }
    CoinserterResult const* operator->() const {
      return &*coinserter;
    }
  };

  // Canonical choice: least codomain id, then least q.  Throws NotParallel.
  CoinserterOutcome search_coinserter(FinPosCategory const& c,
                                      MorphismId            f,
                                      MorphismId            g,
                                      SearchOptions const&  options = {});
  bool is_coinserter(FinPosCategory const& c, MorphismId f, MorphismId g, MorphismId q);
  std::vector<MorphismId> all_coinserters(FinPosCategory const& c, MorphismId f, MorphismId g);

  // Weak terminal, all weak binary products, all weak inserters and all weak
  // commas of identity pairs.  Failing entries list, for the missing
  // instance, every candidate cone with a cone it fails to cover.
  Report check_weakly_lex(FinPosCategory const& c);

  nlohmann::json refutations_json(FinPosCategory const& c, std::vector<Refutation> const& r);

}  // namespace poscat

#endif  // POSCAT_LIMITS_HPP
