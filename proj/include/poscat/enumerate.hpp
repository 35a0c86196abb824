// poscat - exhaustive enumeration of small Pos-categories up to isomorphism.

#ifndef POSCAT_ENUMERATE_HPP
#define POSCAT_ENUMERATE_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "poscat/category.hpp"

namespace poscat {

  class BoundsTooLarge : public Error {
   public:
    using Error::Error;
  };

  struct EnumerationLimits {
    std::size_t max_objects   = 3;
    std::size_t max_morphisms = 6;
  };

  // Every valid category with 1..max_objects objects and at most
  // max_morphisms morphisms (identities included), exactly once per
  // isomorphism class, in canonical labeling and a deterministic order.
  // Objects are named A, B, C; identities id_A, ...; other morphisms f0, f1, ...
  std::vector<FinPosCategory>
  enumerate_categories(std::size_t max_objects,
                       std::size_t max_morphisms,
                       EnumerationLimits const& limits = {});

  void for_each_category(std::size_t                                 max_objects,
                         std::size_t                                 max_morphisms,
                         std::function<void(FinPosCategory&&)> const& visit,
                         EnumerationLimits const&                     limits = {});

  // Lexicographically least encoding of (dom/cod layout, composition table,
  // order relation) over all relabelings.  Equal codes iff isomorphic.
  std::vector<int> canonical_code(FinPosCategory const& c);

}  // namespace poscat

#endif  // POSCAT_ENUMERATE_HPP
