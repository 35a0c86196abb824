// poscat - locally monotone functors between finite Pos-categories.

#ifndef POSCAT_FUNCTOR_HPP
#define POSCAT_FUNCTOR_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "poscat/category.hpp"
#include "poscat/report.hpp"

namespace poscat {

  struct PosFunctor {
    CategoryPtr             source;
    CategoryPtr             target;
    std::vector<ObjectId>   objects;    // indexed by source object
    std::vector<MorphismId> morphisms;  // indexed by source morphism

    ObjectId operator()(ObjectId x) const {
      return objects[index(x)];
    }
    MorphismId operator()(MorphismId f) const {
      return morphisms[index(f)];
    }
  };

  enum class FunctorLaw { malformed, dom_cod, identity, composition, monotone };

  std::string_view to_string(FunctorLaw law) noexcept;

  class NotAFunctor : public Error {
   public:
    NotAFunctor(FunctorLaw law, std::string witness);

    FunctorLaw law() const noexcept {
      return _law;
    }
    std::string const& witness() const noexcept {
      return _witness;
    }

   private:
    FunctorLaw  _law;
    std::string _witness;
  };

  // Checks totality, dom/cod, identities, composition and local
  // monotonicity; returns the functor unchanged or throws NotAFunctor.
  PosFunctor validate_functor(PosFunctor raw);

  PosFunctor identity_functor(CategoryPtr c);
  // g after f; requires f.target and g.source to be the same category.
  PosFunctor compose(PosFunctor const& g, PosFunctor const& f);
  // Inclusion of full_subcategory(c, objs) into c.
  PosFunctor inclusion_functor(CategoryPtr c, std::span<ObjectId const> objs);

  // Every hom map is a bijection onto the hom-set between image objects and
  // reflects the order.
  Verdict check_fully_order_faithful(PosFunctor const& f);
  // Every target object is isomorphic to an image object.
  Verdict check_essentially_surjective(PosFunctor const& f);
  // Fully order-faithful and essentially surjective.
  Verdict check_equivalence(PosFunctor const& f);

  // A weak inverse of an equivalence: objects go to a chosen preimage up to
  // isomorphism, morphisms through the chosen isomorphisms.  Throws Error if
  // f is not an equivalence.
  PosFunctor pseudo_inverse(PosFunctor const& f);

  // Components alpha_X: F X -> G X, invertible and natural in X.
  std::optional<std::vector<MorphismId>>
  find_natural_isomorphism(PosFunctor const& f, PosFunctor const& g);

  // All Pos-functors between two categories, in lexicographic order of
  // (object map, morphism map).
  void for_each_functor(CategoryPtr const&                        source,
                        CategoryPtr const&                        target,
                        std::function<void(PosFunctor const&)> const& visit);
  std::vector<PosFunctor> enumerate_functors(CategoryPtr const& source, CategoryPtr const& target);

  nlohmann::json functor_summary(PosFunctor const& f);

}  // namespace poscat

#endif  // POSCAT_FUNCTOR_HPP
