// poscat - finite poset-enriched categories and their exact completions
//
// Core model: finite categories whose hom-sets are partially ordered and whose
// composition is monotone in both variables.

#ifndef POSCAT_CATEGORY_HPP
#define POSCAT_CATEGORY_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace poscat {

  enum class ObjectId : std::int32_t {};
  enum class MorphismId : std::int32_t {};

  constexpr std::size_t index(ObjectId x) noexcept {
    return static_cast<std::size_t>(x);
  }
  constexpr std::size_t index(MorphismId f) noexcept {
    return static_cast<std::size_t>(f);
  }
  constexpr ObjectId object_id(std::size_t i) noexcept {
    return ObjectId{static_cast<std::int32_t>(i)};
  }
  constexpr MorphismId morphism_id(std::size_t i) noexcept {
    return MorphismId{static_cast<std::int32_t>(i)};
  }

  // Base for every error the library reports through exceptions.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  enum class LawViolation {
    malformed,
    missing_composite,
    non_associative,
    identity_law,
    order_not_partial,
    composition_not_monotone
  };

  std::string_view to_string(LawViolation v) noexcept;

  class ValidationError : public Error {
   public:
    ValidationError(LawViolation kind, std::string witness);

    LawViolation kind() const noexcept {
      return _kind;
    }
    std::string const& witness() const noexcept {
      return _witness;
    }

   private:
    LawViolation _kind;
    std::string  _witness;
  };

  class UnknownObject : public Error {
   public:
    using Error::Error;
  };

  // Integer-indexed candidate tables.  Everything the validator needs, nothing
  // more; names are carried along for reporting and serialization.
  struct CategoryTables {
    struct Composite {
      MorphismId outer;
      MorphismId inner;
      MorphismId result;
    };

    std::vector<std::string> object_names;
    std::vector<std::string> morphism_names;
    std::vector<ObjectId>    dom;
    std::vector<ObjectId>    cod;
    // One entry per object.
    std::vector<MorphismId> identity;
    // Composites of composable pairs; pairs involving an identity may be
    // omitted and are synthesized.
    std::vector<Composite> compose;
    // Generators of the hom order (m1 <= m2); the validator closes them.
    std::vector<std::pair<MorphismId, MorphismId>> order;
  };

  class FinPosCategory {
   public:
    FinPosCategory() = default;

    std::size_t number_of_objects() const noexcept {
      return _object_names.size();
    }
    std::size_t number_of_morphisms() const noexcept {
      return _dom.size();
    }

    ObjectId dom(MorphismId f) const {
      return _dom[index(f)];
    }
    ObjectId cod(MorphismId f) const {
      return _cod[index(f)];
    }
    MorphismId identity(ObjectId x) const {
      return _identity[index(x)];
    }
    bool is_identity(MorphismId f) const {
      return _identity[index(dom(f))] == f;
    }

    bool composable(MorphismId g, MorphismId f) const {
      return _cod[index(f)] == _dom[index(g)];
    }
    // g after f; requires cod f == dom g.
    MorphismId compose(MorphismId g, MorphismId f) const {
      return _compose[_compose_offset[index(g)] + _pos_incoming[index(f)]];
    }

    // Morphisms X -> Y, ascending ids.
    std::span<MorphismId const> hom(ObjectId x, ObjectId y) const {
      auto const& h = _homs[index(x) * number_of_objects() + index(y)];
      return {h.data(), h.size()};
    }
    std::span<MorphismId const> outgoing(ObjectId x) const {
      return {_outgoing[index(x)].data(), _outgoing[index(x)].size()};
    }
    std::span<MorphismId const> incoming(ObjectId y) const {
      return {_incoming[index(y)].data(), _incoming[index(y)].size()};
    }

    // Hom order; false for non-parallel pairs.
    bool leq(MorphismId a, MorphismId b) const;
    bool parallel(MorphismId a, MorphismId b) const {
      return _dom[index(a)] == _dom[index(b)]
             && _cod[index(a)] == _cod[index(b)];
    }

    std::string const& object_name(ObjectId x) const {
      return _object_names[index(x)];
    }
    std::string const& morphism_name(MorphismId f) const {
      return _morphism_names[index(f)];
    }
    std::optional<ObjectId>   find_object(std::string_view name) const;
    std::optional<MorphismId> find_morphism(std::string_view name) const;

    std::vector<ObjectId> objects() const;

    // The closed order as strict pairs a < b, in ascending (a, b) order.
    std::vector<std::pair<MorphismId, MorphismId>> strict_order_pairs() const;

    // Tables reproducing this category exactly (full composition, closed
    // order).
    CategoryTables tables() const;

    friend bool operator==(FinPosCategory const&, FinPosCategory const&);

   private:
    friend FinPosCategory validate_category(CategoryTables const&);

    std::vector<std::string> _object_names;
    std::vector<std::string> _morphism_names;
    std::vector<ObjectId>    _dom;
    std::vector<ObjectId>    _cod;
    std::vector<MorphismId>  _identity;

    std::vector<std::vector<MorphismId>> _homs;
    std::vector<std::vector<MorphismId>> _outgoing;
    std::vector<std::vector<MorphismId>> _incoming;
    std::vector<std::uint32_t>           _pos_in_hom;
    std::vector<std::uint32_t>           _pos_incoming;
    std::vector<std::size_t>             _compose_offset;
    std::vector<MorphismId>              _compose;
    // Per hom-set square bit matrix, row-major, offsets by hom index.
    std::vector<std::size_t>  _leq_offset;
    std::vector<std::uint8_t> _leq;
  };

  using CategoryPtr = std::shared_ptr<FinPosCategory const>;

  // Throws ValidationError naming the first violated law (in the order
  // malformed, missing composite, associativity, identity, partial order,
  // monotonicity) with a witness.
  FinPosCategory validate_category(CategoryTables const& raw);

  // Reverses dom/cod and composition order, keeps the hom order.
  FinPosCategory dual(FinPosCategory const& c);

  // Keeps exactly the morphisms between retained objects, in ascending id
  // order.  Throws UnknownObject.
  FinPosCategory full_subcategory(FinPosCategory const& c,
                                  std::span<ObjectId const> objs);

  // Isomorphism helpers.
  bool is_isomorphism(FinPosCategory const& c, MorphismId f);
  std::optional<MorphismId> inverse(FinPosCategory const& c, MorphismId f);
  std::optional<MorphismId> find_isomorphism(FinPosCategory const& c,
                                             ObjectId               x,
                                             ObjectId               y);

  // Unnamed relabeling data for an isomorphism of categories.
  struct CategoryIsomorphism {
    std::vector<ObjectId>   objects;
    std::vector<MorphismId> morphisms;
  };

  // Searches for an isomorphism of Pos-categories (bijective on objects and
  // morphisms, preserving composition, identities and the order both ways).
  std::optional<CategoryIsomorphism>
  find_category_isomorphism(FinPosCategory const& c, FinPosCategory const& d);

  inline bool isomorphic(FinPosCategory const& c, FinPosCategory const& d) {
    return find_category_isomorphism(c, d).has_value();
  }

}  // namespace poscat

#endif  // POSCAT_CATEGORY_HPP
