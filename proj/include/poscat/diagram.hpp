// poscat - diagram specifications for (weak) limit problems and their cones.

#ifndef POSCAT_DIAGRAM_HPP
#define POSCAT_DIAGRAM_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "poscat/category.hpp"

namespace poscat {

  class SpecInvalid : public Error {
   public:
    using Error::Error;
  };

  // `after` composed with the leg into `vertex`; just the leg when empty.
  struct Term {
    std::size_t               vertex = 0;
    std::optional<MorphismId> after;
  };

  enum class Comparison { equal, less_equal };

  struct Constraint {
    Term     lhs;
    Comparison rel = Comparison::equal;
    Term     rhs;
  };

  // label ∘ leg(from) = leg(to).
  struct Edge {
    std::size_t from  = 0;
    std::size_t to    = 0;
    MorphismId  label = {};
  };

  struct DiagramSpec {
    std::string             name;
    std::vector<ObjectId>   vertices;
    std::vector<Edge>       edges;
    std::vector<Constraint> constraints;
  };

  struct Cone {
    ObjectId                apex = {};
    std::vector<MorphismId> legs;

    friend bool operator==(Cone const&, Cone const&) = default;
  };

  // Throws SpecInvalid when an edge or constraint is ill-typed.
  void validate_spec(FinPosCategory const& c, DiagramSpec const& spec);

  // True iff the legs have the right types and satisfy every edge and
  // constraint.
  bool is_cone(FinPosCategory const& c, DiagramSpec const& spec, Cone const& cone);

  // Legs precomposed with h: A -> apex.
  Cone precompose(FinPosCategory const& c, Cone const& cone, MorphismId h);

  // All cones with apex A, lexicographically by leg ids.
  class ConeSet {
   public:
    ConeSet() = default;
    ConeSet(std::size_t arity, std::vector<MorphismId> flat);

    std::size_t size() const noexcept {
      return _arity == 0 ? _count : _flat.size() / _arity;
    }
    std::size_t arity() const noexcept {
      return _arity;
    }
    std::span<MorphismId const> operator[](std::size_t i) const {
      return {_flat.data() + i * _arity, _arity};
    }
    std::optional<std::size_t> find(std::span<MorphismId const> legs) const;

   private:
    std::size_t             _arity = 0;
    std::size_t             _count = 0;
    std::vector<MorphismId> _flat;
  };

  ConeSet cones_at(FinPosCategory const& c, DiagramSpec const& spec, ObjectId apex);
  std::vector<Cone> cones(FinPosCategory const& c, DiagramSpec const& spec, ObjectId apex);

  // The shapes used throughout.
  namespace specs {
    DiagramSpec terminal();
    DiagramSpec product(ObjectId x, ObjectId y);
    // Legs (e): f∘e <= g∘e.
    DiagramSpec inserter(FinPosCategory const& c, MorphismId f, MorphismId g);
    // Legs (c0, c1): f∘c0 <= g∘c1.
    DiagramSpec comma(FinPosCategory const& c, MorphismId f, MorphismId g);
    // Legs (p0, p1): f∘p0 = g∘p1.
    DiagramSpec pullback(FinPosCategory const& c, MorphismId f, MorphismId g);
  }  // namespace specs

}  // namespace poscat

#endif  // POSCAT_DIAGRAM_HPP
