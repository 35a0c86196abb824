#include "poscat/diagram.hpp"

#include <algorithm>

namespace poscat {

  namespace {

    ObjectId term_target(FinPosCategory const& c, DiagramSpec const& spec, Term const& t) {
      return t.after ? c.cod(*t.after) : spec.vertices[t.vertex];
    }

    MorphismId evaluate(FinPosCategory const& c, Term const& t, std::span<MorphismId const> legs) {
      auto const leg = legs[t.vertex];
      return t.after ? c.compose(*t.after, leg) : leg;
    }

    bool holds(FinPosCategory const& c, Constraint const& k, std::span<MorphismId const> legs) {
      auto const a = evaluate(c, k.lhs, legs);
      auto const b = evaluate(c, k.rhs, legs);
      return k.rel == Comparison::equal ? a == b : c.leq(a, b);
    }

    // Edges rewritten as equality constraints.
    std::vector<Constraint> all_constraints(DiagramSpec const& spec) {
      std::vector<Constraint> out;
      for (auto const& e : spec.edges) {
        out.push_back({Term{e.from, e.label}, Comparison::equal, Term{e.to, std::nullopt}});
      }
      out.insert(out.end(), spec.constraints.begin(), spec.constraints.end());
      return out;
    }

  }  // namespace

  void validate_spec(FinPosCategory const& c, DiagramSpec const& spec) {
    auto const nv = spec.vertices.size();
    for (auto x : spec.vertices) {
      if (index(x) >= c.number_of_objects()) {
        throw SpecInvalid("vertex object out of range");
      }
    }
    auto check_morphism = [&](MorphismId f) {
      if (index(f) >= c.number_of_morphisms()) {
        throw SpecInvalid("morphism out of range");
      }
    };
    for (auto const& e : spec.edges) {
      if (e.from >= nv || e.to >= nv) {
        throw SpecInvalid("edge vertex out of range");
      }
      check_morphism(e.label);
      if (c.dom(e.label) != spec.vertices[e.from] || c.cod(e.label) != spec.vertices[e.to]) {
        throw SpecInvalid("edge label '" + c.morphism_name(e.label)
                          + "' does not match its vertices");
      }
    }
    for (auto const& k : spec.constraints) {
      for (auto const* t : {&k.lhs, &k.rhs}) {
        if (t->vertex >= nv) {
          throw SpecInvalid("constraint vertex out of range");
        }
        if (t->after) {
          check_morphism(*t->after);
          if (c.dom(*t->after) != spec.vertices[t->vertex]) {
            throw SpecInvalid("constraint morphism '" + c.morphism_name(*t->after)
                              + "' does not start at its vertex");
          }
        }
      }
      if (term_target(c, spec, k.lhs) != term_target(c, spec, k.rhs)) {
        throw SpecInvalid("constraint sides end at different objects");
      }
    }
  }

  bool is_cone(FinPosCategory const& c, DiagramSpec const& spec, Cone const& cone) {
    if (cone.legs.size() != spec.vertices.size()) {
      return false;
    }
    for (std::size_t v = 0; v < cone.legs.size(); ++v) {
      if (index(cone.legs[v]) >= c.number_of_morphisms() || c.dom(cone.legs[v]) != cone.apex
          || c.cod(cone.legs[v]) != spec.vertices[v]) {
        return false;
      }
    }
    return std::ranges::all_of(all_constraints(spec), [&](Constraint const& k) {
      return holds(c, k, cone.legs);
    });
  }

  Cone precompose(FinPosCategory const& c, Cone const& cone, MorphismId h) {
    Cone out{c.dom(h), {}};
    out.legs.reserve(cone.legs.size());
    for (auto leg : cone.legs) {
      out.legs.push_back(c.compose(leg, h));
    }
    return out;
  }

  ConeSet::ConeSet(std::size_t arity, std::vector<MorphismId> flat)
      : _arity(arity), _count(arity == 0 ? 1 : 0), _flat(std::move(flat)) {}

  std::optional<std::size_t> ConeSet::find(std::span<MorphismId const> legs) const {
    if (_arity == 0) {
      return std::size_t{0};
    }
    std::size_t lo = 0;
    std::size_t hi = size();
    while (lo < hi) {
      auto const mid = (lo + hi) / 2;
      auto const row = (*this)[mid];
      auto const cmp = std::lexicographical_compare_three_way(
          row.begin(), row.end(), legs.begin(), legs.end());
      if (cmp == 0) {
        return mid;
      }
      if (cmp < 0) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return std::nullopt;
  }

  ConeSet cones_at(FinPosCategory const& c, DiagramSpec const& spec, ObjectId apex) {
    auto const nv = spec.vertices.size();
    if (nv == 0) {
      return ConeSet(0, {});
    }
    // Each constraint is checked once its last vertex is assigned.
    std::vector<std::vector<Constraint>> due(nv);
    for (auto const& k : all_constraints(spec)) {
      due[std::max(k.lhs.vertex, k.rhs.vertex)].push_back(k);
    }
    std::vector<MorphismId> legs(nv);
    std::vector<MorphismId> flat;
    auto rec = [&](auto& self, std::size_t v) -> void {
      if (v == nv) {
        flat.insert(flat.end(), legs.begin(), legs.end());
        return;
      }
      for (auto h : c.hom(apex, spec.vertices[v])) {
        legs[v] = h;
        if (std::ranges::all_of(due[v], [&](Constraint const& k) { return holds(c, k, legs); })) {
          self(self, v + 1);
        }
      }
    };
    rec(rec, 0);
    return ConeSet(nv, std::move(flat));
  }

  std::vector<Cone> cones(FinPosCategory const& c, DiagramSpec const& spec, ObjectId apex) {
    auto const      set = cones_at(c, spec, apex);
    std::vector<Cone> out;
    for (std::size_t i = 0; i < set.size(); ++i) {
      auto const row = set[i];
      out.push_back({apex, {row.begin(), row.end()}});
    }
    return out;
  }

  namespace specs {

    DiagramSpec terminal() {
      return {"terminal", {}, {}, {}};
    }

    DiagramSpec product(ObjectId x, ObjectId y) {
      return {"product", {x, y}, {}, {}};
    }

    DiagramSpec inserter(FinPosCategory const& c, MorphismId f, MorphismId g) {
      if (!c.parallel(f, g)) {
        throw SpecInvalid("inserter of non-parallel morphisms");
      }
      return {"inserter", {c.dom(f)}, {}, {{Term{0, f}, Comparison::less_equal, Term{0, g}}}};
    }

    DiagramSpec comma(FinPosCategory const& c, MorphismId f, MorphismId g) {
      if (c.cod(f) != c.cod(g)) {
        throw SpecInvalid("comma of morphisms with different codomains");
      }
      return {"comma",
              {c.dom(f), c.dom(g)},
              {},
              {{Term{0, f}, Comparison::less_equal, Term{1, g}}}};
    }

    DiagramSpec pullback(FinPosCategory const& c, MorphismId f, MorphismId g) {
      if (c.cod(f) != c.cod(g)) {
        throw SpecInvalid("pullback of morphisms with different codomains");
      }
      return {"pullback", {c.dom(f), c.dom(g)}, {}, {{Term{0, f}, Comparison::equal, Term{1, g}}}};
    }

  }  // namespace specs

}  // namespace poscat
