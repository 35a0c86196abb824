#include "poscat/category.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace poscat {

  std::string_view to_string(LawViolation v) noexcept {
    switch (v) {
      case LawViolation::malformed:
        return "Malformed";
      case LawViolation::missing_composite:
        return "MissingComposite";
      case LawViolation::non_associative:
        return "NonAssociative";
      case LawViolation::identity_law:
        return "IdentityLaw";
      case LawViolation::order_not_partial:
        return "OrderNotPartial";
      case LawViolation::composition_not_monotone:
        return "CompositionNotMonotone";
    }
    return "?";
  }

  ValidationError::ValidationError(LawViolation kind, std::string witness)
      : Error(std::string(to_string(kind)) + ": " + witness),
        _kind(kind),
        _witness(std::move(witness)) {}

  namespace {

    constexpr std::int32_t kNone = -1;

    [[noreturn]] void fail(LawViolation kind, std::string witness) {
      throw ValidationError(kind, std::move(witness));
    }

    std::string name_of(CategoryTables const& t, MorphismId f) {
      return t.morphism_names.empty() ? "#" + std::to_string(index(f))
                                      : t.morphism_names[index(f)];
    }

    void check_well_formed(CategoryTables const& t) {
      std::size_t const n = t.object_names.size();
      std::size_t const m = t.dom.size();
      if (t.cod.size() != m || t.morphism_names.size() != m) {
        fail(LawViolation::malformed, "dom/cod/name arrays differ in length");
      }
      if (t.identity.size() != n) {
        fail(LawViolation::malformed, "identity table must have one entry per object");
      }
      {
        std::unordered_set<std::string> seen;
        for (auto const& s : t.object_names) {
          if (!seen.insert(s).second) {
            fail(LawViolation::malformed, "duplicate object name '" + s + "'");
          }
        }
        seen.clear();
        for (auto const& s : t.morphism_names) {
          if (!seen.insert(s).second) {
            fail(LawViolation::malformed, "duplicate morphism name '" + s + "'");
          }
        }
      }
      auto in_obj = [n](ObjectId x) {
        return static_cast<std::int32_t>(x) >= 0 && index(x) < n;
      };
      auto in_mor = [m](MorphismId f) {
        return static_cast<std::int32_t>(f) >= 0 && index(f) < m;
      };
      for (std::size_t f = 0; f < m; ++f) {
        if (!in_obj(t.dom[f]) || !in_obj(t.cod[f])) {
          fail(LawViolation::malformed,
               "morphism '" + t.morphism_names[f] + "' has unknown dom/cod");
        }
      }
      std::vector<bool> used(m, false);
      for (std::size_t x = 0; x < n; ++x) {
        auto const id = t.identity[x];
        if (!in_mor(id) || index(t.dom[index(id)]) != x
            || index(t.cod[index(id)]) != x) {
          fail(LawViolation::malformed,
               "identity of '" + t.object_names[x] + "' is not an endomorphism of it");
        }
        if (used[index(id)]) {
          fail(LawViolation::malformed,
               "morphism '" + name_of(t, id) + "' is the identity of two objects");
        }
        used[index(id)] = true;
      }
      for (auto const& c : t.compose) {
        if (!in_mor(c.outer) || !in_mor(c.inner) || !in_mor(c.result)) {
          fail(LawViolation::malformed, "composite refers to an unknown morphism");
        }
        if (t.cod[index(c.inner)] != t.dom[index(c.outer)]) {
          fail(LawViolation::malformed,
               "composite given for non-composable pair (" + name_of(t, c.outer)
                   + ", " + name_of(t, c.inner) + ")");
        }
        if (t.dom[index(c.result)] != t.dom[index(c.inner)]
            || t.cod[index(c.result)] != t.cod[index(c.outer)]) {
          fail(LawViolation::malformed,
               "composite " + name_of(t, c.outer) + "∘" + name_of(t, c.inner)
                   + " = " + name_of(t, c.result) + " has the wrong type");
        }
      }
      for (auto const& [a, b] : t.order) {
        if (!in_mor(a) || !in_mor(b)) {
          fail(LawViolation::malformed, "order pair refers to an unknown morphism");
        }
      }
    }

  }  // namespace

  FinPosCategory validate_category(CategoryTables const& t) {
    check_well_formed(t);

    FinPosCategory c;
    std::size_t const n = t.object_names.size();
    std::size_t const m = t.dom.size();
    c._object_names   = t.object_names;
    c._morphism_names = t.morphism_names;
    c._dom            = t.dom;
    c._cod            = t.cod;
    c._identity       = t.identity;

    c._homs.assign(n * n, {});
    c._outgoing.assign(n, {});
    c._incoming.assign(n, {});
    c._pos_in_hom.assign(m, 0);
    c._pos_incoming.assign(m, 0);
    for (std::size_t f = 0; f < m; ++f) {
      auto& h = c._homs[index(t.dom[f]) * n + index(t.cod[f])];
      c._pos_in_hom[f] = static_cast<std::uint32_t>(h.size());
      h.push_back(morphism_id(f));
      c._outgoing[index(t.dom[f])].push_back(morphism_id(f));
      auto& in = c._incoming[index(t.cod[f])];
      c._pos_incoming[f] = static_cast<std::uint32_t>(in.size());
      in.push_back(morphism_id(f));
    }
    c._compose_offset.assign(m, 0);
    std::size_t total = 0;
    for (std::size_t g = 0; g < m; ++g) {
      c._compose_offset[g] = total;
      total += c._incoming[index(t.dom[g])].size();
    }
    c._compose.assign(total, MorphismId{kNone});

    auto slot = [&](MorphismId g, MorphismId f) -> MorphismId& {
      return c._compose[c._compose_offset[index(g)] + c._pos_incoming[index(f)]];
    };

    for (auto const& e : t.compose) {
      auto& s = slot(e.outer, e.inner);
      if (s != MorphismId{kNone} && s != e.result) {
        fail(LawViolation::malformed,
             "conflicting composites for (" + name_of(t, e.outer) + ", "
                 + name_of(t, e.inner) + ")");
      }
      s = e.result;
    }
    // Synthesize composites with identities where not given.
    for (std::size_t f = 0; f < m; ++f) {
      auto const fid = morphism_id(f);
      auto&      left = slot(t.identity[index(t.cod[f])], fid);
      if (left == MorphismId{kNone}) {
        left = fid;
      }
      auto& right = slot(fid, t.identity[index(t.dom[f])]);
      if (right == MorphismId{kNone}) {
        right = fid;
      }
    }
    for (std::size_t g = 0; g < m; ++g) {
      for (auto f : c._incoming[index(t.dom[g])]) {
        if (slot(morphism_id(g), f) == MorphismId{kNone}) {
          fail(LawViolation::missing_composite,
               "(" + name_of(t, morphism_id(g)) + ", " + name_of(t, f) + ")");
        }
      }
    }
    for (std::size_t f = 0; f < m; ++f) {
      auto const fid = morphism_id(f);
      for (auto g : c._outgoing[index(t.cod[f])]) {
        auto const gf = c.compose(g, fid);
        for (auto h : c._outgoing[index(t.cod[index(g)])]) {
          auto const lhs = c.compose(h, gf);
          auto const rhs = c.compose(c.compose(h, g), fid);
          if (lhs != rhs) {
            fail(LawViolation::non_associative,
                 "(" + name_of(t, h) + ", " + name_of(t, g) + ", "
                     + name_of(t, fid) + "): h∘(g∘f) = " + name_of(t, lhs)
                     + " but (h∘g)∘f = " + name_of(t, rhs));
          }
        }
      }
    }
    for (std::size_t f = 0; f < m; ++f) {
      auto const fid = morphism_id(f);
      auto const l   = c.compose(t.identity[index(t.cod[f])], fid);
      auto const r   = c.compose(fid, t.identity[index(t.dom[f])]);
      if (l != fid || r != fid) {
        fail(LawViolation::identity_law,
             "(" + name_of(t, fid) + "): id∘f = " + name_of(t, l)
                 + ", f∘id = " + name_of(t, r));
      }
    }

    // Order: reflexive-transitive closure per hom-set, then antisymmetry.
    c._leq_offset.assign(n * n, 0);
    std::size_t leq_total = 0;
    for (std::size_t h = 0; h < n * n; ++h) {
      c._leq_offset[h] = leq_total;
      leq_total += c._homs[h].size() * c._homs[h].size();
    }
    c._leq.assign(leq_total, 0);
    auto hom_of = [&](MorphismId f) {
      return index(t.dom[index(f)]) * n + index(t.cod[index(f)]);
    };
    for (auto const& [a, b] : t.order) {
      if (hom_of(a) != hom_of(b)) {
        fail(LawViolation::order_not_partial,
             "(" + name_of(t, a) + ", " + name_of(t, b) + ") are not parallel");
      }
      auto const h = hom_of(a);
      auto const k = c._homs[h].size();
      c._leq[c._leq_offset[h] + c._pos_in_hom[index(a)] * k
             + c._pos_in_hom[index(b)]] = 1;
    }
    for (std::size_t h = 0; h < n * n; ++h) {
      auto const  k   = c._homs[h].size();
      auto* const rel = c._leq.data() + c._leq_offset[h];
      for (std::size_t i = 0; i < k; ++i) {
        rel[i * k + i] = 1;
      }
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
          if (rel[i * k + j]) {
            for (std::size_t l = 0; l < k; ++l) {
              rel[i * k + l] |= rel[j * k + l];
            }
          }
        }
      }
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          if (rel[i * k + j] && rel[j * k + i]) {
            fail(LawViolation::order_not_partial,
                 "(" + name_of(t, c._homs[h][i]) + ", "
                     + name_of(t, c._homs[h][j])
                     + ") are related both ways but distinct");
          }
        }
      }
    }

    for (std::size_t h = 0; h < n * n; ++h) {
      auto const& members = c._homs[h];
      for (auto a : members) {
        for (auto b : members) {
          if (a == b || !c.leq(a, b)) {
            continue;
          }
          for (auto w : c._outgoing[index(t.cod[index(a)])]) {
            if (!c.leq(c.compose(w, a), c.compose(w, b))) {
              fail(LawViolation::composition_not_monotone,
                   name_of(t, a) + " <= " + name_of(t, b) + " but "
                       + name_of(t, w) + "∘" + name_of(t, a) + " = "
                       + name_of(t, c.compose(w, a)) + " is not <= "
                       + name_of(t, c.compose(w, b)));
            }
          }
          for (auto w : c._incoming[index(t.dom[index(a)])]) {
            if (!c.leq(c.compose(a, w), c.compose(b, w))) {
              fail(LawViolation::composition_not_monotone,
                   name_of(t, a) + " <= " + name_of(t, b) + " but "
                       + name_of(t, a) + "∘" + name_of(t, w) + " = "
                       + name_of(t, c.compose(a, w)) + " is not <= "
                       + name_of(t, c.compose(b, w)));
            }
          }
        }
      }
    }
    return c;
  }

  bool FinPosCategory::leq(MorphismId a, MorphismId b) const {
    if (!parallel(a, b)) {
      return false;
    }
    auto const h = index(dom(a)) * number_of_objects() + index(cod(a));
    auto const k = _homs[h].size();
    return _leq[_leq_offset[h] + _pos_in_hom[index(a)] * k
                + _pos_in_hom[index(b)]]
           != 0;
  }

  std::optional<ObjectId> FinPosCategory::find_object(std::string_view name) const {
    for (std::size_t i = 0; i < _object_names.size(); ++i) {
      if (_object_names[i] == name) {
        return object_id(i);
      }
    }
    return std::nullopt;
  }

  std::optional<MorphismId>
  FinPosCategory::find_morphism(std::string_view name) const {
    for (std::size_t i = 0; i < _morphism_names.size(); ++i) {
      if (_morphism_names[i] == name) {
        return morphism_id(i);
      }
    }
    return std::nullopt;
  }

  std::vector<ObjectId> FinPosCategory::objects() const {
    std::vector<ObjectId> out;
    out.reserve(number_of_objects());
    for (std::size_t i = 0; i < number_of_objects(); ++i) {
      out.push_back(object_id(i));
    }
    return out;
  }

  std::vector<std::pair<MorphismId, MorphismId>>
  FinPosCategory::strict_order_pairs() const {
    std::vector<std::pair<MorphismId, MorphismId>> out;
    for (std::size_t a = 0; a < number_of_morphisms(); ++a) {
      auto const x = morphism_id(a);
      for (auto b : hom(dom(x), cod(x))) {
        if (b != x && leq(x, b)) {
          out.emplace_back(x, b);
        }
      }
    }
    return out;
  }

  CategoryTables FinPosCategory::tables() const {
    CategoryTables t;
    t.object_names   = _object_names;
    t.morphism_names = _morphism_names;
    t.dom            = _dom;
    t.cod            = _cod;
    t.identity       = _identity;
    for (std::size_t g = 0; g < number_of_morphisms(); ++g) {
      auto const gid = morphism_id(g);
      for (auto f : incoming(dom(gid))) {
        t.compose.push_back({gid, f, compose(gid, f)});
      }
    }
    t.order = strict_order_pairs();
    return t;
  }

  bool operator==(FinPosCategory const& a, FinPosCategory const& b) {
    return a._object_names == b._object_names
           && a._morphism_names == b._morphism_names && a._dom == b._dom
           && a._cod == b._cod && a._identity == b._identity
           && a._compose == b._compose && a._leq == b._leq;
  }

  FinPosCategory dual(FinPosCategory const& c) {
    CategoryTables t = c.tables();
    std::swap(t.dom, t.cod);
    for (auto& e : t.compose) {
      std::swap(e.outer, e.inner);
    }
    return validate_category(t);
  }

  FinPosCategory full_subcategory(FinPosCategory const& c,
                                  std::span<ObjectId const> objs) {
    std::vector<std::int32_t> new_obj(c.number_of_objects(), kNone);
    CategoryTables            t;
    for (auto x : objs) {
      if (static_cast<std::int32_t>(x) < 0 || index(x) >= c.number_of_objects()) {
        throw UnknownObject("object #" + std::to_string(static_cast<int>(x))
                            + " is not in the category");
      }
      if (new_obj[index(x)] != kNone) {
        continue;
      }
      new_obj[index(x)] = static_cast<std::int32_t>(t.object_names.size());
      t.object_names.push_back(c.object_name(x));
    }
    std::vector<std::int32_t> new_mor(c.number_of_morphisms(), kNone);
    for (std::size_t f = 0; f < c.number_of_morphisms(); ++f) {
      auto const fid = morphism_id(f);
      auto const d   = new_obj[index(c.dom(fid))];
      auto const e   = new_obj[index(c.cod(fid))];
      if (d == kNone || e == kNone) {
        continue;
      }
      new_mor[f] = static_cast<std::int32_t>(t.dom.size());
      t.dom.push_back(ObjectId{d});
      t.cod.push_back(ObjectId{e});
      t.morphism_names.push_back(c.morphism_name(fid));
    }
    t.identity.resize(t.object_names.size());
    for (std::size_t x = 0; x < c.number_of_objects(); ++x) {
      if (new_obj[x] != kNone) {
        t.identity[static_cast<std::size_t>(new_obj[x])] =
            MorphismId{new_mor[index(c.identity(object_id(x)))]};
      }
    }
    for (std::size_t g = 0; g < c.number_of_morphisms(); ++g) {
      if (new_mor[g] == kNone) {
        continue;
      }
      for (auto f : c.incoming(c.dom(morphism_id(g)))) {
        if (new_mor[index(f)] == kNone) {
          continue;
        }
        t.compose.push_back({MorphismId{new_mor[g]},
                             MorphismId{new_mor[index(f)]},
                             MorphismId{new_mor[index(c.compose(morphism_id(g), f))]}});
      }
    }
    for (auto const& [a, b] : c.strict_order_pairs()) {
      if (new_mor[index(a)] != kNone) {
        t.order.emplace_back(MorphismId{new_mor[index(a)]},
                             MorphismId{new_mor[index(b)]});
      }
    }
    return validate_category(t);
  }

  std::optional<MorphismId> inverse(FinPosCategory const& c, MorphismId f) {
    for (auto g : c.hom(c.cod(f), c.dom(f))) {
      if (c.compose(g, f) == c.identity(c.dom(f))
          && c.compose(f, g) == c.identity(c.cod(f))) {
        return g;
      }
    }
    return std::nullopt;
  }

  bool is_isomorphism(FinPosCategory const& c, MorphismId f) {
    return inverse(c, f).has_value();
  }

  std::optional<MorphismId>
  find_isomorphism(FinPosCategory const& c, ObjectId x, ObjectId y) {
    for (auto f : c.hom(x, y)) {
      if (is_isomorphism(c, f)) {
        return f;
      }
    }
    return std::nullopt;
  }

  namespace {

    // Backtracking search for an isomorphism of categories: objects first,
    // then morphisms hom-set by hom-set.
    class IsoSearch {
     public:
      IsoSearch(FinPosCategory const& c, FinPosCategory const& d)
          : _c(c),
            _d(d),
            _obj(c.number_of_objects(), kNone),
            _obj_used(d.number_of_objects(), false),
            _mor(c.number_of_morphisms(), kNone),
            _mor_used(d.number_of_morphisms(), false) {}

      std::optional<CategoryIsomorphism> run() {
        if (_c.number_of_objects() != _d.number_of_objects()
            || _c.number_of_morphisms() != _d.number_of_morphisms()) {
          return std::nullopt;
        }
        if (!objects(0)) {
          return std::nullopt;
        }
        CategoryIsomorphism iso;
        for (auto x : _obj) {
          iso.objects.push_back(ObjectId{x});
        }
        for (auto f : _mor) {
          iso.morphisms.push_back(MorphismId{f});
        }
        return iso;
      }

     private:
      bool objects(std::size_t x) {
        std::size_t const n = _c.number_of_objects();
        if (x == n) {
          for (std::size_t i = 0; i < n; ++i) {
            _mor[index(_c.identity(object_id(i)))] =
                static_cast<std::int32_t>(index(_d.identity(ObjectId{_obj[i]})));
          }
          _order.clear();
          for (std::size_t f = 0; f < _c.number_of_morphisms(); ++f) {
            if (!_c.is_identity(morphism_id(f))) {
              _order.push_back(morphism_id(f));
            }
          }
          for (std::size_t i = 0; i < n; ++i) {
            _mor_used[index(_d.identity(ObjectId{_obj[i]}))] = true;
          }
          bool const ok = morphisms(0);
          for (std::size_t i = 0; i < n; ++i) {
            _mor_used[index(_d.identity(ObjectId{_obj[i]}))] = false;
          }
          return ok;
        }
        for (std::size_t y = 0; y < n; ++y) {
          if (_obj_used[y]) {
            continue;
          }
          _obj[x]      = static_cast<std::int32_t>(y);
          _obj_used[y] = true;
          if (hom_sizes_match(x) && objects(x + 1)) {
            return true;
          }
          _obj_used[y] = false;
          _obj[x]      = kNone;
        }
        return false;
      }

      bool hom_sizes_match(std::size_t x) const {
        for (std::size_t z = 0; z <= x; ++z) {
          auto const a = object_id(x), b = object_id(z);
          auto const fa = ObjectId{_obj[x]}, fb = ObjectId{_obj[z]};
          if (_c.hom(a, b).size() != _d.hom(fa, fb).size()
              || _c.hom(b, a).size() != _d.hom(fb, fa).size()) {
            return false;
          }
        }
        return true;
      }

      bool consistent(MorphismId f) const {
        auto const ff = MorphismId{_mor[index(f)]};
        // Composites with already-mapped morphisms.
        for (auto g : _c.outgoing(_c.cod(f))) {
          auto const fg = _mor[index(g)];
          auto const gf = _mor[index(_c.compose(g, f))];
          if (fg != kNone && gf != kNone
              && _d.compose(MorphismId{fg}, ff) != MorphismId{gf}) {
            return false;
          }
        }
        for (auto g : _c.incoming(_c.dom(f))) {
          auto const fg = _mor[index(g)];
          auto const fgf = _mor[index(_c.compose(f, g))];
          if (fg != kNone && fgf != kNone
              && _d.compose(ff, MorphismId{fg}) != MorphismId{fgf}) {
            return false;
          }
        }
        for (auto g : _c.hom(_c.dom(f), _c.cod(f))) {
          auto const fg = _mor[index(g)];
          if (fg == kNone) {
            continue;
          }
          if (_c.leq(f, g) != _d.leq(ff, MorphismId{fg})
              || _c.leq(g, f) != _d.leq(MorphismId{fg}, ff)) {
            return false;
          }
        }
        // Composites landing on f.
        for (std::size_t gi = 0; gi < _c.number_of_morphisms(); ++gi) {
          auto const g = morphism_id(gi);
          if (_mor[gi] == kNone) {
            continue;
          }
          for (auto h : _c.incoming(_c.dom(g))) {
            if (_mor[index(h)] == kNone) {
              continue;
            }
            auto const r = _mor[index(_c.compose(g, h))];
            if (r != kNone
                && _d.compose(MorphismId{_mor[gi]}, MorphismId{_mor[index(h)]})
                       != MorphismId{r}) {
              return false;
            }
          }
        }
        return true;
      }

      bool morphisms(std::size_t i) {
        if (i == _order.size()) {
          return true;
        }
        auto const f = _order[i];
        auto const target =
            _d.hom(ObjectId{_obj[index(_c.dom(f))]}, ObjectId{_obj[index(_c.cod(f))]});
        for (auto g : target) {
          if (_mor_used[index(g)]) {
            continue;
          }
          _mor[index(f)]      = static_cast<std::int32_t>(index(g));
          _mor_used[index(g)] = true;
          if (consistent(f) && morphisms(i + 1)) {
            return true;
          }
          _mor_used[index(g)] = false;
          _mor[index(f)]      = kNone;
        }
        return false;
      }

      FinPosCategory const&     _c;
      FinPosCategory const&     _d;
      std::vector<std::int32_t> _obj;
      std::vector<bool>         _obj_used;
      std::vector<std::int32_t> _mor;
      std::vector<bool>         _mor_used;
      std::vector<MorphismId>   _order;
    };

  }  // namespace

  std::optional<CategoryIsomorphism>
  find_category_isomorphism(FinPosCategory const& c, FinPosCategory const& d) {
    return IsoSearch(c, d).run();
  }

}  // namespace poscat
