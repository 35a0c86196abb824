#include "poscat/builder.hpp"

#include <array>
#include <unordered_map>

namespace poscat {

  CategoryBuilder& CategoryBuilder::object(std::string name) {
    _objects.push_back(std::move(name));
    return *this;
  }

  CategoryBuilder&
  CategoryBuilder::morphism(std::string name, std::string dom, std::string cod) {
    _morphisms.push_back({std::move(name), std::move(dom), std::move(cod)});
    return *this;
  }

  CategoryBuilder& CategoryBuilder::identity(std::string obj, std::string name) {
    _identities.emplace_back(std::move(obj), std::move(name));
    return *this;
  }

  CategoryBuilder&
  CategoryBuilder::compose(std::string outer, std::string inner, std::string result) {
    _compose.push_back({std::move(outer), std::move(inner), std::move(result)});
    return *this;
  }

  CategoryBuilder& CategoryBuilder::order(std::string lesser, std::string greater) {
    _order.emplace_back(std::move(lesser), std::move(greater));
    return *this;
  }

  CategoryTables CategoryBuilder::tables() const {
    CategoryTables                               t;
    std::unordered_map<std::string, std::size_t> obj;
    std::unordered_map<std::string, std::size_t> mor;
    for (auto const& o : _objects) {
      if (!obj.emplace(o, t.object_names.size()).second) {
        throw ValidationError(LawViolation::malformed, "duplicate object name '" + o + "'");
      }
      t.object_names.push_back(o);
    }
    auto object_of = [&](std::string const& name) {
      auto it = obj.find(name);
      if (it == obj.end()) {
        throw ValidationError(LawViolation::malformed, "unknown object '" + name + "'");
      }
      return object_id(it->second);
    };
    auto add_morphism = [&](std::string const& name, ObjectId d, ObjectId c) {
      if (!mor.emplace(name, t.dom.size()).second) {
        throw ValidationError(LawViolation::malformed,
                              "duplicate morphism name '" + name + "'");
      }
      t.morphism_names.push_back(name);
      t.dom.push_back(d);
      t.cod.push_back(c);
    };
    for (auto const& m : _morphisms) {
      add_morphism(m.name, object_of(m.dom), object_of(m.cod));
    }
    std::vector<std::optional<std::string>> id_name(t.object_names.size());
    for (auto const& [o, name] : _identities) {
      auto const x = object_of(o);
      if (id_name[index(x)] && *id_name[index(x)] != name) {
        throw ValidationError(LawViolation::malformed,
                              "two identities given for '" + o + "'");
      }
      id_name[index(x)] = name;
    }
    t.identity.resize(t.object_names.size());
    for (std::size_t x = 0; x < t.object_names.size(); ++x) {
      auto const name = id_name[x].value_or("id_" + t.object_names[x]);
      auto       it   = mor.find(name);
      if (it == mor.end()) {
        add_morphism(name, object_id(x), object_id(x));
        it = mor.find(name);
      }
      t.identity[x] = morphism_id(it->second);
    }
    auto morphism_of = [&](std::string const& name) {
      auto it = mor.find(name);
      if (it == mor.end()) {
        throw ValidationError(LawViolation::malformed, "unknown morphism '" + name + "'");
      }
      return morphism_id(it->second);
    };
    for (auto const& [g, f, gf] : _compose) {
      t.compose.push_back({morphism_of(g), morphism_of(f), morphism_of(gf)});
    }
    for (auto const& [a, b] : _order) {
      t.order.emplace_back(morphism_of(a), morphism_of(b));
    }
    return t;
  }

  namespace fixtures {

    FinPosCategory one() {
      return CategoryBuilder().object("*").build();
    }

    FinPosCategory arrow() {
      return CategoryBuilder().object("a").object("b").morphism("f", "a", "b").build();
    }

    FinPosCategory idem() {
      return CategoryBuilder()
          .object("x")
          .identity("x", "id")
          .morphism("id", "x", "x")
          .morphism("e", "x", "x")
          .compose("e", "e", "e")
          .order("id", "e")
          .build();
    }

    std::vector<std::string> names() {
      return {"ONE", "ARROW", "IDEM"};
    }

    std::optional<FinPosCategory> by_name(std::string_view name) {
      if (name == "ONE") {
        return one();
      }
      if (name == "ARROW") {
        return arrow();
      }
      if (name == "IDEM") {
        return idem();
      }
      return std::nullopt;
    }

  }  // namespace fixtures

}  // namespace poscat
