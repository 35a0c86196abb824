#include "poscat/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "poscat/builder.hpp"

namespace poscat {

  namespace {

    using nlohmann::json;

    void only_keys(json const& j, std::set<std::string> const& allowed, std::string const& where) {
      if (!j.is_object()) {
        throw ParseError(where + ": expected an object");
      }
      for (auto const& [key, _] : j.items()) {
        if (!allowed.contains(key)) {
          throw ParseError(where + ": unknown key '" + key + "'");
        }
      }
    }

    std::string text(json const& j, std::string const& where) {
      if (!j.is_string()) {
        throw ParseError(where + ": expected a string");
      }
      return j.get<std::string>();
    }

    json const& array(json const& j, std::string const& where) {
      if (!j.is_array()) {
        throw ParseError(where + ": expected an array");
      }
      return j;
    }

    // Strings in a fixed-length array.
    std::vector<std::string> tuple(json const& j, std::size_t n, std::string const& where) {
      if (!j.is_array() || j.size() != n) {
        throw ParseError(where + ": expected an array of " + std::to_string(n) + " names");
      }
      std::vector<std::string> out;
      for (auto const& x : j) {
        out.push_back(text(x, where));
      }
      return out;
    }

    std::string quote(std::string const& s) {
      std::string out = "\"";
      for (char ch : s) {
        if (ch == '"' || ch == '\\') {
          out += '\\';
        }
        out += ch;
      }
      return out + "\"";
    }

    CategoryPtr category_from(json const& j, std::filesystem::path const& base_dir) {
      if (j.is_string()) {
        auto const s = j.get<std::string>();
        if (s.starts_with("builtin:") || base_dir.empty()) {
          return load_category(s);
        }
        auto const p = std::filesystem::path(s);
        return load_category(p.is_absolute() ? s : (base_dir / p).string());
      }
      return std::make_shared<FinPosCategory const>(parse_category(j));
    }

  }  // namespace

  CategoryTables parse_category_tables(json const& j) {
    only_keys(j, {"objects", "morphisms", "identities", "compose", "order", "provenance"},
              "category");
    if (!j.contains("objects")) {
      throw ParseError("category: missing key 'objects'");
    }
    CategoryBuilder b;
    for (auto const& o : array(j["objects"], "objects")) {
      b.object(text(o, "objects"));
    }
    if (j.contains("morphisms")) {
      for (auto const& m : array(j["morphisms"], "morphisms")) {
        only_keys(m, {"id", "dom", "cod"}, "morphism");
        if (!m.contains("id") || !m.contains("dom") || !m.contains("cod")) {
          throw ParseError("morphism: expected keys id, dom, cod");
        }
        b.morphism(text(m["id"], "morphism id"), text(m["dom"], "morphism dom"),
                   text(m["cod"], "morphism cod"));
      }
    }
    if (j.contains("identities")) {
      auto const& ids = j["identities"];
      if (!ids.is_object()) {
        throw ParseError("identities: expected an object");
      }
      for (auto const& [obj, name] : ids.items()) {
        b.identity(obj, text(name, "identities"));
      }
    }
    if (j.contains("compose")) {
      for (auto const& c : array(j["compose"], "compose")) {
        auto const t = tuple(c, 3, "compose");
        b.compose(t[0], t[1], t[2]);
      }
    }
    if (j.contains("order")) {
      for (auto const& o : array(j["order"], "order")) {
        auto const t = tuple(o, 2, "order");
        b.order(t[0], t[1]);
      }
    }
    return b.tables();
  }

  FinPosCategory parse_category(json const& j) {
    return validate_category(parse_category_tables(j));
  }

  json category_to_json(FinPosCategory const& c) {
    json objects = json::array();
    json ids     = json::object();
    for (auto x : c.objects()) {
      objects.push_back(c.object_name(x));
      ids[c.object_name(x)] = c.morphism_name(c.identity(x));
    }
    json morphisms = json::array();
    json compose   = json::array();
    for (std::size_t k = 0; k < c.number_of_morphisms(); ++k) {
      auto const f = morphism_id(k);
      morphisms.push_back({{"id", c.morphism_name(f)},
                           {"dom", c.object_name(c.dom(f))},
                           {"cod", c.object_name(c.cod(f))}});
      if (c.is_identity(f)) {
        continue;
      }
      for (auto g : c.outgoing(c.cod(f))) {
        if (!c.is_identity(g)) {
          compose.push_back({c.morphism_name(g), c.morphism_name(f),
                             c.morphism_name(c.compose(g, f))});
        }
      }
    }
    json order = json::array();
    for (auto [a, b] : c.strict_order_pairs()) {
      order.push_back({c.morphism_name(a), c.morphism_name(b)});
    }
    return {{"objects", objects},
            {"morphisms", morphisms},
            {"identities", ids},
            {"compose", compose},
            {"order", order}};
  }

  json read_json_file(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot read " + path.string());
    }
    try {
      return json::parse(in);
    } catch (json::exception const& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }

  CategoryPtr load_category(std::string const& source) {
    if (source.starts_with("builtin:")) {
      auto c = fixtures::by_name(source.substr(8));
      if (!c) {
        throw ParseError("unknown builtin '" + source.substr(8) + "'");
      }
      return std::make_shared<FinPosCategory const>(std::move(*c));
    }
    return std::make_shared<FinPosCategory const>(parse_category(read_json_file(source)));
  }

  PosFunctor parse_functor(json const& j, std::filesystem::path const& base_dir) {
    only_keys(j, {"source", "target", "objMap", "morMap"}, "functor");
    for (auto const* key : {"source", "target", "objMap", "morMap"}) {
      if (!j.contains(key)) {
        throw ParseError(std::string("functor: missing key '") + key + "'");
      }
    }
    PosFunctor f{category_from(j["source"], base_dir), category_from(j["target"], base_dir), {}, {}};
    auto const& s = *f.source;
    auto const& t = *f.target;
    auto const& om = j["objMap"];
    auto const& mm = j["morMap"];
    if (!om.is_object() || !mm.is_object()) {
      throw ParseError("functor: objMap and morMap must be objects");
    }
    for (auto const& [key, _] : om.items()) {
      if (!s.find_object(key)) {
        throw ParseError("objMap: unknown source object '" + key + "'");
      }
    }
    for (auto const& [key, _] : mm.items()) {
      if (!s.find_morphism(key)) {
        throw ParseError("morMap: unknown source morphism '" + key + "'");
      }
    }
    for (auto x : s.objects()) {
      if (!om.contains(s.object_name(x))) {
        throw ParseError("objMap: no image for '" + s.object_name(x) + "'");
      }
      auto const y = t.find_object(text(om[s.object_name(x)], "objMap"));
      if (!y) {
        throw ParseError("objMap: unknown target object for '" + s.object_name(x) + "'");
      }
      f.objects.push_back(*y);
    }
    for (std::size_t k = 0; k < s.number_of_morphisms(); ++k) {
      auto const m    = morphism_id(k);
      auto const name = s.morphism_name(m);
      if (!mm.contains(name)) {
        if (!s.is_identity(m)) {
          throw ParseError("morMap: no image for '" + name + "'");
        }
        f.morphisms.push_back(t.identity(f(s.dom(m))));
        continue;
      }
      auto const g = t.find_morphism(text(mm[name], "morMap"));
      if (!g) {
        throw ParseError("morMap: unknown target morphism for '" + name + "'");
      }
      f.morphisms.push_back(*g);
    }
    return validate_functor(std::move(f));
  }

  PosFunctor load_functor(std::string const& path) {
    return parse_functor(read_json_file(path), std::filesystem::path(path).parent_path());
  }

  json functor_to_json(PosFunctor const& f) {
    auto out      = functor_summary(f);
    out["source"] = category_to_json(*f.source);
    out["target"] = category_to_json(*f.target);
    return out;
  }

  std::string to_dot(FinPosCategory const& c, bool show_identities) {
    std::ostringstream out;
    out << "digraph C {\n";
    for (auto x : c.objects()) {
      out << "  " << quote(c.object_name(x)) << ";\n";
    }
    for (std::size_t k = 0; k < c.number_of_morphisms(); ++k) {
      auto const f = morphism_id(k);
      if (c.is_identity(f) && !show_identities) {
        continue;
      }
      out << "  " << quote(c.object_name(c.dom(f))) << " -> " << quote(c.object_name(c.cod(f)))
          << " [label=" << quote(c.morphism_name(f)) << "];\n";
    }
    for (auto [a, b] : c.strict_order_pairs()) {
      out << "  " << quote(c.object_name(c.dom(a))) << " -> " << quote(c.object_name(c.cod(a)))
          << " [label=" << quote(c.morphism_name(a) + " <= " + c.morphism_name(b))
          << ", style=dashed, arrowhead=none];\n";
    }
    out << "}\n";
    return out.str();
  }

}  // namespace poscat
