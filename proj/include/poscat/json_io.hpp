// poscat - JSON formats for categories and functors, builtin fixtures, and
// DOT export.

#ifndef POSCAT_JSON_IO_HPP
#define POSCAT_JSON_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "poscat/category.hpp"
#include "poscat/functor.hpp"

namespace poscat {

  // Malformed input: unreadable file, bad JSON, unknown keys, wrong types.
  // Law violations are reported separately as ValidationError.
  class ParseError : public Error {
   public:
    using Error::Error;
  };

  // {"objects":[...], "morphisms":[{"id","dom","cod"}], "identities":{obj: id},
  //  "compose":[[g, f, gf]], "order":[[m1, m2]]}.  Missing identities are
  // synthesized as "id_<obj>".  A "provenance" key is accepted and ignored.
  CategoryTables parse_category_tables(nlohmann::json const& j);
  FinPosCategory parse_category(nlohmann::json const& j);

  // Lists every morphism in id order, composites of non-identity pairs and
  // the strict order pairs, so that parsing reproduces the category exactly.
  nlohmann::json category_to_json(FinPosCategory const& c);

  // "builtin:NAME" or a path to a JSON file.
  CategoryPtr load_category(std::string const& source);
  nlohmann::json read_json_file(std::filesystem::path const& path);

  // {"source": S, "target": T, "objMap": {...}, "morMap": {...}} where S and T
  // are inline categories, "builtin:NAME" or paths relative to base_dir.
  // Identities may be omitted from morMap.
  PosFunctor parse_functor(nlohmann::json const& j, std::filesystem::path const& base_dir = {});
  PosFunctor load_functor(std::string const& path);
  nlohmann::json functor_to_json(PosFunctor const& f);

  // Objects as nodes, non-identity morphisms as edges (identities too with
  // show_identities) and strict order pairs as dashed annotations.
  std::string to_dot(FinPosCategory const& c, bool show_identities = false);

}  // namespace poscat

#endif  // POSCAT_JSON_IO_HPP
