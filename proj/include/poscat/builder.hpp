// poscat - name-based construction of categories and the built-in fixtures.

#ifndef POSCAT_BUILDER_HPP
#define POSCAT_BUILDER_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "poscat/category.hpp"

namespace poscat {

  // Mirrors the JSON category format.  Identities not named are synthesized
  // as "id_<obj>".
  class CategoryBuilder {
   public:
    CategoryBuilder& object(std::string name);
    CategoryBuilder& morphism(std::string name, std::string dom, std::string cod);
    CategoryBuilder& identity(std::string obj, std::string name);
    CategoryBuilder& compose(std::string outer, std::string inner, std::string result);
    CategoryBuilder& order(std::string lesser, std::string greater);

    // Resolves names (throws ValidationError{malformed} on unknown names)
    // without checking the laws.
    CategoryTables tables() const;

    FinPosCategory build() const {
      return validate_category(tables());
    }

   private:
    struct Mor {
      std::string name, dom, cod;
    };
    std::vector<std::string>                                       _objects;
    std::vector<Mor>                                               _morphisms;
    std::vector<std::pair<std::string, std::string>>               _identities;
    std::vector<std::array<std::string, 3>>                        _compose;
    std::vector<std::pair<std::string, std::string>>               _order;
  };

  namespace fixtures {
    // One object, only its identity.
    FinPosCategory one();
    // Objects a, b; one non-identity f: a -> b; discrete order.
    FinPosCategory arrow();
    // One object x; morphisms id, e with e∘e = e and id <= e.
    FinPosCategory idem();
    // Addressable from the CLI as builtin:<NAME>.
    std::vector<std::string> names();
    std::optional<FinPosCategory> by_name(std::string_view name);
  }  // namespace fixtures

}  // namespace poscat

#endif  // POSCAT_BUILDER_HPP
