#include "poscat/report.hpp"

#include <algorithm>
#include <sstream>

namespace poscat {

  bool Report::verdict() const {
    return std::ranges::all_of(entries, [](CheckEntry const& e) { return e.passed; });
  }

  void Report::pass(std::string name, nlohmann::json detail) {
    entries.push_back({std::move(name), true, std::move(detail)});
  }

  void Report::fail(std::string name, nlohmann::json witness) {
    entries.push_back({std::move(name), false, std::move(witness)});
  }

  void Report::record(std::string name, Verdict const& v) {
    entries.push_back({std::move(name), v.holds, v.witness});
  }

  void Report::absorb(Report const& other, std::string const& prefix) {
    for (auto const& e : other.entries) {
      entries.push_back({prefix + e.name, e.passed, e.witness});
    }
  }

  std::vector<CheckEntry> Report::failures() const {
    std::vector<CheckEntry> out;
    std::ranges::copy_if(entries, std::back_inserter(out), [](auto const& e) { return !e.passed; });
    return out;
  }

  nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["verdict"] = verdict() ? "pass" : "fail";
    j["seconds"] = seconds;
    j["checks"]  = nlohmann::json::array();
    for (auto const& e : entries) {
      nlohmann::json entry{{"name", e.name}, {"passed", e.passed}};
      if (!e.witness.is_null()) {
        entry[e.passed ? "detail" : "witness"] = e.witness;
      }
      j["checks"].push_back(std::move(entry));
    }
    return j;
  }

  std::string Report::to_text() const {
    std::ostringstream out;
    out << command << ": " << (verdict() ? "PASS" : "FAIL") << '\n';
    for (auto const& e : entries) {
      out << "  [" << (e.passed ? "pass" : "FAIL") << "] " << e.name;
      if (!e.witness.is_null()) {
        out << "  " << e.witness.dump();
      }
      out << '\n';
    }
    return out.str();
  }

  nlohmann::json morphism_json(FinPosCategory const& c, MorphismId f) {
    return c.morphism_name(f);
  }

  nlohmann::json cone_json(FinPosCategory const& c, Cone const& cone) {
    nlohmann::json legs = nlohmann::json::array();
    for (auto leg : cone.legs) {
      legs.push_back(c.morphism_name(leg));
    }
    return {{"apex", c.object_name(cone.apex)}, {"legs", std::move(legs)}};
  }

}  // namespace poscat
