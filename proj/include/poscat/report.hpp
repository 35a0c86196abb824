// poscat - verdict reports shared by every checker.

#ifndef POSCAT_REPORT_HPP
#define POSCAT_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "poscat/category.hpp"
#include "poscat/diagram.hpp"

namespace poscat {

  // A yes/no answer with the evidence behind it.
  struct Verdict {
    bool           holds = true;
    nlohmann::json witness;

    explicit operator bool() const noexcept {
      return holds;
    }
    static Verdict yes(nlohmann::json evidence = {}) {
      return {true, std::move(evidence)};
    }
    static Verdict no(nlohmann::json counterexample) {
      return {false, std::move(counterexample)};
    }
  };

  // One checked property.  Failing entries carry a witness naming the
  // morphisms involved, enough to replay the failure by hand.
  struct CheckEntry {
    std::string    name;
    bool           passed = true;
    nlohmann::json witness;
  };

  struct Report {
    std::string             command;
    std::vector<CheckEntry> entries;
    double                  seconds = 0.0;

    bool verdict() const;
    void pass(std::string name, nlohmann::json detail = {});
    void fail(std::string name, nlohmann::json witness);
    void record(std::string name, Verdict const& v);
    // Appends the other report's entries, prefixing their names.
    void absorb(Report const& other, std::string const& prefix = {});
    // The failing entries only.
    std::vector<CheckEntry> failures() const;

    nlohmann::json to_json() const;
    std::string    to_text() const;
  };

  // Name-based renderings used in witnesses.
  nlohmann::json cone_json(FinPosCategory const& c, Cone const& cone);
  nlohmann::json morphism_json(FinPosCategory const& c, MorphismId f);

}  // namespace poscat

#endif  // POSCAT_REPORT_HPP
