#include "milnor/report.hpp"

#include <json.hpp>

namespace milnor {

bool Report::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

void Report::add(const std::string& check, const std::string& anchor, double value,
                 double tolerance, double runtime_ms) {
  entries.push_back({check, anchor, value, tolerance, value <= tolerance, runtime_ms});
}

std::string to_json(const Report& report, bool include_timings) {
  nlohmann::json j;
  j["command"] = report.command;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["all_pass"] = report.all_pass();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json je;
    je["check"] = e.check;
    je["anchor"] = e.anchor;
    je["value"] = e.value;
    je["tolerance"] = e.tolerance;
    je["pass"] = e.pass;
    if (include_timings) je["runtime_ms"] = e.runtime_ms;
    j["entries"].push_back(je);
  }
  return j.dump(2) + "\n";
}

}  // namespace milnor
