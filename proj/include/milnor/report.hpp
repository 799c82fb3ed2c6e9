#pragma once

#include <string>
#include <vector>

namespace milnor {

/// One runtime check: the formula it exercises, the measured value, and the
/// tolerance it was held to.
struct ReportEntry {
  std::string check;
  std::string anchor;  // the identity or formula the check would falsify
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
};

struct Report {
  std::string command;
  std::string suite;
  unsigned long long seed = 42;
  std::vector<ReportEntry> entries;

  bool all_pass() const;
  void add(const std::string& check, const std::string& anchor, double value,
           double tolerance, double runtime_ms = 0.0);
};

/// Serialized report. Runtime fields are omitted by default so that equal
/// configurations produce byte-identical files.
std::string to_json(const Report& report, bool include_timings = false);

}  // namespace milnor
