#pragma once

#include <string>
#include <vector>

namespace milnor {

struct DemoConfig {
  int n = 512;
  unsigned long long seed = 42;
  std::string out_dir = ".";
};

const std::vector<std::string>& demo_names();

/// Runs a named demo, writing CSV data and a JSON summary under out_dir.
/// Returns true when the demo's own sanity thresholds hold.
bool run_demo(const std::string& name, const DemoConfig& config);

}  // namespace milnor
