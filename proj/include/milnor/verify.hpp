#pragma once

#include <string>
#include <vector>

#include "milnor/report.hpp"

namespace milnor {

struct VerifyConfig {
  unsigned long long seed = 42;
  int grid = 0;       // 0 = suite default (dirac: 512; laplace: controls the fd step 1/grid)
  double tol = 0.0;   // > 0 replaces every check tolerance in the suite
  double step = 0.0;  // > 0 overrides finite-difference steps where applicable
};

const std::vector<std::string>& verify_suite_names();

/// Runs one named invariant suite (or "all") and returns the report.
Report run_verify(const std::string& suite, const VerifyConfig& config);

}  // namespace milnor
