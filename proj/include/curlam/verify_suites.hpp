#pragma once

// Self-contained verification suites behind `verify`: one suite per library
// module, each a short list of measured checks against pinned bounds, sized
// to run in seconds.

#include <string>
#include <vector>

#include "curlam/tolerances.hpp"

namespace curlam::verify {

struct Check {
  std::string name;
  double measured = 0;
  double bound = 0;
  // Convergence-ratio checks pass when measured >= bound; everything else
  // passes when measured <= bound.
  bool higher_is_better = false;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0;
  bool all_pass() const;
};

// The module suites in canonical order (excluding the "all" alias).
const std::vector<std::string>& suite_names();

// Runs one suite under the given (already profile-scaled) tolerances.
// Unknown names raise ConfigError.
SuiteReport run_suite(const std::string& name, const Tolerances& tol);

}  // namespace curlam::verify
