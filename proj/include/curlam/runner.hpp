#pragma once

// Command implementations behind the CLI front end. Each cmd_* loads the
// configuration, runs one pipeline, writes the requested outputs plus a JSON
// run report, and returns the process exit code.

#include <optional>
#include <string>

#include "curlam/domain.hpp"

namespace curlam::run {

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;  // resolved by the front end; 0 = auto
  std::string profile = "default";
  // conjugate: "from-scalar" or "from-vector"
  std::string direction;
  // maxwell --chiral override: forces the chiral solver with this beta
  std::optional<cplx> chiral_beta;
  // verify: suite name or "all"
  std::string suite = "all";
};

int cmd_solve_curl(const Options& opt);
int cmd_conjugate(const Options& opt);
int cmd_maxwell(const Options& opt);
int cmd_chiral(const Options& opt);
int cmd_neumann(const Options& opt);
int cmd_verify(const Options& opt);

}  // namespace curlam::run
