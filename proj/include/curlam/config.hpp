#pragma once

// Strict JSON run configuration: unknown keys anywhere are errors, required
// keys are spelled out per block.

#include <optional>
#include <string>

#include <json.hpp>

#include "curlam/domain.hpp"

namespace curlam::config {

struct SourceCfg {
  bool from_csv = false;
  std::string csv;          // when from_csv
  std::string builtin;      // otherwise
  nlohmann::json params;    // builtin parameter object (may be null)
};

struct MediumCfg {
  double omega = 0;
  cplx eps, mu;
  cplx beta{0, 0};  // absent key means an achiral medium
};

struct NeumannCfg {
  int mesh_level = 3;
  // Optional explicit boundary datum; without it the command manufactures a
  // compatible one from a built-in force-free field.
  std::optional<std::string> phi0_builtin;
  nlohmann::json phi0_params;
};

struct Config {
  Shape shape;
  int n = 0;  // source cells along the longest bounding-box edge
  cplx lambda;
  SourceCfg source;
  int eval_n = 0;
  int eval_margin = 1;
  std::string out_csv;
  std::optional<std::string> out_vtk;
  std::optional<MediumCfg> medium;
  std::optional<NeumannCfg> neumann;
};

Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);

}  // namespace curlam::config
