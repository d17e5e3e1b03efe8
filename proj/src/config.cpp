#include "curlam/config.hpp"

#include <fstream>
#include <set>

#include "curlam/errors.hpp"

namespace curlam::config {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object())
    throw ConfigError(std::string("config block '") + where + "' must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!ok.count(it.key()))
      throw ConfigError(std::string("unknown config key '") + where + "." +
                        it.key() + "'");
}

const json& require(const json& obj, const char* where, const char* key) {
  if (!obj.contains(key))
    throw ConfigError(std::string("missing config key '") + where + "." + key + "'");
  return obj.at(key);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError("config value '" + what + "' must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& what) {
  if (!v.is_number_integer())
    throw ConfigError("config value '" + what + "' must be an integer");
  return v.get<int>();
}

std::string text(const json& v, const std::string& what) {
  if (!v.is_string()) throw ConfigError("config value '" + what + "' must be a string");
  return v.get<std::string>();
}

cplx complex_of(const json& v, const std::string& what) {
  check_keys(v, what.c_str(), {"re", "im"});
  return {number(require(v, what.c_str(), "re"), what + ".re"),
          number(require(v, what.c_str(), "im"), what + ".im")};
}

// Medium constants are written as two-element [re, im] arrays.
cplx complex_pair(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2)
    throw ConfigError("config value '" + what + "' must be an array [re, im]");
  return {number(v[0], what), number(v[1], what)};
}

Pt pt_of(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 3)
    throw ConfigError("config value '" + what + "' must be an array of 3 numbers");
  return {number(v[0], what), number(v[1], what), number(v[2], what)};
}

Shape parse_shape(const json& d) {
  const std::string type = text(require(d, "domain", "type"), "domain.type");
  if (type == "ball") {
    check_keys(d, "domain", {"type", "radius", "n"});
    return Shape::make_ball(number(require(d, "domain", "radius"), "domain.radius"));
  }
  if (type == "box") {
    check_keys(d, "domain", {"type", "lo", "hi", "n"});
    return Shape::make_box(pt_of(require(d, "domain", "lo"), "domain.lo"),
                           pt_of(require(d, "domain", "hi"), "domain.hi"));
  }
  if (type == "ellipsoid") {
    check_keys(d, "domain", {"type", "semiaxes", "n"});
    return Shape::make_ellipsoid(
        pt_of(require(d, "domain", "semiaxes"), "domain.semiaxes"));
  }
  throw ConfigError("unknown domain.type '" + type +
                    "' (expected ball, box or ellipsoid)");
}

SourceCfg parse_source(const json& s) {
  SourceCfg cfg;
  if (s.contains("csv")) {
    check_keys(s, "source", {"csv"});
    cfg.from_csv = true;
    cfg.csv = text(s.at("csv"), "source.csv");
    return cfg;
  }
  check_keys(s, "source", {"builtin", "params"});
  cfg.builtin = text(require(s, "source", "builtin"), "source.builtin");
  if (s.contains("params")) cfg.params = s.at("params");
  return cfg;
}

}  // namespace

Config parse_config(const json& j) {
  check_keys(j, "<root>",
             {"domain", "lambda", "source", "eval", "output", "medium", "neumann"});
  Config cfg;

  const json& d = require(j, "<root>", "domain");
  cfg.shape = parse_shape(d);
  cfg.n = integer(require(d, "domain", "n"), "domain.n");

  cfg.lambda = complex_of(require(j, "<root>", "lambda"), "lambda");
  cfg.source = parse_source(require(j, "<root>", "source"));

  const json& e = require(j, "<root>", "eval");
  check_keys(e, "eval", {"n", "margin"});
  cfg.eval_n = integer(require(e, "eval", "n"), "eval.n");
  cfg.eval_margin = integer(require(e, "eval", "margin"), "eval.margin");

  const json& o = require(j, "<root>", "output");
  check_keys(o, "output", {"csv", "vtk"});
  cfg.out_csv = text(require(o, "output", "csv"), "output.csv");
  if (o.contains("vtk")) cfg.out_vtk = text(o.at("vtk"), "output.vtk");

  if (j.contains("medium")) {
    const json& m = j.at("medium");
    check_keys(m, "medium", {"omega", "eps", "mu", "beta"});
    MediumCfg mc;
    mc.omega = number(require(m, "medium", "omega"), "medium.omega");
    mc.eps = complex_pair(require(m, "medium", "eps"), "medium.eps");
    mc.mu = complex_pair(require(m, "medium", "mu"), "medium.mu");
    if (m.contains("beta")) mc.beta = complex_pair(m.at("beta"), "medium.beta");
    cfg.medium = mc;
  }

  if (j.contains("neumann")) {
    const json& nb = j.at("neumann");
    check_keys(nb, "neumann", {"mesh_level", "phi0"});
    NeumannCfg nc;
    nc.mesh_level = integer(require(nb, "neumann", "mesh_level"), "neumann.mesh_level");
    if (nb.contains("phi0")) {
      const json& p = nb.at("phi0");
      check_keys(p, "neumann.phi0", {"builtin", "params"});
      nc.phi0_builtin = text(require(p, "neumann.phi0", "builtin"),
                             "neumann.phi0.builtin");
      if (p.contains("params")) nc.phi0_params = p.at("params");
    }
    cfg.neumann = nc;
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file '" + path + "'");
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

}  // namespace curlam::config
