#include "curlam/builtin_fields.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "curlam/errors.hpp"
#include "curlam/force_free.hpp"

namespace curlam::builtins {

namespace {

using nlohmann::json;

void check_params(const json& params, const std::string& name,
                  std::initializer_list<const char*> allowed) {
  if (params.is_null()) return;
  if (!params.is_object())
    throw ConfigError("source params for '" + name + "' must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = params.begin(); it != params.end(); ++it)
    if (!ok.count(it.key()))
      throw ConfigError("unknown source param '" + it.key() + "' for builtin '" +
                        name + "'");
}

double number_or(const json& params, const char* key, double dflt) {
  if (params.is_null() || !params.contains(key)) return dflt;
  const json& v = params.at(key);
  if (!v.is_number()) throw ConfigError(std::string("source param '") + key + "' must be a number");
  return v.get<double>();
}

int int_or(const json& params, const char* key, int dflt) {
  if (params.is_null() || !params.contains(key)) return dflt;
  const json& v = params.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("source param '") + key + "' must be an integer");
  return v.get<int>();
}

Pt pt_or(const json& params, const char* key, Pt dflt) {
  if (params.is_null() || !params.contains(key)) return dflt;
  const json& v = params.at(key);
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
      !v[2].is_number())
    throw ConfigError(std::string("source param '") + key +
                      "' must be an array of 3 numbers");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

}  // namespace

AnalyticField make(const std::string& name, const json& params, cplx lambda) {
  if (name == "constant") {
    check_params(params, name, {"value"});
    Biquaternion w{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(0, 0)};
    if (!params.is_null() && params.contains("value")) {
      const json& v = params.at("value");
      if (!v.is_array() || v.size() != 8)
        throw ConfigError("source param 'value' must be an array of 8 numbers "
                          "(re/im per component)");
      for (const json& e : v)
        if (!e.is_number()) throw ConfigError("source param 'value' must hold numbers");
      w = {cplx(v[0].get<double>(), v[1].get<double>()),
           cplx(v[2].get<double>(), v[3].get<double>()),
           cplx(v[4].get<double>(), v[5].get<double>()),
           cplx(v[6].get<double>(), v[7].get<double>())};
    }
    return {FieldKind::full, [w](Pt) { return w; }};
  }

  if (name == "gaussian-scalar") {
    check_params(params, name, {"sigma"});
    const double s = number_or(params, "sigma", 0.5);
    if (!(s > 0)) throw ConfigError("source param 'sigma' must be positive");
    const double inv = 1.0 / (s * s);
    return {FieldKind::scalar, [inv](Pt p) {
              return embed(cplx(std::exp(-dot(p, p) * inv), 0), Vec3c{});
            }};
  }

  if (name == "gaussian-vector") {
    check_params(params, name, {"sigma", "dir"});
    const double s = number_or(params, "sigma", 0.5);
    if (!(s > 0)) throw ConfigError("source param 'sigma' must be positive");
    const Pt dir = pt_or(params, "dir", {1, 0, 0});
    const double inv = 1.0 / (s * s);
    return {FieldKind::vector, [inv, dir](Pt p) {
              const double a = std::exp(-dot(p, p) * inv);
              return embed(cplx(0, 0), to_vec3c(a * dir));
            }};
  }

  if (name == "bump-vector") {
    check_params(params, name, {"radius", "dir"});
    const double R = number_or(params, "radius", 0.8);
    if (!(R > 0)) throw ConfigError("source param 'radius' must be positive");
    const Pt dir = pt_or(params, "dir", {0, 0, 1});
    return {FieldKind::vector, [R, dir](Pt p) {
              const double q = dot(p, p) / (R * R);
              double a = 0;
              // exp(1 - 1/(1-q)): smooth, identically zero outside |x| = R.
              if (q < 1) a = std::exp(1.0 - 1.0 / (1.0 - q));
              return embed(cplx(0, 0), to_vec3c(a * dir));
            }};
  }

  if (name == "trig-full") {
    check_params(params, name, {});
    return {FieldKind::full, [](Pt p) {
              return Biquaternion{
                  cplx(std::sin(p.x) * std::cos(p.y), 0.3 * std::sin(p.z)),
                  cplx(std::cos(p.y + 0.5 * p.z), 0),
                  cplx(std::sin(0.7 * p.x + p.z), -0.2 * std::cos(p.x)),
                  cplx(std::cos(0.4 * p.x) * std::sin(p.y), 0)};
            }};
  }

  if (name == "beltrami-shear") {
    check_params(params, name, {"axis", "phase"});
    const int axis = int_or(params, "axis", 2);
    if (axis < 0 || axis > 2) throw ConfigError("source param 'axis' must be 0, 1 or 2");
    const double phase = number_or(params, "phase", 0.0);
    return forcefree::beltrami_shear(lambda, axis, phase);
  }

  if (name == "beltrami-plane-wave") {
    check_params(params, name, {"k"});
    Pt k = pt_or(params, "k", {0, 0, 1});
    const double kn = norm(k);
    if (!(kn > 0)) throw ConfigError("source param 'k' must be a nonzero direction");
    return forcefree::beltrami_plane_wave(lambda, (1.0 / kn) * k);
  }

  if (name == "plane-wave-scalar") {
    check_params(params, name, {});
    return {FieldKind::scalar, [lambda](Pt p) {
              const cplx i(0, 1);
              return embed(std::exp(i * lambda * p.z), Vec3c{});
            }};
  }

  throw ConfigError("unknown builtin source '" + name + "'");
}

}  // namespace curlam::builtins
