#include "curlam/runner.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <utility>

#include <json.hpp>

#include "curlam/builtin_fields.hpp"
#include "curlam/config.hpp"
#include "curlam/conjugate.hpp"
#include "curlam/errors.hpp"
#include "curlam/fd_ops.hpp"
#include "curlam/force_free.hpp"
#include "curlam/io.hpp"
#include "curlam/maxwell.hpp"
#include "curlam/neumann.hpp"
#include "curlam/parallel.hpp"
#include "curlam/right_inverse.hpp"
#include "curlam/surface_mesh.hpp"
#include "curlam/tolerances.hpp"
#include "curlam/verify_suites.hpp"

namespace curlam::run {
namespace {

using nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string shape_name(Shape::Type t) {
  switch (t) {
    case Shape::Type::ball: return "ball";
    case Shape::Type::box: return "box";
    default: return "ellipsoid";
  }
}

// Everything the field commands share: domain, evaluation lattice, source.
struct Pipeline {
  config::Config cfg;
  grid::VoxelDomain dom;
  PointGrid eval;
  rightinv::SourceField source;
};

rightinv::SourceField source_from_cfg(const grid::VoxelDomain& dom,
                                      const config::Config& cfg) {
  if (cfg.source.from_csv) {
    FieldSample cells = io::read_csv(cfg.source.csv);
    if (cells.size() != dom.size())
      throw ConfigError("source CSV has " + std::to_string(cells.size()) +
                        " rows but the domain has " +
                        std::to_string(dom.size()) + " cells");
    const double slack = 1e-6 * dom.h;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (norm(cells.points[i] - dom.centers[i]) > slack)
        throw ConfigError("source CSV row " + std::to_string(i + 2) +
                          " does not sit on the cell center expected there; "
                          "rows must follow the domain's cell order");
    }
    return rightinv::make_source_interpolated(dom, std::move(cells));
  }
  AnalyticField f =
      builtins::make(cfg.source.builtin, cfg.source.params, cfg.lambda);
  return rightinv::make_source(dom, f);
}

Pipeline make_pipeline(const Options& opt) {
  Pipeline p;
  p.cfg = config::load_config(opt.config_path);
  p.dom = grid::build_domain(p.cfg.shape, p.cfg.n);
  p.eval = grid::interior_eval_grid(p.dom, p.cfg.eval_n, p.cfg.eval_margin);
  p.source = source_from_cfg(p.dom, p.cfg);
  return p;
}

std::string join_out(const Options& opt, const std::string& name) {
  namespace fs = std::filesystem;
  fs::path path = fs::path(name).is_absolute() ? fs::path(name)
                                               : fs::path(opt.out_dir) / name;
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  return path.string();
}

// "fields.csv" + "_E" -> "fields_E.csv"
std::string with_suffix(const std::string& name, const std::string& suffix) {
  auto dot = name.find_last_of('.');
  auto slash = name.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return name + suffix;
  return name.substr(0, dot) + suffix + name.substr(dot);
}

// "fields.csv" -> "fields" (extension only, directory dots untouched)
std::string strip_ext(const std::string& name) {
  auto dot = name.find_last_of('.');
  auto slash = name.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return name;
  return name.substr(0, dot);
}

std::string report_name(const std::string& csv_name) {
  return strip_ext(csv_name) + "_report.json";
}

void write_report(const Options& opt, const std::string& csv_name,
                  const json& body) {
  std::string path = join_out(opt, report_name(csv_name));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open report file " + path);
  out << body.dump(2) << "\n";
  if (!out) throw IoError("failed writing report file " + path);
}

// Restriction of a lattice sample to a sub-lattice of the same spacing
// (every node of `sub` must be present in `s`).
FieldSample restrict_to(const FieldSample& s, const PointGrid& sub) {
  FieldSample out;
  out.kind = s.kind;
  out.points = sub.points;
  out.grid = sub;
  out.values.resize(sub.size());
  for (std::size_t r = 0; r < sub.size(); ++r) {
    const auto& c = sub.ijk[r];
    int row = s.grid->row(c[0], c[1], c[2]);
    if (row < 0) throw Error("restriction target is not a sub-lattice");
    out.values[r] = s.values[row];
  }
  return out;
}

FieldSample scaled_copy(const FieldSample& s, cplx factor) {
  FieldSample out = s;
  for (auto& v : out.values) v = factor * v;
  return out;
}

json domain_json(const Pipeline& p) {
  return json{{"type", shape_name(p.cfg.shape.type)},
              {"n", p.cfg.n},
              {"cells", p.dom.size()},
              {"h", p.dom.h}};
}

json source_json(const config::Config& cfg) {
  if (cfg.source.from_csv) return json{{"csv", cfg.source.csv}};
  return json{{"builtin", cfg.source.builtin}};
}

json eval_json(const Pipeline& p) {
  return json{{"n", p.cfg.eval_n},
              {"margin", p.cfg.eval_margin},
              {"points", p.eval.size()}};
}

}  // namespace

int cmd_solve_curl(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  set_thread_count(opt.threads);
  Tolerances::profile(opt.profile);  // validates the name
  Pipeline p = make_pipeline(opt);
  const cplx lambda = p.cfg.lambda;

  auto t1 = std::chrono::steady_clock::now();
  FieldSample w = rightinv::r_lambda(p.dom, p.source, lambda, p.eval);
  double solve_s = seconds_since(t1);

  // Residual of the solved equation and the induced divergence relation,
  // both on the twice-eroded lattice where the outer derivative lives.
  FieldSample cw = fd::curl(w);
  FieldSample g_in = grid::sample(
      AnalyticField{FieldKind::vector, p.source.at}, *cw.grid);
  FieldSample lhs = restrict_to(w, *cw.grid);
  for (std::size_t r = 0; r < lhs.size(); ++r)
    lhs.values[r] = cw.values[r] + lambda * lhs.values[r];
  double eq_residual = fd::rel_l2_error(lhs, g_in);

  FieldSample g1 = grid::sample(AnalyticField{FieldKind::vector, p.source.at},
                                *w.grid);
  double div_residual = fd::rel_l2_error(
      fd::divergence(w), scaled_copy(fd::divergence(g1), 1.0 / lambda));

  std::string csv_path = join_out(opt, p.cfg.out_csv);
  io::write_csv(w, csv_path);
  json outputs{{"csv", csv_path}};
  if (p.cfg.out_vtk) {
    std::string vtk_path = join_out(opt, *p.cfg.out_vtk);
    io::write_vtk(w, vtk_path, "curl-lambda solution");
    outputs["vtk"] = vtk_path;
  }

  json report{{"command", "solve-curl"},
              {"lambda", complex_json(lambda)},
              {"domain", domain_json(p)},
              {"source", source_json(p.cfg)},
              {"eval", eval_json(p)},
              {"outputs", outputs},
              {"residuals",
               {{"curl_lambda", eq_residual}, {"divergence", div_residual}}},
              {"timings",
               {{"solve_s", solve_s}, {"total_s", seconds_since(t0)}}}};
  write_report(opt, p.cfg.out_csv, report);
  std::printf("solve-curl: %zu points, residual %.3e, wrote %s\n", w.size(),
              eq_residual, csv_path.c_str());
  return 0;
}

int cmd_conjugate(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  set_thread_count(opt.threads);
  Tolerances tol = Tolerances::profile(opt.profile);
  if (opt.direction != "from-scalar" && opt.direction != "from-vector")
    throw ConfigError("--direction must be from-scalar or from-vector");
  Pipeline p = make_pipeline(opt);
  const cplx lambda = p.cfg.lambda;

  FieldSample in = grid::sample(
      AnalyticField{p.source.cells.kind, p.source.at}, p.eval);
  auto t1 = std::chrono::steady_clock::now();
  FieldSample out_field =
      opt.direction == "from-scalar"
          ? conjugate::from_scalar(in, lambda, tol.precondition)
          : conjugate::from_vector(in, lambda, tol.precondition);
  double solve_s = seconds_since(t1);

  json diagnostics{{"helmholtz", conjugate::helmholtz_residual(in, lambda)}};
  if (opt.direction == "from-vector")
    diagnostics["curlcurl"] = conjugate::curlcurl_residual(in, lambda);

  std::string csv_path = join_out(opt, p.cfg.out_csv);
  io::write_csv(out_field, csv_path);
  json outputs{{"csv", csv_path}};
  if (p.cfg.out_vtk) {
    std::string vtk_path = join_out(opt, *p.cfg.out_vtk);
    io::write_vtk(out_field, vtk_path, "metaharmonic conjugate");
    outputs["vtk"] = vtk_path;
  }

  json report{{"command", "conjugate"},
              {"direction", opt.direction},
              {"lambda", complex_json(lambda)},
              {"domain", domain_json(p)},
              {"source", source_json(p.cfg)},
              {"eval", eval_json(p)},
              {"outputs", outputs},
              {"preconditions", diagnostics},
              {"timings",
               {{"solve_s", solve_s}, {"total_s", seconds_since(t0)}}}};
  write_report(opt, p.cfg.out_csv, report);
  std::printf("conjugate (%s): %zu points, wrote %s\n", opt.direction.c_str(),
              out_field.size(), csv_path.c_str());
  return 0;
}

namespace {

int run_maxwell_family(const Options& opt, bool chiral_mode) {
  auto t0 = std::chrono::steady_clock::now();
  set_thread_count(opt.threads);
  Tolerances tol = Tolerances::profile(opt.profile);
  Pipeline p = make_pipeline(opt);
  if (!p.cfg.medium)
    throw ConfigError("maxwell runs require a \"medium\" block");
  const config::MediumCfg& mc = *p.cfg.medium;

  cplx beta = mc.beta;
  if (opt.chiral_beta) {
    beta = *opt.chiral_beta;
    chiral_mode = true;
  }
  maxwell::MediumParams m =
      maxwell::MediumParams::make(mc.omega, mc.eps, mc.mu, beta);
  if (!chiral_mode && m.beta != cplx(0, 0))
    throw PreconditionError(
        "the medium is chiral (beta != 0); use the chiral command or pass "
        "--chiral");

  auto t1 = std::chrono::steady_clock::now();
  maxwell::EHPair sol =
      chiral_mode
          ? maxwell::solve_chiral(p.dom, p.source, m, p.eval, std::nullopt,
                                  std::nullopt, tol.precondition)
          : maxwell::solve_achiral(p.dom, p.source, m, p.eval, std::nullopt,
                                   std::nullopt, tol.precondition);
  double solve_s = seconds_since(t1);

  maxwell::MaxwellResiduals res =
      chiral_mode ? maxwell::residuals_chiral(sol, p.source, m)
                  : maxwell::residuals_achiral(sol, p.source, m);
  json residuals{{"ampere", res.ampere},
                 {"faraday", res.faraday},
                 {"div_h", res.div_h},
                 {"div_e", res.div_e}};
  if (chiral_mode)
    residuals["beltrami_split"] =
        maxwell::beltrami_split_residual(sol, p.source, m);

  std::string e_csv = join_out(opt, with_suffix(p.cfg.out_csv, "_E"));
  std::string h_csv = join_out(opt, with_suffix(p.cfg.out_csv, "_H"));
  io::write_csv(sol.E, e_csv);
  io::write_csv(sol.H, h_csv);
  json outputs{{"csv_e", e_csv}, {"csv_h", h_csv}};
  if (p.cfg.out_vtk) {
    std::string e_vtk = join_out(opt, with_suffix(*p.cfg.out_vtk, "_E"));
    std::string h_vtk = join_out(opt, with_suffix(*p.cfg.out_vtk, "_H"));
    io::write_vtk(sol.E, e_vtk, "electric field");
    io::write_vtk(sol.H, h_vtk, "magnetic field");
    outputs["vtk_e"] = e_vtk;
    outputs["vtk_h"] = h_vtk;
  }

  json medium{{"omega", mc.omega},
              {"eps", complex_json(mc.eps)},
              {"mu", complex_json(mc.mu)},
              {"beta", complex_json(beta)},
              {"lambda", complex_json(m.lambda)}};
  if (chiral_mode) {
    medium["alpha1"] = complex_json(m.alpha1);
    medium["alpha2"] = complex_json(m.alpha2);
  }

  json report{{"command", chiral_mode ? "chiral" : "maxwell"},
              {"medium", medium},
              {"domain", domain_json(p)},
              {"source", source_json(p.cfg)},
              {"eval", eval_json(p)},
              {"outputs", outputs},
              {"residuals", residuals},
              {"timings",
               {{"solve_s", solve_s}, {"total_s", seconds_since(t0)}}}};
  write_report(opt, p.cfg.out_csv, report);
  std::printf("%s: %zu points, worst residual %.3e, wrote %s and %s\n",
              chiral_mode ? "chiral" : "maxwell", sol.E.size(), res.worst(),
              e_csv.c_str(), h_csv.c_str());
  return 0;
}

}  // namespace

int cmd_maxwell(const Options& opt) { return run_maxwell_family(opt, false); }
int cmd_chiral(const Options& opt) { return run_maxwell_family(opt, true); }

int cmd_neumann(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  set_thread_count(opt.threads);
  Tolerances tol = Tolerances::profile(opt.profile);
  Pipeline p = make_pipeline(opt);
  if (!p.cfg.neumann)
    throw ConfigError("the neumann command requires a \"neumann\" block");
  if (p.cfg.shape.type != Shape::Type::ball)
    throw ConfigError(
        "the neumann command supports ball domains only (the surface mesher "
        "is sphere-only)");
  const config::NeumannCfg& nc = *p.cfg.neumann;
  const cplx lambda = p.cfg.lambda;

  surf::SurfaceMesh mesh =
      surf::make_sphere_mesh(p.cfg.shape.radius, nc.mesh_level);

  // Boundary datum at the centroids: either the configured builtin's normal
  // trace, or one manufactured from an analytic force-free field so the
  // problem is compatible by construction.
  std::vector<cplx> phi0(mesh.size());
  std::optional<AnalyticField> u_exact;
  if (nc.phi0_builtin) {
    AnalyticField f = builtins::make(*nc.phi0_builtin, nc.phi0_params, lambda);
    for (std::size_t t = 0; t < mesh.size(); ++t) {
      Biquaternion v = f.f(mesh.centroids[t]);
      phi0[t] = f.kind == FieldKind::scalar
                    ? v.w0
                    : dot(vec(v), to_vec3c(mesh.normals[t]));
    }
  } else {
    u_exact = forcefree::beltrami_plane_wave(lambda, Pt{0, 0, 1});
    std::vector<cplx> zeros(mesh.size(), cplx(0, 0));
    // boundary_psi0 with phi0 = 0 returns -R[g].n, so R[g].n = -rb.
    std::vector<cplx> rb =
        neumann::boundary_psi0(p.dom, p.source, zeros, lambda, mesh);
    for (std::size_t t = 0; t < mesh.size(); ++t)
      phi0[t] = dot(vec(u_exact->f(mesh.centroids[t])),
                    to_vec3c(mesh.normals[t])) -
                rb[t];
  }

  auto t1 = std::chrono::steady_clock::now();
  neumann::NeumannSolution sol = neumann::solve_neumann(
      p.dom, p.source, phi0, lambda, mesh, p.eval, tol.precondition);
  double solve_s = seconds_since(t1);

  json diagnostics{{"compatibility", sol.diag.compat},
                   {"bie_residual", sol.diag.bie_residual},
                   {"tangential_defect", sol.diag.tangential_defect},
                   {"condition_estimate", sol.diag.condition},
                   {"boundary_residual", sol.diag.bc_residual}};
  if (u_exact) {
    // Manufactured datum: the exact solution R[g] + u_exact is known, so
    // report the recovery error on the evaluation lattice.
    FieldSample r = rightinv::r_lambda(p.dom, p.source, lambda, p.eval);
    FieldSample uex = grid::sample(*u_exact, *r.grid);
    FieldSample w_exact = r;
    for (std::size_t i = 0; i < w_exact.size(); ++i)
      w_exact.values[i] += uex.values[i];
    diagnostics["recovery_error"] = fd::rel_l2_error(sol.w, w_exact);
  }

  std::string csv_path = join_out(opt, p.cfg.out_csv);
  io::write_csv(sol.w, csv_path);
  std::string off_path =
      join_out(opt, strip_ext(p.cfg.out_csv) + "_mesh.off");
  io::write_off(mesh, off_path);
  json outputs{{"csv", csv_path}, {"mesh_off", off_path}};
  if (p.cfg.out_vtk) {
    std::string vtk_path = join_out(opt, *p.cfg.out_vtk);
    io::write_vtk(sol.w, vtk_path, "neumann solution");
    outputs["vtk"] = vtk_path;
  }

  json report{{"command", "neumann"},
              {"lambda", complex_json(lambda)},
              {"domain", domain_json(p)},
              {"source", source_json(p.cfg)},
              {"eval", eval_json(p)},
              {"mesh",
               {{"level", nc.mesh_level},
                {"triangles", mesh.size()},
                {"area", mesh.total_area()}}},
              {"outputs", outputs},
              {"diagnostics", diagnostics},
              {"timings",
               {{"solve_s", solve_s}, {"total_s", seconds_since(t0)}}}};
  write_report(opt, p.cfg.out_csv, report);
  std::printf("neumann: %zu triangles, BIE residual %.3e, wrote %s\n",
              mesh.size(), sol.diag.bie_residual, csv_path.c_str());
  return 0;
}

int cmd_verify(const Options& opt) {
  set_thread_count(opt.threads);
  Tolerances tol = Tolerances::profile(opt.profile);

  std::vector<std::string> suites;
  if (opt.suite == "all") {
    suites = verify::suite_names();
  } else {
    const auto& names = verify::suite_names();
    bool known = false;
    for (const auto& n : names) known = known || n == opt.suite;
    if (!known) throw ConfigError("unknown verify suite \"" + opt.suite + "\"");
    suites.push_back(opt.suite);
  }

  std::printf("%-16s %-40s %13s     %13s  %s\n", "suite", "check", "measured",
              "bound", "status");
  std::printf("%-16s %-40s %13s     %13s  %s\n", "----------------",
              "----------------------------------------", "-------------",
              "-------------", "------");
  int failed = 0, total = 0;
  for (const auto& name : suites) {
    verify::SuiteReport rep = verify::run_suite(name, tol);
    for (const auto& c : rep.checks) {
      ++total;
      if (!c.pass) ++failed;
      std::printf("%-16s %-40s %13.6e  %s %13.6e  %s\n", rep.suite.c_str(),
                  c.name.c_str(), c.measured, c.higher_is_better ? ">=" : "<=",
                  c.bound, c.pass ? "pass" : "FAIL");
    }
    std::fprintf(stderr, "suite %s: %.2f s\n", rep.suite.c_str(), rep.seconds);
  }
  std::printf("verify: %d checks, %d failed\n", total, failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace curlam::run
