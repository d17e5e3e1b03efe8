// curl-lambda: command-line front end. Subcommands map one-to-one onto the
// runner entry points; this file only parses arguments and maps exceptions
// to exit codes (2 = configuration/usage, 3 = precondition or I/O failure).

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "curlam/errors.hpp"
#include "curlam/runner.hpp"

namespace {

// --threads beats the CURL_LAMBDA_THREADS environment variable; both default
// to 0 (auto).
int resolve_threads(bool flag_given, int flag_value) {
  if (flag_given) return flag_value;
  const char* env = std::getenv("CURL_LAMBDA_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 0)
    throw curlam::ConfigError(
        "CURL_LAMBDA_THREADS must be a non-negative integer");
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical right inverse of curl + lambda and its "
               "applications: metaharmonic conjugates, a Neumann boundary "
               "value problem, and time-harmonic Maxwell systems."};
  app.require_subcommand(1);

  curlam::run::Options opt;
  int threads_flag = 0;
  std::string chiral_arg;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* cfg = sub->add_option("--config", opt.config_path,
                                "JSON run configuration");
    if (needs_config) cfg->required();
    sub->add_option("--out", opt.out_dir,
                    "output directory (default: current)");
    sub->add_option("--threads", threads_flag,
                    "worker threads, 0 = auto (beats CURL_LAMBDA_THREADS)");
    sub->add_option("--tolerance-profile", opt.profile,
                    "strict | default | relaxed")
        ->default_val("default");
  };

  CLI::App* solve = app.add_subcommand(
      "solve-curl", "solve curl w + lambda w = g on the configured domain");
  add_common(solve, true);

  CLI::App* conj = app.add_subcommand(
      "conjugate", "complete a scalar/vector field to a monogenic pair");
  add_common(conj, true);
  conj->add_option("--direction", opt.direction,
                   "from-scalar | from-vector")
      ->required();

  CLI::App* maxw = app.add_subcommand(
      "maxwell", "solve the time-harmonic Maxwell system (achiral medium)");
  add_common(maxw, true);
  CLI::Option* chiral_flag = maxw->add_option(
      "--chiral", chiral_arg,
      "run the chiral solver with this beta (re or re,im), overriding the "
      "configured medium");

  CLI::App* chiral = app.add_subcommand(
      "chiral", "solve the time-harmonic Maxwell system in a chiral medium");
  add_common(chiral, true);

  CLI::App* neum = app.add_subcommand(
      "neumann", "solve the Neumann boundary value problem on the ball");
  add_common(neum, true);

  CLI::App* verify = app.add_subcommand(
      "verify", "run the built-in verification suites");
  add_common(verify, false);
  verify->add_option("--suite", opt.suite,
                     "module suite name or \"all\"")
      ->default_val("all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands()[0];
    opt.threads = resolve_threads(sub->count("--threads") > 0, threads_flag);
    if (chiral_flag->count() > 0) {
      // "re" or "re,im"
      double re = 0, im = 0;
      auto comma = chiral_arg.find(',');
      try {
        re = std::stod(chiral_arg.substr(0, comma));
        if (comma != std::string::npos)
          im = std::stod(chiral_arg.substr(comma + 1));
      } catch (const std::exception&) {
        throw curlam::ConfigError("--chiral expects a number or re,im pair");
      }
      opt.chiral_beta = curlam::cplx(re, im);
    }

    if (sub == solve) return curlam::run::cmd_solve_curl(opt);
    if (sub == conj) return curlam::run::cmd_conjugate(opt);
    if (sub == maxw) return curlam::run::cmd_maxwell(opt);
    if (sub == chiral) return curlam::run::cmd_chiral(opt);
    if (sub == neum) return curlam::run::cmd_neumann(opt);
    if (sub == verify) return curlam::run::cmd_verify(opt);
    std::fprintf(stderr, "error: no subcommand selected\n");
    return 2;
  } catch (const curlam::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const curlam::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
