#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tclab/driver.hpp"
#include "tclab/errors.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int threads = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Run configuration file")->required();
  cmd->add_option("--out", opts.out_dir, "Output directory (overrides [run] out_dir)");
  cmd->add_option("--seed", opts.seed, "Seed override (overrides [run] seed)");
  cmd->add_option("--threads", opts.threads, "Worker thread count (0 = hardware)")
      ->envname("TCLAB_THREADS");
}

tclab::RunConfig load(const CommonOptions& opts) {
  tclab::RunConfig config = tclab::parse_config_file(opts.config_path);
  if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
  if (opts.seed >= 0) config.seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.threads >= 0) config.threads = static_cast<unsigned>(opts.threads);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tclab: numerical verification of time-changed products of Anosov suspension flows"};
  app.require_subcommand(1);

  CommonOptions verify_opts, exponents_opts, ergodic_opts, report_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "Cocycle identity, inversion, group law and epsilon_0 bound suites");
  add_common(verify, verify_opts);
  CLI::App* exponents = app.add_subcommand(
      "exponents", "Exponent fields at the marked points, rank-one and homogeneity verdicts");
  add_common(exponents, exponents_opts);
  CLI::App* ergodic =
      app.add_subcommand("ergodic", "Line-subaction Birkhoff dispersion probes");
  add_common(ergodic, ergodic_opts);
  CLI::App* report =
      app.add_subcommand("report", "Concatenate prior outputs into one summary");
  add_common(report, report_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      tclab::VerificationReport rep;
      const int code = tclab::run_verify(load(verify_opts), &rep);
      for (const auto& c : rep.checks)
        std::cout << c.name << ": " << c.status << " (measured " << tclab::format_double(c.measured)
                  << ", tolerance " << tclab::format_double(c.tolerance) << ", "
                  << tclab::format_double(c.runtime_s) << " s)\n";
      return code;
    }
    if (exponents->parsed()) return tclab::run_exponents(load(exponents_opts));
    if (ergodic->parsed()) return tclab::run_ergodic(load(ergodic_opts));
    if (report->parsed()) {
      std::string table;
      const int code = tclab::run_report(load(report_opts), &table);
      if (code == 2) {
        std::cerr << "report: no prior outputs found in the output directory\n";
      } else {
        std::cout << table;
      }
      return code;
    }
  } catch (const tclab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return tclab::kExitConfigError;
  } catch (const tclab::NonConvergenceError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return tclab::kExitNumericFailure;
  } catch (const tclab::DegenerateDirectionError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return tclab::kExitNumericFailure;
  }
  return tclab::kExitConfigError;
}
