#include "tclab/driver.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>

#include "tclab/errors.hpp"
#include "tclab/parallel.hpp"

namespace tclab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string out_path(const RunConfig& config, const char* file) {
  return (std::filesystem::path(config.out_dir) / file).string();
}

void run_check(VerificationReport& report, const std::string& name,
               const std::function<void(CheckResult&)>& body) {
  CheckResult c;
  c.name = name;
  c.status = "pass";
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const NonConvergenceError& e) {
    c.status = "fail";
    c.note = e.what();
    c.measured = std::nan("");
  } catch (const DegenerateDirectionError& e) {
    c.status = "fail";
    c.note = e.what();
    c.measured = std::nan("");
  }
  c.runtime_s = seconds_since(t0);
  report.checks.push_back(c);
}

}  // namespace

int run_verify(const RunConfig& config, VerificationReport* out_report) {
  const TimeChangedAction tca = build_action(config);
  const unsigned threads = resolve_threads(config);
  const double delta = tca.delta();
  VerificationReport report;

  run_check(report, "contraction_condition", [&](CheckResult& c) {
    c.measured = 2.0 * delta;
    c.tolerance = 1.0;
    if (!(c.measured < c.tolerance)) {
      c.status = "fail";
      c.note = "2*delta must be < 1 for the inversion to contract";
    }
  });

  run_check(report, "delta_budget", [&](CheckResult& c) {
    c.measured = delta;
    c.tolerance = config.verify.delta_budget;
    if (!(c.measured < c.tolerance)) {
      c.status = "fail";
      c.note = "delta exceeds the smallness budget";
    }
  });

  run_check(report, "tube_disjointness", [&](CheckResult& c) {
    c.measured = std::min(min_tube_sample_distance(tca.cocycle.bump1),
                          min_tube_sample_distance(tca.cocycle.bump2));
    c.tolerance = 2.0 * config.cocycle.tube_radius;
    // Open supports are disjoint iff the orbits are >= 2R apart; the default
    // pair sits exactly at 2R.
    if (c.measured < c.tolerance - 1e-12) c.status = "fail";
  });

  run_check(report, "cocycle_identity", [&](CheckResult& c) {
    c.measured = verify_cocycle_identity(tca.spec1, tca.spec2, tca.cocycle,
                                         config.verify.cocycle_samples, config.seed, threads);
    c.tolerance = config.verify.cocycle_tolerance;
    if (!(c.measured <= c.tolerance)) c.status = "fail";
  });

  double epsilon0_ratio = 0.0, inversion_residual = 0.0;
  run_check(report, "epsilon0_ratio", [&](CheckResult& c) {
    std::tie(epsilon0_ratio, inversion_residual) =
        verify_inversion_bounds(tca, config.verify.inversion_samples, config.seed, threads);
    c.measured = epsilon0_ratio;
    c.tolerance = 2.0 * delta;
    if (!(c.measured <= c.tolerance)) c.status = "fail";
  });

  run_check(report, "inversion_residual", [&](CheckResult& c) {
    c.measured = inversion_residual;
    c.tolerance = tca.inv_tolerance;
    if (!(c.measured <= c.tolerance)) c.status = "fail";
  });

  int max_iterations_seen = 0;
  int max_apriori_excess = 0;
  double roundtrip = 0.0;
  run_check(report, "inversion_roundtrip", [&](CheckResult& c) {
    const int n = config.verify.inversion_samples;
    std::vector<double> errs(n, 0.0);
    std::vector<int> iters(n, 0);
    std::vector<int> excess(n, 0);
    parallel_for(n, threads, [&](std::size_t i) {
      Rng rng = Rng(config.seed ^ 0x726f756eULL).fork(i);
      const Vec2 a = random_vec(rng, 5.0);
      const ProductPoint x = random_product_point(tca.spec1, tca.spec2, rng);
      const InversionResult fwd = phi(tca, a, x);
      iters[i] = fwd.iterations;
      excess[i] = fwd.iterations - iteration_bound(tca, norm(a));
      const Vec2 b = beta(tca.spec1, tca.spec2, tca.cocycle, a, x);
      const InversionResult back = phi(tca, b, x);
      errs[i] = norm(back.phi - a);
    });
    for (int i = 0; i < n; ++i) {
      roundtrip = std::max(roundtrip, errs[i]);
      max_iterations_seen = std::max(max_iterations_seen, iters[i]);
      max_apriori_excess = std::max(max_apriori_excess, excess[i]);
    }
    c.measured = roundtrip;
    c.tolerance = config.verify.roundtrip_tolerance;
    if (!(c.measured <= c.tolerance)) c.status = "fail";
  });

  run_check(report, "iteration_cap", [&](CheckResult& c) {
    c.measured = max_iterations_seen;
    c.tolerance = config.verify.iteration_cap;
    if (!(c.measured <= c.tolerance)) c.status = "fail";
  });

  run_check(report, "iteration_apriori_bound", [&](CheckResult& c) {
    c.measured = max_apriori_excess;
    c.tolerance = 0.0;
    if (!(c.measured <= c.tolerance)) {
      c.status = "fail";
      c.note = "iteration count exceeded ceil(log(tol/|a|)/log(2 delta)) + 2";
    }
  });

  run_check(report, "group_law", [&](CheckResult& c) {
    c.measured = verify_group_law(tca, config.verify.group_samples, config.seed, threads);
    c.tolerance = config.verify.group_tolerance;
    if (!(c.measured <= c.tolerance)) c.status = "fail";
  });

  if (tca.cocycle.coupling == Coupling::both) {
    run_check(report, "epsilon0_marked_equality", [&](CheckResult& c) {
      // On the marked orbits beta - id is a rotation-like map of norm exactly
      // delta on unit vectors.
      const MarkedPoints mp = marked_points(tca);
      double worst = 0.0;
      for (const ProductPoint* pt : {&mp.x, &mp.y}) {
        for (const Vec2& a : unit_direction_grid(8)) {
          const Vec2 b = beta(tca.spec1, tca.spec2, tca.cocycle, a, *pt);
          worst = std::max(worst, std::abs(norm(b - a) - delta));
        }
      }
      c.measured = worst;
      c.tolerance = config.verify.marked_equality_tolerance;
      if (!(c.measured <= c.tolerance)) c.status = "fail";
    });
  }

  write_report_csv(out_path(config, "report.csv"), report);
  write_report_json(out_path(config, "report.json"), report, config.seed);
  if (out_report) *out_report = report;
  return report.all_pass() ? kExitPass : kExitCheckFailure;
}

int run_exponents(const RunConfig& config) {
  const TimeChangedAction tca = build_action(config);
  const unsigned threads = resolve_threads(config);
  const auto fields = marked_exponent_fields(tca, config.lyapunov.grid_directions,
                                             config.lyapunov.horizon, threads);

  std::vector<ExponentCsvRow> rows;
  for (const auto& field : fields) {
    for (const auto& pf : field.points) {
      for (std::size_t j = 0; j < field.grid.size(); ++j) {
        const Vec2 a = field.grid[j];
        const double closed = closed_form_exponent(tca, field.label, pf.point_id == "y", a);
        rows.push_back({label_name(field.label), pf.point_id, a.x, a.y, field.horizon,
                        pf.estimates[j], closed, std::abs(pf.estimates[j] - closed)});
      }
    }
  }
  write_exponent_csv(out_path(config, "exponent_field.csv"), rows);

  const double threshold =
      rank_one_threshold(tca, config.lyapunov.rank_one_factor, config.lyapunov.rank_one_floor);
  const RankOneVerdict rank_one = rank_one_verdict(fields, threshold);
  const HomogeneityVerdict homogeneity =
      homogeneity_verdict(fields, config.lyapunov.distinct_tolerance);
  write_verdicts_json(out_path(config, "verdicts.json"), tca, fields, rank_one, homogeneity,
                      config.seed);
  return kExitPass;
}

int run_ergodic(const RunConfig& config) {
  const TimeChangedAction tca = build_action(config);
  const unsigned threads = resolve_threads(config);

  Rng rng(config.seed ^ 0x6572676fULL);
  std::vector<ProductPoint> starts;
  starts.reserve(config.ergodic.starts);
  for (int i = 0; i < config.ergodic.starts; ++i)
    starts.push_back(random_product_point(tca.spec1, tca.spec2, rng));

  std::vector<DispersionReport> reports;
  for (std::size_t li = 0; li < config.ergodic.lines.size(); ++li) {
    LineSpec line;
    line.direction = config.ergodic.lines[li];
    line.horizon = config.ergodic.horizon;
    line.checkpoints = config.ergodic.checkpoints;
    line.starts = starts;
    line.observables = builtin_observables();
    line.quad_step = config.ergodic.quad_step;
    reports.push_back(ergodicity_probe(tca, line, config.ergodic.high_threshold,
                                       config.ergodic.low_threshold,
                                       config.ergodic.decay_threshold, threads));
    const std::string csv = "ergodic_line_" + std::to_string(li) + ".csv";
    write_line_csv(out_path(config, csv.c_str()), reports.back());
  }

  const auto livsic1 = livsic_periodic_integrals(tca.spec1, tca.cocycle.bump1,
                                                 tca.cocycle.quadrature_step);
  const auto livsic2 = livsic_periodic_integrals(tca.spec2, tca.cocycle.bump2,
                                                 tca.cocycle.quadrature_step);
  write_dispersion_json(out_path(config, "dispersion.json"), reports, livsic1, livsic2,
                        config.seed);
  return kExitPass;
}

int run_report(const RunConfig& config, std::string* table) {
  return write_summary(config.out_dir, out_path(config, "summary.json"), table);
}

}  // namespace tclab
