#include "tclab/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tclab/parallel.hpp"

namespace tclab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::vector<Observable> builtin_observables() {
  return {
      {"f1_sin_u1",
       [](const FlowSpec&, const FlowSpec&, const ProductPoint& p) {
         return std::sin(kTwoPi * p.x1.base.x);
       }},
      {"f1_cos_u2",
       [](const FlowSpec&, const FlowSpec&, const ProductPoint& p) {
         return std::cos(kTwoPi * p.x1.base.y);
       }},
      {"f1_sin_roof",
       [](const FlowSpec& s1, const FlowSpec&, const ProductPoint& p) {
         return std::sin(kTwoPi * p.x1.tau / s1.roof(p.x1.base));
       }},
      {"f2_sin_u1",
       [](const FlowSpec&, const FlowSpec&, const ProductPoint& p) {
         return std::sin(kTwoPi * p.x2.base.x);
       }},
      {"f2_cos_u2",
       [](const FlowSpec&, const FlowSpec&, const ProductPoint& p) {
         return std::cos(kTwoPi * p.x2.base.y);
       }},
      {"f2_sin_roof",
       [](const FlowSpec&, const FlowSpec& s2, const ProductPoint& p) {
         return std::sin(kTwoPi * p.x2.tau / s2.roof(p.x2.base));
       }},
      {"joint_sin_sum",
       [](const FlowSpec&, const FlowSpec&, const ProductPoint& p) {
         return std::sin(kTwoPi * (p.x1.base.y + p.x2.base.y));
       }},
  };
}

Observable find_observable(const std::string& name) {
  for (auto& obs : builtin_observables())
    if (obs.name == name) return obs;
  throw std::invalid_argument("unknown observable: " + name);
}

std::vector<std::vector<double>> line_birkhoff_multi(const TimeChangedAction& tca, const Vec2& ell,
                                                     const std::vector<Observable>& observables,
                                                     const ProductPoint& x,
                                                     const std::vector<double>& checkpoints,
                                                     double quad_step) {
  const std::size_t m = observables.size();
  const double T = checkpoints.empty() ? 0.0 : checkpoints.back();
  std::vector<std::vector<double>> out(checkpoints.size(), std::vector<double>(m, 0.0));
  if (T <= 0.0) return out;

  // Simpson nodes: even node count up to each checkpoint.
  int n = static_cast<int>(std::ceil(T / quad_step));
  n += n % 2;
  const double dt = T / n;
  std::vector<int> cp_index(checkpoints.size());
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    int k = static_cast<int>(std::llround(checkpoints[c] / dt));
    k += k % 2;
    cp_index[c] = std::min(k, n);
  }

  std::vector<double> first(m), last(m), sum_odd(m, 0.0), sum_even(m, 0.0);
  ProductPoint cur = x;
  for (std::size_t o = 0; o < m; ++o)
    first[o] = last[o] = observables[o].eval(tca.spec1, tca.spec2, cur);

  std::size_t next_cp = 0;
  while (next_cp < checkpoints.size() && cp_index[next_cp] == 0) ++next_cp;
  const Vec2 step_vec = ell * dt;
  for (int i = 1; i <= n; ++i) {
    cur = act(tca, step_vec, cur);
    for (std::size_t o = 0; o < m; ++o) {
      const double v = observables[o].eval(tca.spec1, tca.spec2, cur);
      last[o] = v;
      if (i % 2 == 1) {
        sum_odd[o] += v;
      } else if (i < n) {
        sum_even[o] += v;
      }
    }
    while (next_cp < checkpoints.size() && cp_index[next_cp] == i) {
      // Simpson over [0, i*dt]; the node at i is the closing endpoint, so it
      // sits in sum_even for interior checkpoints - take it out again.
      for (std::size_t o = 0; o < m; ++o) {
        const double interior_even = sum_even[o] - (i < n ? last[o] : 0.0);
        const double integral =
            dt / 3.0 * (first[o] + 4.0 * sum_odd[o] + 2.0 * interior_even + last[o]);
        out[next_cp][o] = integral / (i * dt);
      }
      ++next_cp;
    }
  }
  return out;
}

double line_birkhoff(const TimeChangedAction& tca, const Vec2& ell, const Observable& f,
                     const ProductPoint& x, double T, double quad_step) {
  return line_birkhoff_multi(tca, ell, {f}, x, {T}, quad_step)[0][0];
}

namespace {

double stddev(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return std::sqrt(var / static_cast<double>(v.size()));
}

}  // namespace

DispersionReport ergodicity_probe(const TimeChangedAction& tca, const LineSpec& line,
                                  double high_threshold, double low_threshold,
                                  double decay_threshold, unsigned threads) {
  if (line.starts.size() < 8)
    throw std::invalid_argument("ergodicity_probe: need at least 8 start points");
  if (std::abs(norm(line.direction) - 1.0) > 1e-9)
    throw std::invalid_argument("ergodicity_probe: line direction must be a unit vector");

  std::vector<double> checkpoints = line.checkpoints;
  if (checkpoints.empty() || checkpoints.back() < line.horizon) checkpoints.push_back(line.horizon);

  const std::size_t n_starts = line.starts.size();
  const std::size_t n_obs = line.observables.size();
  // averages[start][checkpoint][observable]
  std::vector<std::vector<std::vector<double>>> averages(n_starts);
  parallel_for(n_starts, threads, [&](std::size_t s) {
    averages[s] = line_birkhoff_multi(tca, line.direction, line.observables, line.starts[s],
                                      checkpoints, line.quad_step);
  });

  DispersionReport report;
  report.direction = line.direction;
  report.horizon = checkpoints.back();
  report.checkpoints = checkpoints;
  report.aggregate_at.assign(checkpoints.size(), 0.0);

  // Space averages along one long generic full-R^2 orbit.
  const Vec2 generic_dir{0.92387953251128674, 0.38268343236508978};  // pi/8 direction
  const std::vector<double> space_cp{2.0 * report.horizon};
  const auto space_avgs = line_birkhoff_multi(tca, generic_dir, line.observables, line.starts[0],
                                              space_cp, line.quad_step);

  for (std::size_t o = 0; o < n_obs; ++o) {
    ObservableDispersion od;
    od.observable = line.observables[o].name;
    od.space_average = space_avgs[0][o];
    od.dispersion_at.resize(checkpoints.size());
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      std::vector<double> vals(n_starts);
      for (std::size_t s = 0; s < n_starts; ++s) vals[s] = averages[s][c][o];
      od.dispersion_at[c] = stddev(vals);
      if (c + 1 == checkpoints.size()) od.per_start_averages = vals;
    }
    od.dispersion = od.dispersion_at.back();
    report.observables.push_back(std::move(od));
  }

  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    double sum2 = 0.0;
    for (const auto& od : report.observables) sum2 += od.dispersion_at[c] * od.dispersion_at[c];
    report.aggregate_at[c] = n_obs == 0 ? 0.0 : std::sqrt(sum2 / static_cast<double>(n_obs));
  }
  report.aggregate_dispersion = report.aggregate_at.back();

  const bool decayed = report.aggregate_at.size() >= 2 &&
                       report.aggregate_dispersion <=
                           decay_threshold * report.aggregate_at.front();
  if (report.aggregate_dispersion > high_threshold && !decayed) {
    report.verdict = "non-ergodic-line";
  } else if (report.aggregate_dispersion < low_threshold) {
    report.verdict = "consistent-with-ergodic";
  } else {
    report.verdict = "inconclusive";
  }
  return report;
}

TimeChangedAction build_skew_example(const FlowSpec& spec1, const FlowSpec& spec2,
                                     const BumpSpec& bump1, double quadrature_step,
                                     double inv_tolerance) {
  // Factor 2 carries no bump; its orbit data mirrors the factor-1 seeds so the
  // marked product points stay well defined.
  BumpSpec bump2 = make_bump_spec(spec2, 0.0, bump1.tube_radius,
                                  make_orbit(spec2, bump1.plus_orbit.seed),
                                  make_orbit(spec2, bump1.minus_orbit.seed));
  TimeChangedAction tca;
  tca.spec1 = spec1;
  tca.spec2 = spec2;
  tca.cocycle = CocycleSpec{bump1, std::move(bump2), quadrature_step, Coupling::first_factor_only};
  tca.inv_tolerance = inv_tolerance;
  return tca;
}

std::pair<double, double> livsic_periodic_integrals(const FlowSpec& spec, const BumpSpec& bump,
                                                    double quad_step) {
  const SuspensionPoint on_plus = bump.plus_orbit.at_arc_time(0.5 * bump.plus_orbit.roofs[0]);
  const SuspensionPoint on_minus = bump.minus_orbit.at_arc_time(0.5 * bump.minus_orbit.roofs[0]);
  return {theta(spec, bump, bump.plus_orbit.flow_period, on_plus, quad_step),
          theta(spec, bump, bump.minus_orbit.flow_period, on_minus, quad_step)};
}

}  // namespace tclab
