#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tclab/lyapunov.hpp"
#include "tclab/timechange.hpp"

namespace tclab {

// Named scalar function on X. The built-ins are smooth trigonometric
// functions of the torus coordinates and roof phase of each factor, mean-zero
// for the default roof; their explicit space averages calibrate the probe.
struct Observable {
  std::string name;
  std::function<double(const FlowSpec&, const FlowSpec&, const ProductPoint&)> eval;
};

std::vector<Observable> builtin_observables();
Observable find_observable(const std::string& name);

struct LineSpec {
  Vec2 direction{1.0, 0.0};          // unit vector in R^2
  double horizon = 400.0;            // final averaging time
  std::vector<double> checkpoints;   // horizons at which dispersion is recorded
  std::vector<ProductPoint> starts;  // >= 8 start points
  std::vector<Observable> observables;
  double quad_step = 0.05;
};

// Birkhoff average (1/T) integral_0^T f((t l) . x) dt by composite Simpson
// with node spacing <= quad_step along the stepped action orbit.
double line_birkhoff(const TimeChangedAction& tca, const Vec2& ell, const Observable& f,
                     const ProductPoint& x, double T, double quad_step = 0.05);

// Averages of several observables along one line orbit, recorded at each
// checkpoint horizon (single pass over the trajectory).
std::vector<std::vector<double>> line_birkhoff_multi(const TimeChangedAction& tca, const Vec2& ell,
                                                     const std::vector<Observable>& observables,
                                                     const ProductPoint& x,
                                                     const std::vector<double>& checkpoints,
                                                     double quad_step = 0.05);

struct ObservableDispersion {
  std::string observable;
  std::vector<double> per_start_averages;  // at the final horizon
  std::vector<double> dispersion_at;       // stddev over starts, per checkpoint
  double dispersion = 0.0;                 // at the final horizon
  double space_average = 0.0;              // long generic full-R^2 orbit average
};

struct DispersionReport {
  Vec2 direction{};
  double horizon = 0.0;
  std::vector<double> checkpoints;
  std::vector<ObservableDispersion> observables;
  std::vector<double> aggregate_at;  // RMS over observables, per checkpoint
  double aggregate_dispersion = 0.0;
  std::string verdict;  // "non-ergodic-line" | "consistent-with-ergodic" | "inconclusive"
};

/** Per-start Birkhoff averages and their dispersion along the line.
    Ergodicity itself is undecidable from finite data. A line is flagged
    non-ergodic when the final dispersion exceeds high_threshold AND it has
    not decayed to decay_threshold of its first-checkpoint value (a frozen
    factor keeps its dispersion, a slowly mixing direction does not);
    dispersion below low_threshold is consistent with ergodic, anything else
    is inconclusive. */
DispersionReport ergodicity_probe(const TimeChangedAction& tca, const LineSpec& line,
                                  double high_threshold = 0.1, double low_threshold = 0.02,
                                  double decay_threshold = 0.6, unsigned threads = 1);

/** Skew-product time change driven by the first factor only: the cocycle
    beta(s,t;x) = (s, t - theta1(s,x1)) with closed-form inverse
    phi(s,t;x) = (s, t + theta1(s,x1)). The (s,0)-subaction moves the first
    factor by the base flow exactly. */
TimeChangedAction build_skew_example(const FlowSpec& spec1, const FlowSpec& spec2,
                                     const BumpSpec& bump1, double quadrature_step = 1e-2,
                                     double inv_tolerance = 1e-12);

// Integrals of the bump over one period of its two marked orbits
// (+delta*P_plus and -delta*P_minus): unequal values are the periodic-data
// obstruction to the cocycle being a coboundary.
std::pair<double, double> livsic_periodic_integrals(const FlowSpec& spec, const BumpSpec& bump,
                                                    double quad_step = 1e-2);

}  // namespace tclab
