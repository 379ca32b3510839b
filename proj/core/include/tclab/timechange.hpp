#pragma once

#include <cstdint>
#include <utility>

#include "tclab/cocycle.hpp"

namespace tclab {

/** The time-changed action alpha(a)x = alpha0(phi(a,x))x, where phi(., x)
    inverts beta(., x). The inversion is a fixed-point iteration whose
    contraction rate is sup|u| <= delta (2*delta is the budgeted bound), so it
    needs 2*delta < 1. */
struct TimeChangedAction {
  FlowSpec spec1;
  FlowSpec spec2;
  CocycleSpec cocycle;
  double inv_tolerance = 1e-12;
  int max_iterations = 200;

  double delta() const { return cocycle.delta(); }
};

struct InversionResult {
  Vec2 phi{};
  int iterations = 0;      // number of beta evaluations
  double residual = 0.0;   // |beta(phi, x) - a|
};

/** Solves beta(phi, x) = a by phi_{n+1} = phi_n + (a - beta(phi_n, x)) from
    phi_0 = a. Throws NonConvergenceError when max_iterations is exceeded
    (delta too large or quadrature too coarse). */
InversionResult phi(const TimeChangedAction& tca, const Vec2& a, const ProductPoint& x);

ProductPoint act(const TimeChangedAction& tca, const Vec2& a, const ProductPoint& x);

// Max over random (a, b, x), |a|,|b| <= 3, of d(act(a, act(b, x)), act(a+b, x)).
double verify_group_law(const TimeChangedAction& tca, int sample_count, std::uint64_t seed,
                        unsigned threads = 1);

// (max |beta(a,x) - a| / |a|, max |beta(phi(a,x), x) - a|) over random samples.
// The first component realizes the epsilon_0 bound (must be <= 2*delta), the
// second the inversion residual (must be <= inv_tolerance).
std::pair<double, double> verify_inversion_bounds(const TimeChangedAction& tca, int sample_count,
                                                  std::uint64_t seed, unsigned threads = 1);

// A-priori bound on the iteration count for the paper's contraction rate
// 2*delta; the measured count must not exceed it.
int iteration_bound(const TimeChangedAction& tca, double a_norm);

}  // namespace tclab
