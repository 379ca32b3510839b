#include "tclab/timechange.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "tclab/errors.hpp"
#include "tclab/parallel.hpp"

namespace tclab {

InversionResult phi(const TimeChangedAction& tca, const Vec2& a, const ProductPoint& x) {
  BetaEvaluator beta_at_x(tca.spec1, tca.spec2, tca.cocycle, x);
  Vec2 p = a;
  for (int iter = 1; iter <= tca.max_iterations; ++iter) {
    const Vec2 update = a - beta_at_x.eval(p);
    const double res = norm(update);
    if (res <= tca.inv_tolerance) return {p, iter, res};
    p = p + update;
  }
  std::ostringstream msg;
  msg << "phi: no convergence after " << tca.max_iterations << " iterations at a = (" << a.x
      << ", " << a.y << "), x1 = (" << x.x1.base.x << ", " << x.x1.base.y << "; " << x.x1.tau
      << "), x2 = (" << x.x2.base.x << ", " << x.x2.base.y << "; " << x.x2.tau
      << "); delta may be too large or the quadrature too coarse";
  throw NonConvergenceError(msg.str());
}

ProductPoint act(const TimeChangedAction& tca, const Vec2& a, const ProductPoint& x) {
  return product_flow(tca.spec1, tca.spec2, phi(tca, a, x).phi, x);
}

int iteration_bound(const TimeChangedAction& tca, double a_norm) {
  const double rate = 2.0 * tca.delta();
  if (rate <= 0.0) return 2;
  if (rate >= 1.0) return tca.max_iterations;
  if (a_norm <= tca.inv_tolerance) return 2;
  return static_cast<int>(std::ceil(std::log(tca.inv_tolerance / a_norm) / std::log(rate))) + 2;
}

double verify_group_law(const TimeChangedAction& tca, int sample_count, std::uint64_t seed,
                        unsigned threads) {
  std::vector<double> defects(sample_count, 0.0);
  parallel_for(sample_count, threads, [&](std::size_t i) {
    Rng rng = Rng(seed ^ 0x67726f75u).fork(i);
    const Vec2 a = random_vec(rng, 3.0);
    const Vec2 b = random_vec(rng, 3.0);
    const ProductPoint x = random_product_point(tca.spec1, tca.spec2, rng);
    const ProductPoint composed = act(tca, a, act(tca, b, x));
    const ProductPoint direct = act(tca, a + b, x);
    defects[i] = product_dist(tca.spec1, tca.spec2, composed, direct);
  });
  double max_defect = 0.0;
  for (double d : defects) max_defect = std::max(max_defect, d);
  return max_defect;
}

std::pair<double, double> verify_inversion_bounds(const TimeChangedAction& tca, int sample_count,
                                                  std::uint64_t seed, unsigned threads) {
  std::vector<double> ratios(sample_count, 0.0);
  std::vector<double> residuals(sample_count, 0.0);
  parallel_for(sample_count, threads, [&](std::size_t i) {
    Rng rng = Rng(seed ^ 0x696e7632u).fork(i);
    // Keep |a| away from 0 so the ratio is well conditioned.
    Vec2 a = random_vec(rng, 5.0);
    const double n = norm(a);
    if (n < 0.5) a = (n == 0.0) ? Vec2{0.5, 0.0} : a * (0.5 / n);
    const ProductPoint x = random_product_point(tca.spec1, tca.spec2, rng);
    const Vec2 b = beta(tca.spec1, tca.spec2, tca.cocycle, a, x);
    ratios[i] = norm(b - a) / norm(a);
    residuals[i] = phi(tca, a, x).residual;
  });
  double max_ratio = 0.0, max_res = 0.0;
  for (int i = 0; i < sample_count; ++i) {
    max_ratio = std::max(max_ratio, ratios[i]);
    max_res = std::max(max_res, residuals[i]);
  }
  return {max_ratio, max_res};
}

}  // namespace tclab
