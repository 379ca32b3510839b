#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tclab/errors.hpp"

using namespace tclab;
using namespace tclab::testing;

TEST_CASE("phi at the identity and on the marked orbits") {
  const TimeChangedAction tca = default_action();
  const MarkedPoints mp = marked_points(tca);
  const double delta = 0.05;
  const double den = 1.0 + delta * delta;

  SUBCASE("a = 0 converges in one beta evaluation") {
    const InversionResult r = phi(tca, {0.0, 0.0}, far_point());
    CHECK(r.phi.x == 0.0);
    CHECK(r.phi.y == 0.0);
    CHECK(r.iterations == 1);
    CHECK(r.residual == 0.0);
  }

  SUBCASE("closed form at x: (s - delta t, t + delta s)/(1 + delta^2)") {
    for (const Vec2 a : {Vec2{1.0, 0.0}, Vec2{-2.0, 3.0}, Vec2{0.4, 0.4}}) {
      const InversionResult r = phi(tca, a, mp.x);
      CHECK(r.phi.x == doctest::Approx((a.x - delta * a.y) / den).epsilon(1e-10));
      CHECK(r.phi.y == doctest::Approx((a.y + delta * a.x) / den).epsilon(1e-10));
      CHECK(r.residual <= tca.inv_tolerance);
    }
  }

  SUBCASE("closed form at y: (s + delta t, t - delta s)/(1 + delta^2)") {
    for (const Vec2 a : {Vec2{0.0, 1.0}, Vec2{2.5, -1.5}}) {
      const InversionResult r = phi(tca, a, mp.y);
      CHECK(r.phi.x == doctest::Approx((a.x + delta * a.y) / den).epsilon(1e-10));
      CHECK(r.phi.y == doctest::Approx((a.y - delta * a.x) / den).epsilon(1e-10));
    }
  }
}

TEST_CASE("inverse identities both ways on random samples") {
  const TimeChangedAction tca = default_action();
  Rng rng(4097);
  for (int i = 0; i < 100; ++i) {
    Rng local = rng.fork(i);
    const Vec2 a = random_vec(local, 5.0);
    const ProductPoint x = random_product_point(tca.spec1, tca.spec2, local);

    const InversionResult fwd = phi(tca, a, x);
    CHECK(fwd.residual <= tca.inv_tolerance);
    CHECK(fwd.iterations <= iteration_bound(tca, norm(a)));
    CHECK(fwd.iterations <= 14);

    const Vec2 b = beta(tca.spec1, tca.spec2, tca.cocycle, a, x);
    const InversionResult back = phi(tca, b, x);
    CHECK(norm(back.phi - a) <= 1e-10);
  }
}

TEST_CASE("phi throws NonConvergence when the iteration budget is too small") {
  TimeChangedAction tca = default_action();
  tca.max_iterations = 3;
  // On the marked orbit the iteration genuinely needs ~11 steps.
  CHECK_THROWS_AS(phi(tca, {4.0, -3.0}, marked_points(tca).x), NonConvergenceError);
}

TEST_CASE("act") {
  const TimeChangedAction tca = default_action();

  SUBCASE("identity element") {
    const ProductPoint x = far_point();
    const ProductPoint y = act(tca, {0.0, 0.0}, x);
    CHECK(y.x1.base.x == x.x1.base.x);
    CHECK(y.x1.tau == x.x1.tau);
    CHECK(y.x2.base.y == x.x2.base.y);
    CHECK(y.x2.tau == x.x2.tau);
  }

  SUBCASE("off the tubes small elements act as the product flow, bitwise") {
    // The whole flow segment stays outside both supports, so theta nodes all
    // read 0 and phi = a exactly.
    const ProductPoint x = far_point();
    const Vec2 a{0.3, -0.25};
    const ProductPoint via_act = act(tca, a, x);
    const ProductPoint via_flow = product_flow(tca.spec1, tca.spec2, a, x);
    CHECK(via_act.x1.base.x == via_flow.x1.base.x);
    CHECK(via_act.x1.base.y == via_flow.x1.base.y);
    CHECK(via_act.x1.tau == via_flow.x1.tau);
    CHECK(via_act.x2.base.x == via_flow.x2.base.x);
    CHECK(via_act.x2.tau == via_flow.x2.tau);
  }

  SUBCASE("the skew example moves the first factor by the base flow exactly") {
    const TimeChangedAction skew = skew_action();
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
      Rng local = rng.fork(i);
      const double s = local.uniform(-6.0, 6.0);
      const ProductPoint x = random_product_point(skew.spec1, skew.spec2, local);
      const ProductPoint y = act(skew, {s, 0.0}, x);
      const SuspensionPoint direct = flow(skew.spec1, s, x.x1);
      CHECK(y.x1.base.x == direct.base.x);
      CHECK(y.x1.base.y == direct.base.y);
      CHECK(y.x1.tau == direct.tau);
    }
  }
}

TEST_CASE("group law") {
  const TimeChangedAction tca = default_action();

  SUBCASE("b = 0 gives defect 0") {
    Rng rng(2711);
    const Vec2 a = random_vec(rng, 3.0);
    const ProductPoint x = random_product_point(tca.spec1, tca.spec2, rng);
    const ProductPoint lhs = act(tca, a, act(tca, {0.0, 0.0}, x));
    const ProductPoint rhs = act(tca, a, x);
    CHECK(product_dist(tca.spec1, tca.spec2, lhs, rhs) == 0.0);
  }

  SUBCASE("flow-direction elements of the skew example off the tubes") {
    const TimeChangedAction skew = skew_action();
    const ProductPoint x = far_point();
    const Vec2 a{0.3, 0.0}, b{0.4, 0.0};
    const ProductPoint lhs = act(skew, a, act(skew, b, x));
    const ProductPoint rhs = act(skew, a + b, x);
    CHECK(product_dist(skew.spec1, skew.spec2, lhs, rhs) <= 1e-10);
  }

  SUBCASE("sampled defect is quadrature-limited") {
    CHECK(verify_group_law(tca, 100, 20260809, 2) <= 1e-6);
  }
}

TEST_CASE("inversion bounds") {
  SUBCASE("degenerate zero bump gives beta = id") {
    const TimeChangedAction product = product_action();
    const auto [ratio, residual] = verify_inversion_bounds(product, 50, 7, 2);
    CHECK(ratio == 0.0);
    CHECK(residual <= 1e-14);
  }

  SUBCASE("default spec respects the epsilon_0 = 2 delta budget") {
    const TimeChangedAction tca = default_action();
    const auto [ratio, residual] = verify_inversion_bounds(tca, 100, 20260809, 2);
    CHECK(ratio <= 0.1);
    CHECK(residual <= tca.inv_tolerance);
  }

  SUBCASE("unit vectors on the marked orbits attain |beta(a,x) - a| = delta exactly") {
    const TimeChangedAction tca = default_action();
    const MarkedPoints mp = marked_points(tca);
    for (const ProductPoint* pt : {&mp.x, &mp.y}) {
      for (const Vec2& a : unit_direction_grid(10)) {
        const Vec2 b = beta(tca.spec1, tca.spec2, tca.cocycle, a, *pt);
        CHECK(std::abs(norm(b - a) - 0.05) <= 1e-12);
      }
    }
  }
}

namespace {

// Cumulative renormalized two-point separation growth, sampled every
// unit time.
std::vector<double> separation_log_growth(const TimeChangedAction& tca, const Vec2& a, int steps) {
  Rng rng(314159);
  ProductPoint x = random_product_point(tca.spec1, tca.spec2, rng);
  constexpr double eps = 1e-8;
  ProductPoint shadow = x;
  // Generic transverse seed: displace the torus coordinates of both factors.
  shadow.x1.base.x = wrap01(shadow.x1.base.x + eps * 0.61);
  shadow.x1.base.y = wrap01(shadow.x1.base.y + eps * 0.35);
  shadow.x2.base.x = wrap01(shadow.x2.base.x + eps * 0.44);
  shadow.x2.base.y = wrap01(shadow.x2.base.y + eps * 0.52);
  std::vector<double> cumulative;
  double sum = 0.0;
  for (int k = 0; k < steps; ++k) {
    x = act(tca, a, x);
    shadow = act(tca, a, shadow);
    const ChartDiff d1 = suspension_diff(tca.spec1, x.x1, shadow.x1);
    const ChartDiff d2 = suspension_diff(tca.spec2, x.x2, shadow.x2);
    const double sep = std::sqrt(d1.norm2() + d2.norm2());
    sum += std::log(sep / eps);
    const double scale = eps / sep;
    shadow.x1.base.x = wrap01(x.x1.base.x + scale * d1.du1);
    shadow.x1.base.y = wrap01(x.x1.base.y + scale * d1.du2);
    shadow.x1.tau = x.x1.tau + scale * d1.dtau;
    shadow.x1 = flow(tca.spec1, 0.0, shadow.x1);
    shadow.x2.base.x = wrap01(x.x2.base.x + scale * d2.du1);
    shadow.x2.base.y = wrap01(x.x2.base.y + scale * d2.du2);
    shadow.x2.tau = x.x2.tau + scale * d2.dtau;
    shadow.x2 = flow(tca.spec2, 0.0, shadow.x2);
    cumulative.push_back(sum);
  }
  return cumulative;
}

}  // namespace

TEST_CASE("the elements (+-1, +-1) stay Anosov: separation grows monotone exponentially") {
  const TimeChangedAction tca = default_action();
  for (const Vec2 a : {Vec2{1.0, 1.0}, Vec2{-1.0, -1.0}, Vec2{1.0, -1.0}, Vec2{-1.0, 1.0}}) {
    const auto growth = separation_log_growth(tca, a, 100);
    // Log separation at T = 10, 20, ..., 100 increases with comparable
    // per-decade increments.
    std::vector<double> decades;
    for (int T = 10; T <= 100; T += 10) decades.push_back(growth[T - 1]);
    double mean_inc = 0.0;
    for (std::size_t i = 1; i < decades.size(); ++i) mean_inc += decades[i] - decades[i - 1];
    mean_inc /= static_cast<double>(decades.size() - 1);
    CHECK(mean_inc > 5.0);  // rate comfortably above half of log(lambda) per unit time
    for (std::size_t i = 1; i < decades.size(); ++i) {
      const double inc = decades[i] - decades[i - 1];
      CHECK(inc > 0.0);
      CHECK(inc >= 0.5 * mean_inc);
      CHECK(inc <= 1.5 * mean_inc);
    }
  }
}
