#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tclab/rng.hpp"

using namespace tclab;
using namespace tclab::testing;

namespace {

std::vector<ProductPoint> random_starts(const TimeChangedAction& tca, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ProductPoint> starts;
  for (int i = 0; i < n; ++i) starts.push_back(random_product_point(tca.spec1, tca.spec2, rng));
  return starts;
}

LineSpec make_line(const TimeChangedAction& tca, Vec2 dir, double horizon,
                   std::vector<double> checkpoints, int n_starts, std::uint64_t seed) {
  LineSpec line;
  line.direction = dir / norm(dir);
  line.horizon = horizon;
  line.checkpoints = std::move(checkpoints);
  line.starts = random_starts(tca, n_starts, seed);
  line.observables = builtin_observables();
  return line;
}

}  // namespace

TEST_CASE("line averages of a constant observable are exactly 1") {
  const TimeChangedAction tca = default_action();
  const Observable one{"one", [](const FlowSpec&, const FlowSpec&, const ProductPoint&) {
                         return 1.0;
                       }};
  Rng rng(40);
  const ProductPoint x = random_product_point(tca.spec1, tca.spec2, rng);
  for (const Vec2 ell : {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}}) {
    CHECK(line_birkhoff(tca, ell, one, x, 60.0) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("product action, vertical line: first-factor observables are frozen") {
  const TimeChangedAction product = product_action();
  const Observable f = find_observable("f1_sin_u1");
  Rng rng(41);
  for (int i = 0; i < 5; ++i) {
    const ProductPoint x = random_product_point(product.spec1, product.spec2, rng);
    const double avg = line_birkhoff(product, {0.0, 1.0}, f, x, 80.0);
    const double frozen = std::sin(2.0 * M_PI * x.x1.base.x);
    CHECK(avg == doctest::Approx(frozen).epsilon(1e-10));
  }
}

TEST_CASE("product action, horizontal line: dispersion of factor-1 averages decays") {
  const TimeChangedAction product = product_action();
  const Observable f = find_observable("f1_sin_u1");
  // The per-start averages shrink like T^(-1/2); 32 starts keep the sampled
  // standard deviation close enough to that law for ratio checks.
  const auto starts = random_starts(product, 32, 2026);
  std::vector<double> sigma;
  for (double T : {50.0, 200.0, 800.0}) {
    double mean = 0.0, var = 0.0;
    std::vector<double> avgs;
    for (const auto& x : starts) avgs.push_back(line_birkhoff(product, {1.0, 0.0}, f, x, T));
    for (double a : avgs) mean += a;
    mean /= avgs.size();
    for (double a : avgs) var += (a - mean) * (a - mean);
    sigma.push_back(std::sqrt(var / avgs.size()));
  }
  CHECK(sigma[0] > 0.05);
  CHECK(sigma[1] < 0.7 * sigma[0]);
  CHECK(sigma[2] < 0.7 * sigma[1]);
}

TEST_CASE("ergodicity probe flags the vertical line of the product action") {
  const TimeChangedAction product = product_action();
  const LineSpec line = make_line(product, {0.0, 1.0}, 150.0, {50.0, 150.0}, 12, 77);
  const DispersionReport report = ergodicity_probe(product, line, 0.1, 0.02, 0.6, 2);
  CHECK(report.verdict == "non-ergodic-line");
  CHECK(report.aggregate_dispersion > 0.1);

  // The x1-observables witness non-ergodicity literally: every per-start
  // average equals the observable frozen at the start.
  for (const auto& od : report.observables) {
    if (od.observable != "f1_sin_u1") continue;
    for (std::size_t s = 0; s < line.starts.size(); ++s) {
      const double frozen = std::sin(2.0 * M_PI * line.starts[s].x1.base.x);
      CHECK(od.per_start_averages[s] == doctest::Approx(frozen).epsilon(1e-8));
    }
  }
}

TEST_CASE("probe verdict is invariant under relabeling the starts") {
  const TimeChangedAction product = product_action();
  LineSpec line = make_line(product, {0.0, 1.0}, 100.0, {100.0}, 8, 99);
  const DispersionReport fwd = ergodicity_probe(product, line, 0.1, 0.02, 0.6, 2);
  std::reverse(line.starts.begin(), line.starts.end());
  const DispersionReport rev = ergodicity_probe(product, line, 0.1, 0.02, 0.6, 2);
  CHECK(fwd.verdict == rev.verdict);
  CHECK(fwd.aggregate_dispersion == doctest::Approx(rev.aggregate_dispersion).epsilon(1e-12));
}

TEST_CASE("skew example: horizontal line moves both coordinates and disperses less over time") {
  const TimeChangedAction skew = skew_action();
  const LineSpec line = make_line(skew, {1.0, 0.0}, 400.0, {100.0, 400.0}, 12, 505);
  const DispersionReport report = ergodicity_probe(skew, line, 0.1, 0.02, 0.6, 2);
  // x2-only observables are not frozen (the subaction drags the second factor
  // through theta1), and their dispersion decays with the horizon.
  for (const auto& od : report.observables) {
    if (od.observable.rfind("f2_", 0) != 0) continue;
    CHECK(od.dispersion_at.back() < od.dispersion_at.front());
  }
}

TEST_CASE("default action: neither coordinate line is flagged non-ergodic") {
  const TimeChangedAction tca = default_action();
  for (const Vec2 dir : {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}}) {
    const LineSpec line = make_line(tca, dir, 400.0, {100.0, 400.0}, 12, 31337);
    const DispersionReport report = ergodicity_probe(tca, line, 0.1, 0.02, 0.6, 2);
    CHECK(report.verdict != "non-ergodic-line");
    CHECK(report.aggregate_at.back() < report.aggregate_at.front());
  }
}

TEST_CASE("build_skew_example") {
  const FlowSpec spec = default_flow();
  const TimeChangedAction skew = skew_action();

  SUBCASE("phi matches the closed form (s, t + theta1(s, x1)) to 1e-12") {
    Rng rng(3003);
    for (int i = 0; i < 100; ++i) {
      Rng local = rng.fork(i);
      const Vec2 a = random_vec(local, 5.0);
      const ProductPoint x = random_product_point(skew.spec1, skew.spec2, local);
      const InversionResult inv = phi(skew, a, x);
      CHECK(inv.phi.x == a.x);  // first coordinate untouched, bitwise
      const double closed =
          a.y + theta(skew.spec1, skew.cocycle.bump1, a.x, x.x1, skew.cocycle.quadrature_step);
      CHECK(std::abs(inv.phi.y - closed) <= 1e-12);
    }
  }

  SUBCASE("a zero bump degenerates to the product action, bitwise") {
    const BumpSpec zero = make_bump_spec(spec, 0.0, 0.1, fixed_point_orbit(spec),
                                         five_cycle_orbit(spec));
    const TimeChangedAction trivial = build_skew_example(spec, spec, zero);
    Rng rng(1818);
    for (int i = 0; i < 20; ++i) {
      Rng local = rng.fork(i);
      const Vec2 a = random_vec(local, 4.0);
      const ProductPoint x = random_product_point(spec, spec, local);
      const ProductPoint via_act = act(trivial, a, x);
      const ProductPoint via_flow = product_flow(spec, spec, a, x);
      CHECK(via_act.x1.base.x == via_flow.x1.base.x);
      CHECK(via_act.x1.tau == via_flow.x1.tau);
      CHECK(via_act.x2.base.x == via_flow.x2.base.x);
      CHECK(via_act.x2.tau == via_flow.x2.tau);
    }
  }
}

TEST_CASE("periodic integrals of the bump: the coboundary obstruction") {
  const FlowSpec spec = default_flow();
  const BumpSpec bump = default_bump(spec);
  const auto [plus, minus] = livsic_periodic_integrals(spec, bump);
  // +delta * P_plus and -delta * P_minus; unequal, so theta1 cannot be a
  // coboundary (its periodic data would have to vanish).
  CHECK(plus == doctest::Approx(0.05 * 1.2).epsilon(1e-10));
  CHECK(minus == doctest::Approx(-0.05 * 10.0).epsilon(1e-10));
}

TEST_CASE("space-average estimates of the mean-zero builtins are small") {
  const TimeChangedAction tca = default_action();
  const LineSpec line = make_line(tca, {1.0, 0.0}, 100.0, {100.0}, 8, 22);
  const DispersionReport report = ergodicity_probe(tca, line, 0.1, 0.02, 0.6, 2);
  for (const auto& od : report.observables) CHECK(std::abs(od.space_average) <= 0.2);
}
