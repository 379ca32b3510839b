#include "tclab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tclab/parallel.hpp"
#include "tclab/rng.hpp"

namespace tclab {

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr int kGaussN = 5;
constexpr double kGaussX[kGaussN] = {
    -0.90617984593866399280, -0.53846931010568309104, 0.0,
    0.53846931010568309104, 0.90617984593866399280};
constexpr double kGaussW[kGaussN] = {
    0.23692688505618908751, 0.47862867049936646804, 0.56888888888888888889,
    0.47862867049936646804, 0.23692688505618908751};

// Composite rule on panels aligned to multiples of h plus a partial end
// panel. The aligned grid makes theta(t) a pure function of t, so prefix
// integrals can be cached and extended.
template <typename Eval>
double composite_gauss(double t, double h, Eval&& eval_at) {
  if (t == 0.0) return 0.0;
  const double sign = t > 0.0 ? 1.0 : -1.0;
  const double at = std::abs(t);
  const auto full = static_cast<std::int64_t>(std::floor(at / h));
  double sum = 0.0;
  for (std::int64_t k = 0; k < full; ++k) {
    const double center = (k + 0.5) * h * sign;
    double panel = 0.0;
    for (int i = 0; i < kGaussN; ++i)
      panel += kGaussW[i] * eval_at(center + 0.5 * h * sign * kGaussX[i]);
    sum += panel * (h * sign / 2.0);
  }
  const double tail = at - full * h;
  if (tail > 0.0) {
    const double center = (full * h + 0.5 * tail) * sign;
    double panel = 0.0;
    for (int i = 0; i < kGaussN; ++i)
      panel += kGaussW[i] * eval_at(center + 0.5 * tail * sign * kGaussX[i]);
    sum += panel * (tail * sign / 2.0);
  }
  return sum;
}

}  // namespace

double theta_field(const FlowSpec& spec, const std::function<double(const SuspensionPoint&)>& u,
                   double t, const SuspensionPoint& x, double h) {
  SuspensionPoint cur = x;
  double t_cur = 0.0;
  return composite_gauss(t, h, [&](double tau) {
    cur = flow(spec, tau - t_cur, cur);
    t_cur = tau;
    return u(cur);
  });
}

ThetaEvaluator::ThetaEvaluator(const FlowSpec& spec, const BumpSpec& bump,
                               const SuspensionPoint& x, double h)
    : spec_(&spec), bump_(&bump), h_(h), x_(x) {
  constexpr double snap_tol = 1e-9;
  for (const PeriodicOrbit* orbit : {&bump.plus_orbit, &bump.minus_orbit}) {
    const double g0 = arc_time_on_orbit(spec, *orbit, x, snap_tol);
    if (g0 >= 0.0) {
      on_orbit_ = true;
      orbit_ = orbit;
      arc0_ = g0;
      break;
    }
  }
  pos_.walker = x;
  neg_.walker = x;
}

double ThetaEvaluator::extend_and_eval(Lane& lane, double t, double sign) {
  const double at = std::abs(t);
  const auto full = static_cast<std::int64_t>(std::floor(at / h_));
  auto value_at = [&](SuspensionPoint& walker, double& walker_t, double tau) {
    if (on_orbit_) return bump_->value(*spec_, orbit_->at_arc_time(arc0_ + tau));
    walker = flow(*spec_, tau - walker_t, walker);
    walker_t = tau;
    return bump_->value(*spec_, walker);
  };
  while (static_cast<std::int64_t>(lane.prefix.size()) <= full) {
    const auto k = static_cast<std::int64_t>(lane.prefix.size()) - 1;
    const double center = (k + 0.5) * h_ * sign;
    double panel = 0.0;
    for (int i = 0; i < kGaussN; ++i)
      panel += kGaussW[i] *
               value_at(lane.walker, lane.walker_t, center + 0.5 * h_ * sign * kGaussX[i]);
    lane.prefix.push_back(lane.prefix.back() + panel * (h_ * sign / 2.0));
  }
  double sum = lane.prefix[full];
  const double tail = at - full * h_;
  if (tail > 0.0) {
    // A copy keeps the lane walker parked at its last full-panel node.
    SuspensionPoint walker = lane.walker;
    double walker_t = lane.walker_t;
    const double center = (full * h_ + 0.5 * tail) * sign;
    double panel = 0.0;
    for (int i = 0; i < kGaussN; ++i)
      panel += kGaussW[i] * value_at(walker, walker_t, center + 0.5 * tail * sign * kGaussX[i]);
    sum += panel * (tail * sign / 2.0);
  }
  return sum;
}

double ThetaEvaluator::eval(double t) {
  if (t == 0.0) return 0.0;
  return t > 0.0 ? extend_and_eval(pos_, t, 1.0) : extend_and_eval(neg_, t, -1.0);
}

double theta(const FlowSpec& spec, const BumpSpec& bump, double t, const SuspensionPoint& x,
             double h) {
  return ThetaEvaluator(spec, bump, x, h).eval(t);
}

BetaEvaluator::BetaEvaluator(const FlowSpec& spec1, const FlowSpec& spec2, const CocycleSpec& cs,
                             const ProductPoint& x)
    : theta1_(spec1, cs.bump1, x.x1, cs.quadrature_step),
      theta2_(spec2, cs.bump2, x.x2, cs.quadrature_step),
      coupling_(cs.coupling) {}

Vec2 BetaEvaluator::eval(const Vec2& a) {
  const double theta1 = theta1_.eval(a.x);
  if (coupling_ == Coupling::first_factor_only) return {a.x, a.y - theta1};
  return {a.x - theta2_.eval(a.y), a.y - theta1};
}

Vec2 beta(const FlowSpec& spec1, const FlowSpec& spec2, const CocycleSpec& cs, const Vec2& a,
          const ProductPoint& x) {
  return BetaEvaluator(spec1, spec2, cs, x).eval(a);
}

Mat2 d_a_beta(const FlowSpec& spec1, const FlowSpec& spec2, const CocycleSpec& cs, const Vec2& a,
              const ProductPoint& x) {
  const double u1 = cs.bump1.value(spec1, flow(spec1, a.x, x.x1));
  const double u2 = cs.coupling == Coupling::first_factor_only
                        ? 0.0
                        : cs.bump2.value(spec2, flow(spec2, a.y, x.x2));
  return {1.0, -u2, -u1, 1.0};
}

ProductPoint random_product_point(const FlowSpec& spec1, const FlowSpec& spec2, Rng& rng) {
  ProductPoint x;
  x.x1.base = {rng.uniform(), rng.uniform()};
  x.x1.tau = rng.uniform() * spec1.roof(x.x1.base);
  x.x2.base = {rng.uniform(), rng.uniform()};
  x.x2.tau = rng.uniform() * spec2.roof(x.x2.base);
  return x;
}

Vec2 random_vec(Rng& rng, double max_norm) {
  const double angle = rng.uniform() * 6.283185307179586476925286766559;
  const double radius = rng.uniform() * max_norm;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

double verify_cocycle_identity(const FlowSpec& spec1, const FlowSpec& spec2, const CocycleSpec& cs,
                               int sample_count, std::uint64_t seed, unsigned threads) {
  std::vector<double> residuals(sample_count, 0.0);
  parallel_for(sample_count, threads, [&](std::size_t i) {
    Rng rng = Rng(seed).fork(i);
    const Vec2 a = random_vec(rng, 5.0);
    const Vec2 b = random_vec(rng, 5.0);
    const ProductPoint x = random_product_point(spec1, spec2, rng);
    BetaEvaluator beta_at_x(spec1, spec2, cs, x);
    const Vec2 lhs = beta_at_x.eval(a + b);
    const Vec2 rhs1 = beta_at_x.eval(a);
    const Vec2 rhs2 = beta(spec1, spec2, cs, b, product_flow(spec1, spec2, a, x));
    residuals[i] = norm(lhs - rhs1 - rhs2);
  });
  double max_res = 0.0;
  for (double r : residuals) max_res = std::max(max_res, r);
  return max_res;
}

}  // namespace tclab
