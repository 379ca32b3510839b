#pragma once

#include <cstdint>
#include <functional>

#include "tclab/bump.hpp"
#include "tclab/product.hpp"
#include "tclab/rng.hpp"

namespace tclab {

// Which factors the cocycle couples. first_factor_only is the skew-product
// variant beta(s,t;x) = (s, t - theta1(s, x1)); its first coordinate is left
// untouched bitwise.
enum class Coupling { both, first_factor_only };

/** Data of the R^2-cocycle beta(s,t;x) = (s - theta2(t,x2), t - theta1(s,x1))
    over the product action, where theta_i integrates the bump u_i along the
    factor flows. */
struct CocycleSpec {
  BumpSpec bump1;
  BumpSpec bump2;
  double quadrature_step = 1e-2;
  Coupling coupling = Coupling::both;

  double delta() const { return bump1.delta; }
};

// theta(t, x) = integral_0^t u(f_tau(x)) dtau, composite 5-point Gauss panels
// aligned to multiples of h plus a partial end panel. When x lies on one of
// the bump's marked orbits (within 1e-9) the nodes are placed by exact arc
// time along the periodic orbit; stepping a hyperbolic orbit in floating
// point would leave it exponentially fast.
double theta(const FlowSpec& spec, const BumpSpec& bump, double t, const SuspensionPoint& x,
             double h);

/** Evaluates theta(., x) repeatedly at the same base point, caching full-panel
    prefix integrals per sign. The panel grid is aligned to multiples of h, so
    cached and fresh evaluations agree bitwise; the fixed-point inversion pays
    for one sweep of the integration range instead of one per iterate. */
class ThetaEvaluator {
 public:
  ThetaEvaluator(const FlowSpec& spec, const BumpSpec& bump, const SuspensionPoint& x, double h);
  double eval(double t);

 private:
  struct Lane {
    std::vector<double> prefix{0.0};  // prefix[k] = integral over the first k panels
    SuspensionPoint walker{};         // raw mode: chart point at the last visited node
    double walker_t = 0.0;
  };

  double extend_and_eval(Lane& lane, double t, double sign);

  const FlowSpec* spec_;
  const BumpSpec* bump_;
  double h_;
  SuspensionPoint x_;
  bool on_orbit_ = false;
  const PeriodicOrbit* orbit_ = nullptr;  // orbit-walk mode
  double arc0_ = 0.0;
  Lane pos_, neg_;
};

// beta(., x) with per-factor cached theta evaluators.
class BetaEvaluator {
 public:
  BetaEvaluator(const FlowSpec& spec1, const FlowSpec& spec2, const CocycleSpec& cs,
                const ProductPoint& x);
  Vec2 eval(const Vec2& a);

 private:
  ThetaEvaluator theta1_, theta2_;
  Coupling coupling_;
};

// Same quadrature for an arbitrary integrand along the flow (no orbit
// fast-path); used by tests to cross-check against fields with known
// integrals.
double theta_field(const FlowSpec& spec, const std::function<double(const SuspensionPoint&)>& u,
                   double t, const SuspensionPoint& x, double h);

Vec2 beta(const FlowSpec& spec1, const FlowSpec& spec2, const CocycleSpec& cs, const Vec2& a,
          const ProductPoint& x);

// d_a beta at (a, x): [[1, -u2(g_t x2)], [-u1(f_s x1), 1]].
Mat2 d_a_beta(const FlowSpec& spec1, const FlowSpec& spec2, const CocycleSpec& cs, const Vec2& a,
              const ProductPoint& x);

// Max over random (a, b, x), |a|,|b| <= 5, of
// |beta(a+b,x) - beta(a,x) - beta(b, alpha0(a)x)|.
double verify_cocycle_identity(const FlowSpec& spec1, const FlowSpec& spec2, const CocycleSpec& cs,
                               int sample_count, std::uint64_t seed, unsigned threads = 1);

// Random point of X, u uniform on the torus and tau uniform under the roof.
ProductPoint random_product_point(const FlowSpec& spec1, const FlowSpec& spec2, Rng& rng);

// Random vector with |a| <= max_norm (uniform direction, uniform radius).
Vec2 random_vec(Rng& rng, double max_norm);

}  // namespace tclab
