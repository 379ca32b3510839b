#include "tclab/flow_spec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tclab {

FlowSpec FlowSpec::make(const std::array<std::array<std::int64_t, 2>, 2>& map,
                        double roof_amplitude, const std::array<int, 2>& roof_mode) {
  FlowSpec s;
  s.map = map;
  s.roof_amplitude = roof_amplitude;
  s.roof_mode = roof_mode;

  const std::int64_t det = map[0][0] * map[1][1] - map[0][1] * map[1][0];
  const std::int64_t tr = map[0][0] + map[1][1];
  if (det != 1 && det != -1)
    throw std::invalid_argument("FlowSpec: base map must have |det| = 1, got det = " +
                                std::to_string(det));
  if (tr <= 2 && tr >= -2)
    throw std::invalid_argument("FlowSpec: base map must be hyperbolic, |trace| > 2");
  if (!(std::abs(roof_amplitude) < 1.0))
    throw std::invalid_argument("FlowSpec: |roof amplitude| must be < 1");

  // Integer inverse: adj(A)/det.
  if (det == 1) {
    s.inv_ = {{{map[1][1], -map[0][1]}, {-map[1][0], map[0][0]}}};
  } else {
    s.inv_ = {{{-map[1][1], map[0][1]}, {map[1][0], -map[0][0]}}};
  }

  // Eigenvalues from the characteristic polynomial x^2 - tr x + det.
  const double trd = static_cast<double>(tr);
  const double disc = std::sqrt(trd * trd - 4.0 * static_cast<double>(det));
  const double l1 = (trd + disc) / 2.0;
  const double l2 = (trd - disc) / 2.0;
  const double lam = std::abs(l1) > std::abs(l2) ? l1 : l2;
  const double mu = std::abs(l1) > std::abs(l2) ? l2 : l1;
  s.expanding_eigenvalue = std::abs(lam);
  s.log_expanding_eigenvalue = std::log(std::abs(lam));

  auto eigvec = [&](double l) -> Vec2 {
    const double a = static_cast<double>(map[0][0]);
    const double b = static_cast<double>(map[0][1]);
    const double c = static_cast<double>(map[1][0]);
    const double d = static_cast<double>(map[1][1]);
    // (A - l I) v = 0; pick the better-conditioned row.
    Vec2 v1{b, l - a};
    Vec2 v2{l - d, c};
    Vec2 v = norm(v1) > norm(v2) ? v1 : v2;
    return v / norm(v);
  };
  s.unstable_dir = eigvec(lam);
  s.stable_dir = eigvec(mu);

  // Construction-time check of the splitting, |A v - l v| <= 1e-12.
  auto check = [&](const Vec2& v, double l) {
    const Vec2 av{static_cast<double>(map[0][0]) * v.x + static_cast<double>(map[0][1]) * v.y,
                  static_cast<double>(map[1][0]) * v.x + static_cast<double>(map[1][1]) * v.y};
    return norm(av - l * v);
  };
  if (check(s.unstable_dir, lam) > 1e-12 || check(s.stable_dir, mu) > 1e-12)
    throw std::invalid_argument("FlowSpec: eigen-splitting residual exceeds 1e-12");

  return s;
}

RationalPoint FlowSpec::apply_map(const RationalPoint& p) const {
  auto mod = [](std::int64_t v, std::int64_t m) {
    v %= m;
    return v < 0 ? v + m : v;
  };
  return {mod(map[0][0] * p.nx + map[0][1] * p.ny, p.den),
          mod(map[1][0] * p.nx + map[1][1] * p.ny, p.den), p.den};
}

}  // namespace tclab
