#pragma once

#include <array>
#include <cstdint>

#include "tclab/geometry.hpp"

namespace tclab {

/** Suspension flow of a hyperbolic toral automorphism under the roof
    r(u) = 1 + rho * cos(2 pi m.u).

    The base map A is an integer matrix with |det A| = 1 and |tr A| > 2, so it
    has an expanding eigenvalue lambda > 1 and derivative growth transverse to
    the flow is exactly lambda^(number of roof crossings). A non-constant roof
    (rho != 0) makes the flow topologically mixing. */
struct FlowSpec {
  std::array<std::array<std::int64_t, 2>, 2> map{{{2, 1}, {1, 1}}};
  double roof_amplitude = 0.2;          // |rho| < 1
  std::array<int, 2> roof_mode{1, 0};   // m

  // Derived at construction.
  double expanding_eigenvalue = 0.0;    // lambda > 1
  double log_expanding_eigenvalue = 0.0;
  Vec2 unstable_dir{};                  // unit eigenvector for lambda
  Vec2 stable_dir{};                    // unit eigenvector for 1/lambda (up to sign of det)

  static FlowSpec make(const std::array<std::array<std::int64_t, 2>, 2>& map,
                       double roof_amplitude, const std::array<int, 2>& roof_mode);

  double roof(const TorusPoint& u) const {
    const double phase = roof_mode[0] * u.x + roof_mode[1] * u.y;
    return 1.0 + roof_amplitude * std::cos(6.283185307179586476925286766559 * phase);
  }

  double min_roof() const { return 1.0 - std::abs(roof_amplitude); }

  TorusPoint apply_map(const TorusPoint& u) const {
    return {wrap01(static_cast<double>(map[0][0]) * u.x + static_cast<double>(map[0][1]) * u.y),
            wrap01(static_cast<double>(map[1][0]) * u.x + static_cast<double>(map[1][1]) * u.y)};
  }

  TorusPoint apply_map_inverse(const TorusPoint& u) const {
    return {wrap01(static_cast<double>(inv_[0][0]) * u.x + static_cast<double>(inv_[0][1]) * u.y),
            wrap01(static_cast<double>(inv_[1][0]) * u.x + static_cast<double>(inv_[1][1]) * u.y)};
  }

  // Exact map on rational points; denominator is preserved.
  RationalPoint apply_map(const RationalPoint& p) const;

  std::array<std::array<std::int64_t, 2>, 2> inverse_map() const { return inv_; }

 private:
  std::array<std::array<std::int64_t, 2>, 2> inv_{{{1, -1}, {-1, 2}}};
};

}  // namespace tclab
