#pragma once

#include "tclab/suspension.hpp"

namespace tclab {

// Point of X = Y1 x Y2.
struct ProductPoint {
  SuspensionPoint x1{};
  SuspensionPoint x2{};
};

// The product action: a = (s, t) moves the factors independently.
inline ProductPoint product_flow(const FlowSpec& spec1, const FlowSpec& spec2, const Vec2& a,
                                 const ProductPoint& x) {
  return {flow(spec1, a.x, x.x1), flow(spec2, a.y, x.x2)};
}

// Distance on X: max of the factor suspension distances.
inline double product_dist(const FlowSpec& spec1, const FlowSpec& spec2, const ProductPoint& p,
                           const ProductPoint& q) {
  return std::max(suspension_dist(spec1, p.x1, q.x1), suspension_dist(spec2, p.x2, q.x2));
}

}  // namespace tclab
