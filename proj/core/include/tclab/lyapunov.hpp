#pragma once

#include <array>
#include <string>
#include <vector>

#include "tclab/timechange.hpp"

namespace tclab {

// The four coarse Lyapunov directions of the product of two Anosov 3-flows:
// the unstable/stable class of each factor, transverse to the two orbit
// directions.
enum class CoarseLabel { unstable1, stable1, unstable2, stable2 };

inline constexpr std::array<CoarseLabel, 4> kAllLabels{
    CoarseLabel::unstable1, CoarseLabel::stable1, CoarseLabel::unstable2, CoarseLabel::stable2};

const char* label_name(CoarseLabel label);
inline int label_factor(CoarseLabel label) {
  return (label == CoarseLabel::unstable1 || label == CoarseLabel::stable1) ? 1 : 2;
}
inline double label_sign(CoarseLabel label) {
  return (label == CoarseLabel::unstable1 || label == CoarseLabel::unstable2) ? 1.0 : -1.0;
}

// The two marked product points: x = (p1, q2) pairs the +delta orbit of
// factor 1 with the -delta orbit of factor 2, y = (p2, q1) the reverse.
struct MarkedPoints {
  ProductPoint x{};
  ProductPoint y{};
};
MarkedPoints marked_points(const TimeChangedAction& tca);

/** Exponent of a coarse direction at a marked point, from the locally
    constant closed form of phi there: the bumps are constant on the marked
    orbits, so beta is the linear map [[1, -u2], [-u1, 1]] and the growth of
    the factor's unstable class is exp(lambda_orbit * phi_component). */
double closed_form_exponent(const TimeChangedAction& tca, CoarseLabel label, bool at_y,
                            const Vec2& a);

/** Finite-time estimate of (1/T) log |d act(Ta)|_{E^label}|(x).

    At the marked product points (both factors on their marked orbits) the
    estimate composes the inverted phi(Ta, x) with the orbit's exact expansion
    rate per unit flow time; no finite differences are involved. At generic
    points it runs two-point separation with renormalization every unit time
    (separation 1e-8 along the estimated coarse direction). Throws
    DegenerateDirectionError if the separation collapses below 1e-14. */
double finite_time_exponent(const TimeChangedAction& tca, const Vec2& a, const ProductPoint& x,
                            CoarseLabel label, double T);

// Tangent chart vector (du1, dv1, dtau1, du2, dv2, dtau2).
using Tangent = std::array<double, 6>;

/** Dominant non-orbit direction under the Anosov element expanding the label:
    power iteration of finite-difference pushes with the two orbit directions
    projected out. Throws NonConvergenceError after 100 iterations. */
Tangent coarse_direction_estimate(const TimeChangedAction& tca, const ProductPoint& x,
                                  CoarseLabel label);

struct ZeroLine {
  bool found = false;
  double angle = 0.0;        // direction of the zero set in the (s, t) plane, mod pi
  double slope_ds_dt = 0.0;  // s/t along the line (infinite for a horizontal-a line)
  double slope_dt_ds = 0.0;
};

struct PointField {
  std::string point_id;
  ProductPoint point;
  std::vector<double> estimates;  // one per grid direction
  ZeroLine zero_line;
};

struct ExponentField {
  CoarseLabel label = CoarseLabel::unstable1;
  double horizon = 0.0;
  std::vector<Vec2> grid;  // unit directions
  std::vector<PointField> points;
};

std::vector<Vec2> unit_direction_grid(int count);

/** Fills estimates for every grid direction and point and fits the zero line
    per point by sign-change bisection along the circle. Points must include
    the marked points for the verdicts to be meaningful. */
ExponentField exponent_field(const TimeChangedAction& tca, CoarseLabel label,
                             const std::vector<std::pair<std::string, ProductPoint>>& points,
                             int grid_directions, double T, unsigned threads = 1);

// All four labels over the marked points, sharing one phi inversion per
// (point, direction).
std::vector<ExponentField> marked_exponent_fields(const TimeChangedAction& tca,
                                                  int grid_directions, double T,
                                                  unsigned threads = 1);

struct RankOneWitness {
  CoarseLabel label;
  Vec2 direction;
  std::string point_id;  // point achieving the max |estimate|
  double estimate;
};

struct RankOneVerdict {
  bool no_rank_one_factors = false;
  double threshold = 0.0;
  // One witness per (label, direction) that cleared the threshold.
  std::vector<RankOneWitness> witnesses;
  // Directions where every point's |estimate| fell below the threshold.
  std::vector<RankOneWitness> failures;
};

// Threshold c0 = max(factor * delta * min(lambda) / (1 + delta^2), floor); the
// floor keeps the delta = 0 product action decidable.
double rank_one_threshold(const TimeChangedAction& tca, double factor = 0.5, double floor = 1e-3);

RankOneVerdict rank_one_verdict(const std::vector<ExponentField>& fields, double threshold);

struct LabelZeroLines {
  CoarseLabel label;
  ZeroLine at_x, at_y;
  double angle_between = 0.0;
  bool distinct = false;
};

struct HomogeneityVerdict {
  bool not_homogeneous = false;
  std::vector<LabelZeroLines> lines;
};

/** A homogeneous action's coarse exponents come from a single linear
    functional per label, so the zero lines fitted at the two marked points
    must coincide; distinct lines for any label rule homogeneity out. */
HomogeneityVerdict homogeneity_verdict(const std::vector<ExponentField>& fields,
                                       double distinct_tol = 1e-3);

}  // namespace tclab
