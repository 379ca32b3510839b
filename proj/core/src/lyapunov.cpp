#include "tclab/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tclab/errors.hpp"
#include "tclab/parallel.hpp"
#include "tclab/rng.hpp"

namespace tclab {

const char* label_name(CoarseLabel label) {
  switch (label) {
    case CoarseLabel::unstable1: return "+chi1";
    case CoarseLabel::stable1: return "-chi1";
    case CoarseLabel::unstable2: return "+chi2";
    case CoarseLabel::stable2: return "-chi2";
  }
  return "?";
}

MarkedPoints marked_points(const TimeChangedAction& tca) {
  auto mid = [](const PeriodicOrbit& orbit) {
    return orbit.at_arc_time(0.5 * orbit.roofs[0]);
  };
  MarkedPoints mp;
  mp.x = {mid(tca.cocycle.bump1.plus_orbit), mid(tca.cocycle.bump2.minus_orbit)};
  mp.y = {mid(tca.cocycle.bump1.minus_orbit), mid(tca.cocycle.bump2.plus_orbit)};
  return mp;
}

namespace {

// Bump values and factor expansion rates at a marked product point.
struct MarkedContext {
  bool valid = false;
  double u1 = 0.0, u2 = 0.0;       // bump values (constant on the orbits)
  double lambda1 = 0.0, lambda2 = 0.0;  // k log(lambda_A) / P per factor orbit
};

MarkedContext marked_context(const TimeChangedAction& tca, const ProductPoint& x) {
  MarkedContext ctx;
  const int side1 = tca.cocycle.bump1.orbit_of(tca.spec1, x.x1);
  const int side2 = tca.cocycle.bump2.orbit_of(tca.spec2, x.x2);
  if (side1 == 0 || side2 == 0) return ctx;
  ctx.valid = true;
  const BumpSpec& b1 = tca.cocycle.bump1;
  const BumpSpec& b2 = tca.cocycle.bump2;
  const PeriodicOrbit& o1 = side1 > 0 ? b1.plus_orbit : b1.minus_orbit;
  const PeriodicOrbit& o2 = side2 > 0 ? b2.plus_orbit : b2.minus_orbit;
  ctx.u1 = side1 * b1.delta;
  ctx.u2 = tca.cocycle.coupling == Coupling::first_factor_only ? 0.0 : side2 * b2.delta;
  ctx.lambda1 = o1.unit_time_exponent(tca.spec1);
  ctx.lambda2 = o2.unit_time_exponent(tca.spec2);
  return ctx;
}

double estimate_from_phi(const MarkedContext& ctx, CoarseLabel label, const Vec2& phi_value,
                         double T) {
  const double c = label_factor(label) == 1 ? phi_value.x : phi_value.y;
  const double lambda = label_factor(label) == 1 ? ctx.lambda1 : ctx.lambda2;
  return label_sign(label) * lambda * c / T;
}

double norm6(const Tangent& t) {
  double s = 0.0;
  for (double v : t) s += v * v;
  return std::sqrt(s);
}

Tangent chart_diff6(const TimeChangedAction& tca, const ProductPoint& p, const ProductPoint& q) {
  const ChartDiff d1 = suspension_diff(tca.spec1, p.x1, q.x1);
  const ChartDiff d2 = suspension_diff(tca.spec2, p.x2, q.x2);
  return {d1.du1, d1.du2, d1.dtau, d2.du1, d2.du2, d2.dtau};
}

ProductPoint offset_point(const TimeChangedAction& tca, const ProductPoint& x, const Tangent& v,
                          double scale) {
  SuspensionPoint x1{{wrap01(x.x1.base.x + scale * v[0]), wrap01(x.x1.base.y + scale * v[1])},
                     x.x1.tau + scale * v[2]};
  SuspensionPoint x2{{wrap01(x.x2.base.x + scale * v[3]), wrap01(x.x2.base.y + scale * v[4])},
                     x.x2.tau + scale * v[5]};
  // flow(0, .) renormalizes tau into [0, r(u)).
  return {flow(tca.spec1, 0.0, x1), flow(tca.spec2, 0.0, x2)};
}

Vec2 anosov_element_for(CoarseLabel label) {
  switch (label) {
    case CoarseLabel::unstable1: return {1.0, 0.0};
    case CoarseLabel::stable1: return {-1.0, 0.0};
    case CoarseLabel::unstable2: return {0.0, 1.0};
    case CoarseLabel::stable2: return {0.0, -1.0};
  }
  return {1.0, 0.0};
}

}  // namespace

double closed_form_exponent(const TimeChangedAction& tca, CoarseLabel label, bool at_y,
                            const Vec2& a) {
  const MarkedPoints mp = marked_points(tca);
  const MarkedContext ctx = marked_context(tca, at_y ? mp.y : mp.x);
  // beta is the linear map [[1, -u2], [-u1, 1]] on the marked orbits; phi is
  // its inverse [[1, u2], [u1, 1]] / (1 - u1 u2).
  const double det = 1.0 - ctx.u1 * ctx.u2;
  const Vec2 phi_value{(a.x + ctx.u2 * a.y) / det, (ctx.u1 * a.x + a.y) / det};
  return estimate_from_phi(ctx, label, phi_value, 1.0);
}

Tangent coarse_direction_estimate(const TimeChangedAction& tca, const ProductPoint& x,
                                  CoarseLabel label) {
  const Vec2 a = anosov_element_for(label);
  constexpr double eps = 1e-8;
  Rng rng(0x636f6172u + static_cast<std::uint64_t>(label));
  Tangent v{};
  for (int i = 0; i < 6; ++i) v[i] = rng.uniform(-1.0, 1.0);
  v[2] = v[5] = 0.0;
  double n = norm6(v);
  for (double& c : v) c /= n;

  ProductPoint cur = x;
  for (int iter = 0; iter < 100; ++iter) {
    const ProductPoint cur_next = act(tca, a, cur);
    const ProductPoint off_next = act(tca, a, offset_point(tca, cur, v, eps));
    Tangent w = chart_diff6(tca, cur_next, off_next);
    // Project out the two orbit (flow) directions.
    w[2] = w[5] = 0.0;
    n = norm6(w);
    if (n < 1e-13)
      throw DegenerateDirectionError("coarse_direction_estimate: pushed vector vanished");
    double dot_wv = 0.0;
    for (int i = 0; i < 6; ++i) dot_wv += w[i] * v[i];
    const double flip = dot_wv < 0.0 ? -1.0 : 1.0;
    for (double& c : w) c *= flip / n;
    double dist = 0.0;
    for (int i = 0; i < 6; ++i) dist += (w[i] - v[i]) * (w[i] - v[i]);
    v = w;
    cur = cur_next;
    if (std::sqrt(dist) <= 1e-10) return v;
  }
  throw NonConvergenceError("coarse_direction_estimate: power iteration did not settle in 100 steps");
}

double finite_time_exponent(const TimeChangedAction& tca, const Vec2& a, const ProductPoint& x,
                            CoarseLabel label, double T) {
  const MarkedContext ctx = marked_context(tca, x);
  if (ctx.valid) {
    const InversionResult inv = phi(tca, a * T, x);
    return estimate_from_phi(ctx, label, inv.phi, T);
  }

  // Two-point separation with renormalization every unit time.
  const Tangent dir = coarse_direction_estimate(tca, x, label);
  constexpr double eps = 1e-8;
  const int steps = std::max(1, static_cast<int>(std::llround(T)));
  ProductPoint base = x;
  ProductPoint shadow = offset_point(tca, x, dir, eps);
  double log_sum = 0.0;
  for (int k = 0; k < steps; ++k) {
    base = act(tca, a, base);
    shadow = act(tca, a, shadow);
    Tangent d = chart_diff6(tca, base, shadow);
    const double sep = norm6(d);
    if (sep < 1e-14)
      throw DegenerateDirectionError(
          "finite_time_exponent: separation collapsed below 1e-14 (vector fell into a "
          "faster-contracting direction)");
    log_sum += std::log(sep / eps);
    shadow = offset_point(tca, base, d, eps / sep);
  }
  return log_sum / static_cast<double>(steps);
}

std::vector<Vec2> unit_direction_grid(int count) {
  std::vector<Vec2> grid;
  grid.reserve(count);
  for (int j = 0; j < count; ++j) {
    const double angle = 6.283185307179586476925286766559 * j / count;
    grid.push_back({std::cos(angle), std::sin(angle)});
  }
  return grid;
}

namespace {

ZeroLine fit_zero_line(const std::vector<double>& estimates, const std::vector<Vec2>& grid,
                       const std::function<double(double)>& estimate_at_angle) {
  ZeroLine line;
  const int n = static_cast<int>(grid.size());
  const double two_pi = 6.283185307179586476925286766559;
  for (int j = 0; j < n; ++j) {
    const double e0 = estimates[j];
    const double e1 = estimates[(j + 1) % n];
    double zero_angle;
    if (e0 == 0.0) {
      zero_angle = two_pi * j / n;
    } else if (e0 * e1 < 0.0) {
      double lo = two_pi * j / n;
      double hi = two_pi * (j + 1) / n;
      double flo = e0;
      while (hi - lo > 3e-6) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = estimate_at_angle(mid);
        if (fmid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fmid < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fmid;
        }
      }
      zero_angle = 0.5 * (lo + hi);
    } else {
      continue;
    }
    line.found = true;
    line.angle = std::fmod(zero_angle, 3.141592653589793238462643383279);
    if (line.angle < 0.0) line.angle += 3.141592653589793238462643383279;
    const double ds = std::cos(line.angle);
    const double dt = std::sin(line.angle);
    line.slope_ds_dt = ds / dt;
    line.slope_dt_ds = dt / ds;
    break;  // antipodal partner carries the same line
  }
  return line;
}

}  // namespace

ExponentField exponent_field(const TimeChangedAction& tca, CoarseLabel label,
                             const std::vector<std::pair<std::string, ProductPoint>>& points,
                             int grid_directions, double T, unsigned threads) {
  ExponentField field;
  field.label = label;
  field.horizon = T;
  field.grid = unit_direction_grid(grid_directions);
  for (const auto& [id, pt] : points) {
    PointField pf;
    pf.point_id = id;
    pf.point = pt;
    pf.estimates.assign(field.grid.size(), 0.0);
    parallel_for(field.grid.size(), threads, [&](std::size_t j) {
      pf.estimates[j] = finite_time_exponent(tca, field.grid[j], pt, label, T);
    });
    pf.zero_line = fit_zero_line(pf.estimates, field.grid, [&](double angle) {
      return finite_time_exponent(tca, {std::cos(angle), std::sin(angle)}, pt, label, T);
    });
    field.points.push_back(std::move(pf));
  }
  return field;
}

std::vector<ExponentField> marked_exponent_fields(const TimeChangedAction& tca,
                                                  int grid_directions, double T,
                                                  unsigned threads) {
  const MarkedPoints mp = marked_points(tca);
  const std::vector<std::pair<std::string, ProductPoint>> pts{{"x", mp.x}, {"y", mp.y}};
  const std::vector<Vec2> grid = unit_direction_grid(grid_directions);

  std::vector<ExponentField> fields(kAllLabels.size());
  for (std::size_t li = 0; li < kAllLabels.size(); ++li) {
    fields[li].label = kAllLabels[li];
    fields[li].horizon = T;
    fields[li].grid = grid;
  }

  for (const auto& [id, pt] : pts) {
    const MarkedContext ctx = marked_context(tca, pt);
    std::array<PointField, 4> pfs;
    for (std::size_t li = 0; li < kAllLabels.size(); ++li) {
      pfs[li].point_id = id;
      pfs[li].point = pt;
      pfs[li].estimates.assign(grid.size(), 0.0);
    }
    // One inversion per direction serves all four labels.
    parallel_for(grid.size(), threads, [&](std::size_t j) {
      const InversionResult inv = phi(tca, grid[j] * T, pt);
      for (std::size_t li = 0; li < kAllLabels.size(); ++li)
        pfs[li].estimates[j] = estimate_from_phi(ctx, kAllLabels[li], inv.phi, T);
    });
    for (std::size_t li = 0; li < kAllLabels.size(); ++li) {
      const CoarseLabel label = kAllLabels[li];
      pfs[li].zero_line = fit_zero_line(pfs[li].estimates, grid, [&](double angle) {
        const Vec2 a{std::cos(angle), std::sin(angle)};
        const InversionResult inv = phi(tca, a * T, pt);
        return estimate_from_phi(ctx, label, inv.phi, T);
      });
      fields[li].points.push_back(std::move(pfs[li]));
    }
  }
  return fields;
}

double rank_one_threshold(const TimeChangedAction& tca, double factor, double floor) {
  const double delta = tca.delta();
  const double l1p = tca.cocycle.bump1.plus_orbit.unit_time_exponent(tca.spec1);
  const double l1m = tca.cocycle.bump1.minus_orbit.unit_time_exponent(tca.spec1);
  const double l2p = tca.cocycle.bump2.plus_orbit.unit_time_exponent(tca.spec2);
  const double l2m = tca.cocycle.bump2.minus_orbit.unit_time_exponent(tca.spec2);
  const double min_lambda = std::min(std::min(l1p, l1m), std::min(l2p, l2m));
  return std::max(factor * delta * min_lambda / (1.0 + delta * delta), floor);
}

RankOneVerdict rank_one_verdict(const std::vector<ExponentField>& fields, double threshold) {
  RankOneVerdict verdict;
  verdict.threshold = threshold;
  verdict.no_rank_one_factors = true;
  for (const auto& field : fields) {
    for (std::size_t j = 0; j < field.grid.size(); ++j) {
      double best = -1.0;
      const PointField* best_point = nullptr;
      for (const auto& pf : field.points) {
        const double e = std::abs(pf.estimates[j]);
        if (e > best) {
          best = e;
          best_point = &pf;
        }
      }
      RankOneWitness w{field.label, field.grid[j], best_point ? best_point->point_id : "",
                       best_point ? best_point->estimates[j] : 0.0};
      if (best >= threshold) {
        verdict.witnesses.push_back(w);
      } else {
        verdict.failures.push_back(w);
        verdict.no_rank_one_factors = false;
      }
    }
  }
  return verdict;
}

HomogeneityVerdict homogeneity_verdict(const std::vector<ExponentField>& fields,
                                       double distinct_tol) {
  HomogeneityVerdict verdict;
  for (const auto& field : fields) {
    const PointField* at_x = nullptr;
    const PointField* at_y = nullptr;
    for (const auto& pf : field.points) {
      if (pf.point_id == "x") at_x = &pf;
      if (pf.point_id == "y") at_y = &pf;
    }
    if (!at_x || !at_y) continue;
    LabelZeroLines lines{field.label, at_x->zero_line, at_y->zero_line, 0.0, false};
    if (lines.at_x.found && lines.at_y.found) {
      double d = std::abs(lines.at_x.angle - lines.at_y.angle);
      const double pi = 3.141592653589793238462643383279;
      d = std::fmod(d, pi);
      if (d > pi / 2.0) d = pi - d;
      lines.angle_between = d;
      lines.distinct = d > distinct_tol;
    }
    verdict.lines.push_back(lines);
    if (lines.distinct) verdict.not_homogeneous = true;
  }
  return verdict;
}

}  // namespace tclab
