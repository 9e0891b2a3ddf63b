#include "heavytail/orders.hpp"

#include <algorithm>
#include <cmath>

#include "heavytail/errors.hpp"

namespace heavytail::orders {
namespace {

std::vector<double> sorted_finite(const SampleBatch& b) {
  std::vector<double> v;
  v.reserve(b.values.size());
  for (double x : b.values)
    if (x != kInf) v.push_back(x);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

const char* to_string(Relation r) {
  switch (r) {
    case Relation::LeftDominatedByRight: return "left_dominated_by_right";
    case Relation::RightDominatedByLeft: return "right_dominated_by_left";
    case Relation::Crossing: return "crossing";
    case Relation::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Shape s) {
  switch (s) {
    case Shape::Convex: return "convex";
    case Shape::Concave: return "concave";
    case Shape::Neither: return "neither";
    case Shape::Indeterminate: return "indeterminate";
  }
  return "?";
}

double dkw_halfwidth(std::size_t n, double confidence) {
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

double ecdf_at(const std::vector<double>& sorted_values, double t) {
  // counts relative to the full batch size; +inf values were stripped by the
  // caller but remain in the denominator via n passed separately
  const auto it = std::upper_bound(sorted_values.begin(), sorted_values.end(), t);
  return static_cast<double>(it - sorted_values.begin());
}

DominanceVerdict st_dominance(const SampleBatch& x, const SampleBatch& y, double confidence,
                              std::size_t grid_size) {
  if (x.values.empty() || y.values.empty())
    throw ParameterError("st_dominance: batches must be nonempty");
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw ParameterError("st_dominance: confidence must be in (0,1)");

  const auto xs = sorted_finite(x);
  const auto ys = sorted_finite(y);
  const double nx = static_cast<double>(x.n()), ny = static_cast<double>(y.n());

  // merged order statistics; grid points are midpoints between neighbours so
  // no evaluation sits exactly on an ECDF jump
  std::vector<double> merged;
  merged.reserve(xs.size() + ys.size());
  std::merge(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(merged));
  if (merged.size() < 2) throw InsufficientDataError("st_dominance: all values infinite");

  DominanceVerdict v;
  v.confidence = confidence;
  v.grid.reserve(grid_size);
  const std::size_t m = merged.size();
  for (std::size_t j = 0; j < grid_size; ++j) {
    const std::size_t pos = std::min<std::size_t>(
        1 + (j * (m - 1)) / grid_size, m - 1);
    const double t = 0.5 * (merged[pos - 1] + merged[pos]);
    if (v.grid.empty() || t > v.grid.back()) v.grid.push_back(t);
  }

  double left_above = 0.0, right_above = 0.0;
  for (double t : v.grid) {
    const double fx = ecdf_at(xs, t) / nx;
    const double fy = ecdf_at(ys, t) / ny;
    left_above = std::max(left_above, fx - fy);
    right_above = std::max(right_above, fy - fx);
  }
  v.left_above_max = left_above;
  v.right_above_max = right_above;

  v.band_halfwidth = dkw_halfwidth(std::min(x.n(), y.n()), confidence);
  v.decision_threshold = dkw_halfwidth(x.n(), confidence) + dkw_halfwidth(y.n(), confidence);

  const bool left_sig = left_above > v.decision_threshold;
  const bool right_sig = right_above > v.decision_threshold;
  if (left_sig && right_sig) {
    v.relation = Relation::Crossing;
    v.max_violation = std::min(left_above, right_above);
  } else if (left_sig) {
    // F_x significantly above F_y somewhere, no significant reverse: X <=_st Y
    v.relation = Relation::LeftDominatedByRight;
    v.max_violation = right_above;
  } else if (right_sig) {
    v.relation = Relation::RightDominatedByLeft;
    v.max_violation = left_above;
  } else {
    v.relation = Relation::Inconclusive;
    v.max_violation = std::max(left_above, right_above);
  }
  return v;
}

ConvexityCertificate convexity_certificate(const std::vector<double>& grid,
                                           const std::vector<double>& values, double tolerance,
                                           const std::vector<double>& value_errors) {
  if (grid.size() != values.size())
    throw ParameterError("convexity_certificate: grid/values size mismatch");
  if (grid.size() < 3)
    throw InsufficientDataError("convexity_certificate: need at least 3 usable points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ParameterError("convexity_certificate: grid must be strictly increasing");

  ConvexityCertificate cert;
  cert.grid = grid;
  cert.values = values;
  cert.tolerance = tolerance;
  cert.second_differences.resize(grid.size() - 2);

  bool indeterminate = false;
  double lo = kInf, hi = -kInf;
  std::size_t lo_idx = 0, hi_idx = 0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double hl = grid[i] - grid[i - 1];
    const double hr = grid[i + 1] - grid[i];
    const double wl = hr / (hl + hr);
    const double chord = wl * values[i - 1] + (1.0 - wl) * values[i + 1];
    const double loc = std::max({1.0, std::abs(values[i - 1]), std::abs(values[i]),
                                 std::abs(values[i + 1])});
    const double s = (chord - values[i]) / loc;
    cert.second_differences[i - 1] = s;
    if (s < lo) { lo = s; lo_idx = i; }
    if (s > hi) { hi = s; hi_idx = i; }
    if (!value_errors.empty()) {
      const double err =
          value_errors[i - 1] + value_errors[i] + value_errors[i + 1];
      if (err / loc > tolerance) indeterminate = true;
    }
  }
  cert.min_second_difference = lo;
  cert.max_second_difference = hi;

  const bool convex_ok = lo >= -tolerance;
  const bool concave_ok = hi <= tolerance;
  if (indeterminate && !(convex_ok || concave_ok)) {
    cert.verdict = Shape::Indeterminate;
  } else if (convex_ok) {
    cert.verdict = Shape::Convex;
  } else if (concave_ok) {
    cert.verdict = Shape::Concave;
  } else {
    cert.verdict = Shape::Neither;
  }
  // witness: the convexity violation if there is one, else the concavity one
  cert.witness_index = (lo < -tolerance) ? lo_idx : (hi > tolerance ? hi_idx : lo_idx);
  return cert;
}

RelativeInverse relative_inverse(const DistributionSpec& f, const DistributionSpec& g,
                                 const std::vector<double>& grid) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ParameterError("relative_inverse: grid must be strictly increasing");
  RelativeInverse out;
  out.grid.reserve(grid.size());
  out.values.reserve(grid.size());
  for (double x : grid) {
    const double p = f.cdf(x);
    if (p <= 0.0 || p >= 1.0) {
      ++out.dropped;
      continue;
    }
    auto q = g.quantile_with_error(p);
    out.grid.push_back(x);
    out.values.push_back(q.value);
    out.errors.push_back(q.error);
  }
  return out;
}

std::vector<double> tail_log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi < 1.0) || !(lo < hi))
    throw ParameterError("tail_log_grid: need 0 < lo < hi < 1");
  if (n < 3) throw ParameterError("tail_log_grid: need at least 3 points");
  // log-spaced in u below the midpoint and in 1-u above it
  std::vector<double> us;
  us.reserve(n);
  const double mid = 0.5 * (std::min(hi, 0.5) + std::max(lo, 0.5));
  const std::size_t nl = n / 2, nr = n - nl;
  for (std::size_t i = 0; i < nl; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(nl);
    us.push_back(std::exp(std::log(lo) + t * (std::log(mid) - std::log(lo))));
  }
  for (std::size_t i = 0; i < nr; ++i) {
    const double t = static_cast<double>(i + 1) / static_cast<double>(nr);
    us.push_back(1.0 - std::exp(std::log(1.0 - mid) +
                                t * (std::log(1.0 - hi) - std::log(1.0 - mid))));
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  return us;
}

namespace {

ConvexityCertificate check_from_points(std::vector<double> xs, std::vector<double> phis,
                                       std::vector<double> errs, double tolerance) {
  // enforce a strictly increasing abscissa (flat spots from atoms collapse)
  std::vector<double> gx, gv, ge;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(phis[i])) continue;
    if (!gx.empty() && !(xs[i] > gx.back())) continue;
    gx.push_back(xs[i]);
    gv.push_back(phis[i]);
    ge.push_back(errs.empty() ? 0.0 : errs[i]);
  }
  if (gx.size() < 3)
    throw InsufficientDataError("skew_order_check: fewer than 3 usable grid points");
  return convexity_certificate(gx, gv, tolerance, ge);
}

}  // namespace

ConvexityCertificate skew_order_check(const DistributionSpec& f, const DistributionSpec& g,
                                      const SkewOrderConfig& cfg) {
  const auto us = tail_log_grid(cfg.u_lo, cfg.u_hi, cfg.grid_size);
  std::vector<double> xs, phis, errs;
  xs.reserve(us.size());
  for (double u : us) {
    auto qf = f.quantile_with_error(u);
    auto qg = g.quantile_with_error(u);  // cdf_f(quantile_f(u)) = u for continuous f
    xs.push_back(qf.value);
    phis.push_back(qg.value);
    errs.push_back(qg.error);
  }
  return check_from_points(std::move(xs), std::move(phis), std::move(errs), cfg.tolerance);
}

ConvexityCertificate skew_order_check_fn(const std::function<double(double)>& base_quantile,
                                         const std::function<double(double)>& candidate_quantile,
                                         const SkewOrderConfig& cfg) {
  const auto us = tail_log_grid(cfg.u_lo, cfg.u_hi, cfg.grid_size);
  std::vector<double> xs, phis;
  for (double u : us) {
    xs.push_back(base_quantile(u));
    phis.push_back(candidate_quantile(u));
  }
  return check_from_points(std::move(xs), std::move(phis), {}, cfg.tolerance);
}

}  // namespace heavytail::orders
