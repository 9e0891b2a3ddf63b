#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "heavytail/distributions.hpp"

namespace heavytail::orders {

enum class Relation {
  LeftDominatedByRight,  // X <=_st Y: F_X above F_Y beyond the band
  RightDominatedByLeft,
  Crossing,      // both one-sided violations exceed the band
  Inconclusive,  // neither does
};

const char* to_string(Relation r);

/// Outcome of an empirical first-order dominance comparison on a merged
/// quantile grid with simultaneous DKW bands.
struct DominanceVerdict {
  Relation relation = Relation::Inconclusive;
  double band_halfwidth = 0.0;      // sqrt(ln(2/(1-confidence)) / (2 min(nx,ny)))
  double decision_threshold = 0.0;  // sum of the two per-sample halfwidths
  double confidence = 0.0;
  std::vector<double> grid;
  double max_violation = 0.0;  // largest one-sided excess AGAINST the relation
  double left_above_max = 0.0;   // max over grid of F_x - F_y
  double right_above_max = 0.0;  // max over grid of F_y - F_x
};

/// Compare two batches: ECDFs evaluated on a merged-quantile grid (midpoints
/// between adjacent order statistics, so no evaluation lands on a jump).
/// +inf values count in n but never appear as finite grid points, so they
/// only lower the ECDF at finite t.
DominanceVerdict st_dominance(const SampleBatch& x, const SampleBatch& y, double confidence = 0.99,
                              std::size_t grid_size = 200);

/// DKW band halfwidth sqrt(ln(2/(1-confidence))/(2n)).
double dkw_halfwidth(std::size_t n, double confidence);

/// Empirical CDF of a batch at t (finite values <= t over total n).
double ecdf_at(const std::vector<double>& sorted_values, double t);

enum class Shape { Convex, Concave, Neither, Indeterminate };

const char* to_string(Shape s);

/// Grid certificate of convexity/concavity. second_differences[i] is the
/// scaled second divided difference
///   (chord(x[i]) - phi[i]) / loc_i,  loc_i = max(1, |phi| over the triple),
/// positive where the points are locally convex. Verdict rules:
///   Convex  <=> all entries >= -tolerance
///   Concave <=> all entries <= +tolerance
///   Indeterminate when propagated value errors exceed tolerance.
struct ConvexityCertificate {
  Shape verdict = Shape::Indeterminate;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> second_differences;
  double tolerance = 0.0;
  double min_second_difference = 0.0;
  double max_second_difference = 0.0;
  std::size_t witness_index = 0;  // index of the extreme violation, if any
};

ConvexityCertificate convexity_certificate(const std::vector<double>& grid,
                                           const std::vector<double>& values, double tolerance,
                                           const std::vector<double>& value_errors = {});

/// phi(x) = quantile_g(cdf_f(x)) on the given grid; grid points where
/// cdf_f(x) hits 0 or 1 are dropped (unusable for the inverse) and counted.
struct RelativeInverse {
  std::vector<double> grid;    // retained abscissae
  std::vector<double> values;  // phi at the retained points
  std::vector<double> errors;  // quantile error estimates (0 for closed forms)
  std::size_t dropped = 0;
};

RelativeInverse relative_inverse(const DistributionSpec& f, const DistributionSpec& g,
                                 const std::vector<double>& grid);

/// u-grid log-spaced toward both endpoints of [lo, hi] (tails are where the
/// counterexamples live).
std::vector<double> tail_log_grid(double lo, double hi, std::size_t n);

struct SkewOrderConfig {
  double u_lo = 0.01;
  double u_hi = 0.99;
  std::size_t grid_size = 200;
  double tolerance = 1e-7;
};

/// Certifies f <=_skew g (g at least as skewed as f) at grid resolution:
/// builds x = quantile_f(u) on a two-sided log grid, evaluates
/// phi = quantile_g(cdf_f(x)) and certifies its convexity. A Convex verdict
/// is evidence at the stated resolution, not a proof; Fail witnesses are
/// conclusive grid points.
ConvexityCertificate skew_order_check(const DistributionSpec& f, const DistributionSpec& g,
                                      const SkewOrderConfig& cfg = {});

/// Callable-based variant for composed candidates (e.g. convex increasing
/// transforms of a spec, built by quantile composition).
ConvexityCertificate skew_order_check_fn(const std::function<double(double)>& base_quantile,
                                         const std::function<double(double)>& candidate_quantile,
                                         const SkewOrderConfig& cfg = {});

}  // namespace heavytail::orders
