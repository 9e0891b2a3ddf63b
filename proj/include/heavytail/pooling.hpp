#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "heavytail/distributions.hpp"
#include "heavytail/orders.hpp"
#include "heavytail/stable_calculus.hpp"

namespace heavytail::pooling {

struct PoolConfig {
  DistributionSpec spec;
  stable_calc::WeightVector weights;
  std::size_t n = 100000;
  std::uint64_t seed = 0;
  double confidence = 0.99;
  std::size_t grid_size = 200;
};

/// Batch of n realizations of sum_i theta_i X_i with X_i i.i.d. from spec.
/// Component i consumes the substream of its rank in the descending weight
/// order, so weight permutations reproduce bit-identical batches. A +inf
/// summand with positive weight makes the whole realization +inf.
SampleBatch pool_sample(const PoolConfig& cfg);

/// Callable-based variant: draw_component(stream, i) produces one i.i.d.
/// component realization; used to pool composed risks (sums, maxima).
SampleBatch pool_sample_fn(const std::function<double(const rng::Stream&, std::uint64_t)>& draw,
                           const stable_calc::WeightVector& weights, std::size_t n,
                           std::uint64_t seed);

/// Stream index reserved for the independently drawn single-risk comparison
/// batch (never collides with component ranks).
inline constexpr std::uint64_t kSingleRiskStream = 0x8000000000000000ULL;

struct PenaltyPoint {
  double u;
  double q_single;
  double q_pool;
  double penalty;  // q_pool / q_single
};

struct DiversificationReport {
  orders::DominanceVerdict verdict;
  std::vector<PenaltyPoint> penalty_curve;  // 99 centiles; empty unless spec is
                                            // supported on [0, inf)
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool below_verdict_grade = false;  // n < 1000
};

/// Single risk vs pooled risk: st_dominance on independently drawn batches,
/// plus the quantile penalty curve for positive-support specs.
DiversificationReport diversification_report(const PoolConfig& cfg);

/// Two-point deadly risk P(X = inf) = p = 1 - P(X = 0).
struct DeadlyRiskSpec {
  double p;
  stable_calc::WeightVector weights;
};

/// Exact P(pool = +inf) = 1 - (1-p)^k with k = #{theta_i > 0}. No sampling.
double deadly_pool_prob(const DeadlyRiskSpec& d);

/// Mean of (t - x)+ over the batch (+inf samples contribute 0), with its
/// standard error. The integrand is bounded by t, so the estimate is valid
/// for infinite-mean laws too.
struct StopLoss {
  double value;
  double std_error;
};

StopLoss stop_loss(const SampleBatch& samples, double t);

/// Fixed infinite-mean construction with P(X in [0,2]) = P(X in (2,4]) = 0.4
/// and a shifted Pareto(1) tail above 4:
///   0.4 U(0,2) + 0.4 U(2,4) + 0.2 (3 + Pareto(1)).
DistributionSpec example_construction();

/// Two-sample Kolmogorov-Smirnov distance (finite values; +inf treated as
/// larger than every finite value).
double ks_distance(const SampleBatch& x, const SampleBatch& y);

/// Large-sample two-sample KS critical value at the given significance,
/// c(a) * sqrt((nx+ny)/(nx*ny)), c(a) = sqrt(-ln(a/2)/2).
double ks_critical_value(std::size_t nx, std::size_t ny, double significance);

}  // namespace heavytail::pooling
