#pragma once

#include <string>
#include <vector>

#include "heavytail/stable.hpp"

namespace heavytail::stable_calc {

/// Convex-combination weights: nonnegative, summing to 1 within 1e-12.
struct WeightVector {
  std::vector<double> weights;

  std::size_t positive_count() const noexcept;
};

void validate(const WeightVector& w);

/// Parse "0.5,0.3,0.2" (CLI surface).
WeightVector parse_weights(const std::string& csv);

/// Exact law of sum_i theta_i X_i for i.i.d. X_i ~ S(alpha, beta), alpha <= 1:
///   alpha < 1: distributed as gamma * Z,  gamma = (sum theta_i^alpha)^(1/alpha) >= 1
///   alpha = 1: distributed as Z + delta,  delta = -(2 beta / pi) sum theta_i ln theta_i
/// Zero weights contribute nothing (0 ln 0 := 0).
struct MixResult {
  stable::StableParams base;
  double gamma = 1.0;
  double delta = 0.0;
};

MixResult mix_params(const stable::StableParams& params, const WeightVector& w);

/// Whether every nontrivial pooling of i.i.d. S(alpha, beta) risks
/// stochastically dominates a single one (pooling can only hurt).
struct PoolingClassification {
  bool pooling_increases_risk = false;
  std::string reason;
};

PoolingClassification classify_pooling(const stable::StableParams& params);

}  // namespace heavytail::stable_calc
