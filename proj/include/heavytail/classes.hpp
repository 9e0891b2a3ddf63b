#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heavytail/distributions.hpp"
#include "heavytail/orders.hpp"

namespace heavytail::classes {

/// Membership semantics: Pass = no violation found at the stated grid
/// resolution (evidence, not proof); Fail = an explicit witness was found
/// (conclusive); NotApplicable = support incompatible with the baseline.
enum class Membership { Pass, Fail, Indeterminate, NotApplicable };

const char* to_string(Membership m);

enum class HeavyTailClass { SuperPareto, SuperFrechet, SuperCauchy, ClassH };

const char* to_string(HeavyTailClass c);

/// h(x) = -log F(1/x) for laws on [0, inf); +inf where F(1/x) = 0.
double h_transform(const DistributionSpec& f, double x);

/// Exhaustive pairwise subadditivity test of h over a positive grid.
/// Pass is grid-limited evidence; Fail records a concrete witness pair.
struct SubadditivityEvidence {
  enum class Verdict { Pass, Fail } verdict = Verdict::Pass;
  double max_excess = 0.0;  // max over pairs of h(x+y) - h(x) - h(y)
  double witness_x = 0.0, witness_y = 0.0;
  double witness_lhs = 0.0, witness_rhs = 0.0;
  std::size_t skipped_pairs = 0;  // pairs with an infinite right-hand side
  std::vector<double> grid;
  double tolerance = 0.0;
};

SubadditivityEvidence subadditivity_check(const DistributionSpec& f,
                                          const std::vector<double>& grid,
                                          double tolerance = 1e-9);

struct ClassConfig {
  orders::SkewOrderConfig skew;        // grids/tolerance for the skew checks
  double h_grid_lo = 1e-2;
  double h_grid_hi = 1e2;
  std::size_t h_grid_size = 40;
  double h_tolerance = 1e-9;
};

struct ClassReport {
  std::map<HeavyTailClass, Membership> memberships;
  std::map<HeavyTailClass, orders::ConvexityCertificate> certificates;
  std::optional<SubadditivityEvidence> h_evidence;
  ClassConfig config;
};

/// Runs the baseline <=_skew candidate check for each of the Pareto(1),
/// Frechet(1) and Cauchy baselines (convexity of quantile_f(cdf_baseline(x)),
/// i.e. the inverse of the "G^{-1}(F(x)) concave" form), plus the
/// h-subadditivity test; verdicts respect the SuperPareto => SuperFrechet =>
/// SuperCauchy chain, violations raising ConsistencyError.
ClassReport class_membership(const DistributionSpec& f, const ClassConfig& cfg = {});

/// One row of a numerical conjecture scan.
struct ScanRow {
  std::string label;
  orders::ConvexityCertificate certificate;
};

/// Evidence that Cauchy <=_skew S(alpha, 1) for each alpha in (0,1).
std::vector<ScanRow> conjecture_scan_stable(const std::vector<double>& alphas,
                                            const orders::SkewOrderConfig& cfg = {});

/// Evidence that S(1, beta1) <=_skew S(1, beta2) for each pair beta1 < beta2.
std::vector<ScanRow> conjecture_scan_beta(
    const std::vector<std::pair<double, double>>& beta_pairs,
    const orders::SkewOrderConfig& cfg = {});

}  // namespace heavytail::classes
