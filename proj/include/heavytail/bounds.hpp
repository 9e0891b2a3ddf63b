#pragma once

#include <string>
#include <vector>

#include "heavytail/distributions.hpp"

namespace heavytail::bounds {

enum class Baseline { Pareto, Frechet, Cauchy };

Baseline baseline_from_string(const std::string& name);
const char* to_string(Baseline b);

/// Partial CDF knowledge: points (x, F(x)) strictly increasing in both
/// coordinates, probabilities in (0,1) (anchors at 0/1 allowed but unusable
/// for interpolation).
struct CdfConstraintSet {
  std::vector<std::pair<double, double>> points;
};

void validate(const CdfConstraintSet& c);

/// Necessary lower bound on F(query_x) for any class member: maps the two
/// bracketing constraints through the baseline quantile G^{-1}, interpolates
/// linearly (the membership map G^{-1} o F is concave), and maps back through
/// G. Any candidate whose CDF falls below the bound is excluded from the
/// class. Queries at a constraint point return that constraint's probability;
/// queries outside the hull are refused.
double necessary_bound(Baseline baseline, const CdfConstraintSet& constraints, double query_x);

struct Violation {
  double x;
  double cdf_value;
  double bound;
};

/// Draws constraints from f's own CDF at the given abscissae and reports
/// every query point where f's CDF undercuts the necessary bound (each one a
/// witness that f is outside the baseline's class).
std::vector<Violation> exclusion_check(const DistributionSpec& f, Baseline baseline,
                                       const std::vector<double>& constraint_xs,
                                       const std::vector<double>& query_xs);

/// Parse "2:0.4,4:0.8" (CLI surface).
CdfConstraintSet parse_constraints(const std::string& csv);

}  // namespace heavytail::bounds
