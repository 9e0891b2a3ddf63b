#include "heavytail/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heavytail/errors.hpp"

namespace heavytail::bounds {
namespace {

constexpr double kPi = 3.14159265358979323846;

double baseline_quantile(Baseline b, double u) {
  switch (b) {
    case Baseline::Pareto: return 1.0 / (1.0 - u);
    case Baseline::Frechet: return -1.0 / std::log(u);
    case Baseline::Cauchy: return std::tan(kPi * (u - 0.5));
  }
  return 0.0;
}

double baseline_cdf(Baseline b, double v) {
  switch (b) {
    case Baseline::Pareto: return v < 1.0 ? 0.0 : 1.0 - 1.0 / v;
    case Baseline::Frechet: return v <= 0.0 ? 0.0 : std::exp(-1.0 / v);
    case Baseline::Cauchy: return std::atan(v) / kPi + 0.5;
  }
  return 0.0;
}

}  // namespace

Baseline baseline_from_string(const std::string& name) {
  if (name == "pareto") return Baseline::Pareto;
  if (name == "frechet") return Baseline::Frechet;
  if (name == "cauchy") return Baseline::Cauchy;
  throw ParameterError("bounds: unknown baseline '" + name + "'");
}

const char* to_string(Baseline b) {
  switch (b) {
    case Baseline::Pareto: return "pareto";
    case Baseline::Frechet: return "frechet";
    case Baseline::Cauchy: return "cauchy";
  }
  return "?";
}

void validate(const CdfConstraintSet& c) {
  if (c.points.size() < 2) throw ParameterError("constraints: need at least two points");
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const auto& [x, p] = c.points[i];
    if (!std::isfinite(x)) throw ParameterError("constraints: abscissae must be finite");
    if (!(p >= 0.0) || !(p <= 1.0)) throw ParameterError("constraints: probabilities in [0,1]");
    if (i > 0) {
      if (!(x > c.points[i - 1].first))
        throw ParameterError("constraints: abscissae must be strictly increasing");
      if (!(p > c.points[i - 1].second))
        throw ParameterError("constraints: probabilities must be strictly increasing");
    }
  }
}

double necessary_bound(Baseline baseline, const CdfConstraintSet& constraints, double query_x) {
  validate(constraints);
  const auto& pts = constraints.points;
  for (const auto& [x, p] : pts)
    if (x == query_x) return p;  // interpolation endpoint
  if (query_x < pts.front().first || query_x > pts.back().first)
    throw DomainError("necessary_bound: query outside the constraint hull");

  std::size_t k = 1;
  while (pts[k].first < query_x) ++k;
  const auto& [x1, p1] = pts[k - 1];
  const auto& [x2, p2] = pts[k];
  if (!(p1 > 0.0) || !(p2 < 1.0))
    throw DomainError("necessary_bound: bracketing probabilities must be interior");

  const double g1 = baseline_quantile(baseline, p1);
  const double g2 = baseline_quantile(baseline, p2);
  const double w = (query_x - x1) / (x2 - x1);
  return baseline_cdf(baseline, g1 + w * (g2 - g1));
}

std::vector<Violation> exclusion_check(const DistributionSpec& f, Baseline baseline,
                                       const std::vector<double>& constraint_xs,
                                       const std::vector<double>& query_xs) {
  CdfConstraintSet cs;
  for (double x : constraint_xs) cs.points.emplace_back(x, f.cdf(x));
  validate(cs);
  std::vector<Violation> out;
  for (double q : query_xs) {
    const double bound = necessary_bound(baseline, cs, q);
    const double val = f.cdf(q);
    if (val < bound - 1e-12) out.push_back({q, val, bound});
  }
  return out;
}

CdfConstraintSet parse_constraints(const std::string& csv) {
  CdfConstraintSet cs;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw ParameterError("constraints: expected x:p entries, got '" + tok + "'");
    cs.points.emplace_back(std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1)));
  }
  validate(cs);
  return cs;
}

}  // namespace heavytail::bounds
