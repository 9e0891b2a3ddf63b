#include "heavytail/classes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heavytail/errors.hpp"

namespace heavytail::classes {

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Pass: return "pass";
    case Membership::Fail: return "fail";
    case Membership::Indeterminate: return "indeterminate";
    case Membership::NotApplicable: return "not_applicable";
  }
  return "?";
}

const char* to_string(HeavyTailClass c) {
  switch (c) {
    case HeavyTailClass::SuperPareto: return "super_pareto";
    case HeavyTailClass::SuperFrechet: return "super_frechet";
    case HeavyTailClass::SuperCauchy: return "super_cauchy";
    case HeavyTailClass::ClassH: return "class_h";
  }
  return "?";
}

double h_transform(const DistributionSpec& f, double x) {
  if (!(x > 0.0)) throw DomainError("h_transform: x must be > 0");
  const double c = f.cdf(1.0 / x);
  if (c == 0.0) return kInf;  // reported explicitly as an infinite value
  return -std::log(c);
}

SubadditivityEvidence subadditivity_check(const DistributionSpec& f,
                                          const std::vector<double>& grid, double tolerance) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw ParameterError("subadditivity_check: grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw ParameterError("subadditivity_check: grid must be strictly increasing");
  }
  SubadditivityEvidence ev;
  ev.grid = grid;
  ev.tolerance = tolerance;
  std::vector<double> h(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) h[i] = h_transform(f, grid[i]);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      const double rhs = h[i] + h[j];
      if (rhs == kInf) {
        ++ev.skipped_pairs;  // h(x+y) <= inf holds trivially
        continue;
      }
      const double lhs = h_transform(f, grid[i] + grid[j]);
      const double excess = lhs - rhs;  // +inf - finite stays +inf: a witness
      if (excess > ev.max_excess) {
        ev.max_excess = excess;
        ev.witness_x = grid[i];
        ev.witness_y = grid[j];
        ev.witness_lhs = lhs;
        ev.witness_rhs = rhs;
      }
    }
  }
  ev.verdict = ev.max_excess > tolerance ? SubadditivityEvidence::Verdict::Fail
                                         : SubadditivityEvidence::Verdict::Pass;
  return ev;
}

namespace {

Membership from_certificate(const orders::ConvexityCertificate& cert) {
  switch (cert.verdict) {
    case orders::Shape::Convex: return Membership::Pass;
    case orders::Shape::Indeterminate: return Membership::Indeterminate;
    default: return Membership::Fail;  // a recorded convexity-violation witness
  }
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    g[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
  }
  return g;
}

}  // namespace

ClassReport class_membership(const DistributionSpec& f, const ClassConfig& cfg) {
  ClassReport report;
  report.config = cfg;
  const Support sup = f.support();

  struct Baseline {
    HeavyTailClass cls;
    DistributionSpec spec;
    double required_lo;  // candidate must live on [required_lo, inf); -inf = any
  };
  const Baseline baselines[] = {
      {HeavyTailClass::SuperPareto, DistributionSpec::pareto(1.0), 1.0},
      {HeavyTailClass::SuperFrechet, DistributionSpec::frechet(1.0), 0.0},
      {HeavyTailClass::SuperCauchy, DistributionSpec::cauchy(), -kInf},
  };

  for (const auto& b : baselines) {
    if (sup.lo < b.required_lo) {
      report.memberships[b.cls] = Membership::NotApplicable;
      continue;
    }
    auto cert = orders::skew_order_check(b.spec, f, cfg.skew);
    report.memberships[b.cls] = from_certificate(cert);
    report.certificates[b.cls] = std::move(cert);
  }

  if (sup.lo >= 0.0) {
    auto ev = subadditivity_check(f, log_grid(cfg.h_grid_lo, cfg.h_grid_hi, cfg.h_grid_size),
                                  cfg.h_tolerance);
    report.memberships[HeavyTailClass::ClassH] =
        ev.verdict == SubadditivityEvidence::Verdict::Pass ? Membership::Pass : Membership::Fail;
    report.h_evidence = std::move(ev);
  } else {
    report.memberships[HeavyTailClass::ClassH] = Membership::NotApplicable;
  }

  // chain order: SuperPareto => SuperFrechet => SuperCauchy on matched grids
  auto get = [&](HeavyTailClass c) { return report.memberships.at(c); };
  const std::pair<HeavyTailClass, HeavyTailClass> chain[] = {
      {HeavyTailClass::SuperPareto, HeavyTailClass::SuperFrechet},
      {HeavyTailClass::SuperFrechet, HeavyTailClass::SuperCauchy},
  };
  for (auto [narrow, wide] : chain) {
    if (get(narrow) == Membership::Pass && get(wide) == Membership::Fail) {
      std::ostringstream msg;
      msg << "class_membership: " << to_string(narrow) << " passed but " << to_string(wide)
          << " failed on matched grids";
      throw ConsistencyError(msg.str());
    }
  }
  return report;
}

std::vector<ScanRow> conjecture_scan_stable(const std::vector<double>& alphas,
                                            const orders::SkewOrderConfig& cfg) {
  std::vector<ScanRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) {
    if (!(a > 0.0) || !(a < 1.0))
      throw ParameterError("conjecture_scan_stable: alpha must be in (0,1)");
    ScanRow row;
    std::ostringstream label;
    label << "cauchy_vs_stable_alpha_" << a;
    row.label = label.str();
    try {
      row.certificate = orders::skew_order_check(DistributionSpec::cauchy(),
                                                 DistributionSpec::stable(a, 1.0), cfg);
    } catch (const AccuracyError&) {
      row.certificate.verdict = orders::Shape::Indeterminate;
      row.certificate.tolerance = cfg.tolerance;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ScanRow> conjecture_scan_beta(
    const std::vector<std::pair<double, double>>& beta_pairs,
    const orders::SkewOrderConfig& cfg) {
  std::vector<ScanRow> rows;
  rows.reserve(beta_pairs.size());
  for (auto [b1, b2] : beta_pairs) {
    if (!(b1 >= -1.0) || !(b2 <= 1.0) || !(b1 <= b2))
      throw ParameterError("conjecture_scan_beta: need -1 <= beta1 <= beta2 <= 1");
    ScanRow row;
    std::ostringstream label;
    label << "stable1_beta_" << b1 << "_vs_" << b2;
    row.label = label.str();
    try {
      row.certificate = orders::skew_order_check(DistributionSpec::stable(1.0, b1),
                                                 DistributionSpec::stable(1.0, b2), cfg);
    } catch (const AccuracyError&) {
      row.certificate.verdict = orders::Shape::Indeterminate;
      row.certificate.tolerance = cfg.tolerance;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace heavytail::classes
