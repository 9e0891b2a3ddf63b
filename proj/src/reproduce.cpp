#include "heavytail/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "heavytail/bounds.hpp"
#include "heavytail/classes.hpp"
#include "heavytail/distributions.hpp"
#include "heavytail/orders.hpp"
#include "heavytail/pooling.hpp"
#include "heavytail/stable_calculus.hpp"

namespace heavytail::reproduce {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Runner {
  const Options& opts;
  std::vector<CheckResult> results;

  void run(const std::string& name, const std::string& claim,
           const std::function<bool(std::string&)>& body) {
    CheckResult r;
    r.name = name;
    r.claim = claim;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.pass = body(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  }
};

double empirical_quantile(std::vector<double> v, double u) {
  std::sort(v.begin(), v.end());
  const auto idx =
      static_cast<std::size_t>(std::ceil(u * static_cast<double>(v.size())) - 1);
  return v[std::min(idx, v.size() - 1)];
}

}  // namespace

std::vector<CheckResult> run_battery(const Options& opts) {
  Runner r{opts, {}};
  const auto seed = opts.seed;
  const auto n = opts.n;

  r.run("closed_form_cdfs", "pinned CDF values for each closed-form family", [&](std::string& d) {
    struct Row {
      DistributionSpec spec;
      double x, want;
    };
    const Row rows[] = {
        {DistributionSpec::cauchy(), 0.0, 0.5},
        {DistributionSpec::pareto(1.0), 2.0, 0.5},
        {DistributionSpec::frechet(1.0), 1.0, std::exp(-1.0)},
        {DistributionSpec::half_cauchy(), 1.0, 0.5},
    };
    double worst = 0.0;
    for (const auto& row : rows) worst = std::max(worst, std::abs(row.spec.cdf(row.x) - row.want));
    d = "worst |F(x) - expected| = " + fmt(worst);
    return worst <= 1e-12;
  });

  r.run("stable_cdf_cauchy", "stable CDF at (alpha=1, beta=0) equals the arctan closed form",
        [&](std::string& d) {
          double worst = 0.0;
          for (double x = -30.0; x <= 30.0; x += 0.75)
            worst = std::max(worst, std::abs(stable::cdf({1.0, 0.0}, x) -
                                             (std::atan(x) / kPi + 0.5)));
          d = "worst diff = " + fmt(worst);
          return worst <= 1e-8;
        });

  r.run("stable_cdf_levy", "stable CDF at (alpha=1/2, beta=1) equals erfc(1/sqrt(2x))",
        [&](std::string& d) {
          double worst = 0.0;
          for (double x : {0.1, 0.3, 1.0, 2.198109338317732, 5.0, 25.0, 400.0})
            worst = std::max(worst, std::abs(stable::cdf({0.5, 1.0}, x) -
                                             std::erfc(1.0 / std::sqrt(2.0 * x))));
          d = "worst diff = " + fmt(worst);
          return worst <= 1e-6;
        });

  r.run("sampler_cdf_agreement",
        "CMS sampler ECDF sits inside the 99.9% DKW band of the stable CDF", [&](std::string& d) {
          const std::pair<double, double> params[] = {
              {1.0, 0.0}, {1.0, 1.0}, {0.5, 1.0}, {0.8, 1.0}, {1.5, 0.0}};
          const std::size_t m = std::min<std::size_t>(n, 100000);
          const double band = orders::dkw_halfwidth(m, 0.999);
          double worst = 0.0;
          for (auto [a, b] : params) {
            auto batch = sample(DistributionSpec::stable(a, b), seed, m);
            std::sort(batch.values.begin(), batch.values.end());
            for (std::size_t k = 1; k < 40; ++k) {
              const double t = batch.values[k * m / 40];
              const double emp =
                  orders::ecdf_at(batch.values, t) / static_cast<double>(m);
              worst = std::max(worst, std::abs(emp - stable::cdf({a, b}, t, 1e-8)));
            }
          }
          d = "worst |ecdf - cdf| = " + fmt(worst) + ", band = " + fmt(band);
          return worst < band;
        });

  r.run("pareto_pool_dominance",
        "pooling i.i.d. Pareto(1) halves is stochastically worse than one risk",
        [&](std::string& d) {
          pooling::PoolConfig cfg{DistributionSpec::pareto(1.0),
                                  stable_calc::WeightVector{{0.5, 0.5}}, n, seed,
                                  opts.confidence, 200};
          auto rep = pooling::diversification_report(cfg);
          d = std::string("relation = ") + orders::to_string(rep.verdict.relation) +
              ", reverse violation = " + fmt(rep.verdict.max_violation);
          return rep.verdict.relation == orders::Relation::LeftDominatedByRight &&
                 rep.verdict.max_violation <= rep.verdict.decision_threshold;
        });

  r.run("frechet_pool_dominance",
        "pooling Frechet(0.8) risks with weights (0.3, 0.7) is stochastically worse",
        [&](std::string& d) {
          pooling::PoolConfig cfg{DistributionSpec::frechet(0.8),
                                  stable_calc::WeightVector{{0.3, 0.7}}, n, seed,
                                  opts.confidence, 200};
          auto rep = pooling::diversification_report(cfg);
          d = std::string("relation = ") + orders::to_string(rep.verdict.relation);
          return rep.verdict.relation == orders::Relation::LeftDominatedByRight;
        });

  r.run("cauchy_pool_equality",
        "a Cauchy pool with weights (0.3, 0.7) has the law of a single Cauchy",
        [&](std::string& d) {
          pooling::PoolConfig cfg{DistributionSpec::cauchy(),
                                  stable_calc::WeightVector{{0.3, 0.7}}, n, seed,
                                  opts.confidence, 200};
          auto pooled = pooling::pool_sample(cfg);
          auto single = sample(DistributionSpec::cauchy(), seed, n, pooling::kSingleRiskStream);
          const double ks = pooling::ks_distance(single, pooled);
          const double crit = pooling::ks_critical_value(n, n, 0.01);
          d = "KS = " + fmt(ks) + ", 99% critical = " + fmt(crit);
          return ks < crit;
        });

  r.run("stable_mix_shift",
        "pooled S(1,1) halves shift the law right by delta = (2 ln 2)/pi", [&](std::string& d) {
          const auto mix = stable_calc::mix_params({1.0, 1.0}, {{0.5, 0.5}});
          pooling::PoolConfig cfg{DistributionSpec::stable(1.0, 1.0),
                                  stable_calc::WeightVector{{0.5, 0.5}}, n, seed,
                                  opts.confidence, 200};
          auto pooled = pooling::pool_sample(cfg);
          auto single = sample(cfg.spec, seed, n, pooling::kSingleRiskStream);
          const double shift = empirical_quantile(pooled.values, 0.5) -
                               empirical_quantile(single.values, 0.5);
          d = "measured shift = " + fmt(shift) + ", delta = " + fmt(mix.delta);
          return std::abs(shift - mix.delta) < 0.05 && std::abs(mix.gamma - 1.0) < 1e-12;
        });

  r.run("stable_mix_scale",
        "pooled S(1/2,1) halves scale the law by gamma = 2", [&](std::string& d) {
          const auto mix = stable_calc::mix_params({0.5, 1.0}, {{0.5, 0.5}});
          pooling::PoolConfig cfg{DistributionSpec::stable(0.5, 1.0),
                                  stable_calc::WeightVector{{0.5, 0.5}}, n, seed,
                                  opts.confidence, 200};
          auto pooled = pooling::pool_sample(cfg);
          double worst = 0.0;
          for (double u : {0.25, 0.5, 0.75}) {
            const double qp = empirical_quantile(pooled.values, u);
            const double qz = stable::quantile({0.5, 1.0}, u).value;
            worst = std::max(worst, std::abs(qp / qz - mix.gamma));
          }
          d = "gamma = " + fmt(mix.gamma) + ", worst |ratio - gamma| = " + fmt(worst);
          return std::abs(mix.gamma - 2.0) < 1e-12 && worst < 0.05;
        });

  r.run("stable_pooling_classes",
        "pooling hurts S(alpha,beta) exactly when alpha=1, beta>=0 or alpha<1, beta=1",
        [&](std::string& d) {
          struct Row {
            double a, b;
            bool want;
          };
          const Row rows[] = {{1.0, 0.0, true},  {1.0, 1.0, true},  {0.7, 1.0, true},
                              {1.2, 1.0, false}, {1.0, -0.3, false}, {0.7, 0.5, false}};
          for (const auto& row : rows) {
            if (stable_calc::classify_pooling({row.a, row.b}).pooling_increases_risk != row.want) {
              d = "misclassified (" + fmt(row.a) + ", " + fmt(row.b) + ")";
              return false;
            }
          }
          d = "6/6 classified";
          return true;
        });

  r.run("deadly_product_law",
        "P(pool = inf) = 1 - (1-p)^k exactly, and the Monte Carlo frequency agrees",
        [&](std::string& d) {
          const pooling::DeadlyRiskSpec spec{0.3, {{0.5, 0.5}}};
          const double exact = pooling::deadly_pool_prob(spec);
          const std::size_t m = 10000;
          pooling::PoolConfig cfg{DistributionSpec::two_point_deadly(0.3),
                                  stable_calc::WeightVector{{0.5, 0.5}}, m, seed,
                                  opts.confidence, 200};
          auto batch = pooling::pool_sample(cfg);
          const double freq =
              1.0 - static_cast<double>(batch.finite_count()) / static_cast<double>(m);
          const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(m));
          d = "exact = " + fmt(exact) + ", MC = " + fmt(freq);
          return exact == 0.51 && std::abs(freq - exact) <= 3.0 * sigma;
        });

  r.run("class_table",
        "Pareto(1) is super-Pareto; Frechet(1) super-Frechet and super-Cauchy; |Cauchy| is "
        "super-Cauchy but neither super-Frechet nor h-subadditive",
        [&](std::string& d) {
          using classes::HeavyTailClass;
          using classes::Membership;
          const auto pareto = classes::class_membership(DistributionSpec::pareto(1.0));
          const auto frechet = classes::class_membership(DistributionSpec::frechet(1.0));
          const auto halfc = classes::class_membership(DistributionSpec::half_cauchy());
          const bool ok =
              pareto.memberships.at(HeavyTailClass::SuperPareto) == Membership::Pass &&
              frechet.memberships.at(HeavyTailClass::SuperFrechet) == Membership::Pass &&
              frechet.memberships.at(HeavyTailClass::SuperCauchy) == Membership::Pass &&
              halfc.memberships.at(HeavyTailClass::SuperCauchy) == Membership::Pass &&
              halfc.memberships.at(HeavyTailClass::SuperFrechet) == Membership::Fail &&
              halfc.memberships.at(HeavyTailClass::ClassH) == Membership::Fail;
          d = ok ? "all six verdicts as expected" : "verdict table mismatch";
          return ok;
        });

  r.run("frechet_h_transform",
        "h(x) = -log F(1/x) of Frechet(a) is x^a: subadditive for a <= 1, not for a = 1.5",
        [&](std::string& d) {
          double worst = 0.0;
          for (double x : {0.1, 0.5, 1.0, 2.0, 7.0})
            worst = std::max(
                worst, std::abs(classes::h_transform(DistributionSpec::frechet(1.0), x) - x));
          std::vector<double> grid;
          for (int i = 0; i < 24; ++i) grid.push_back(0.05 * (i + 1));
          const auto sub1 =
              classes::subadditivity_check(DistributionSpec::frechet(0.5), grid, 1e-9);
          const auto sub2 =
              classes::subadditivity_check(DistributionSpec::frechet(1.5), grid, 1e-9);
          d = "identity worst diff = " + fmt(worst);
          return worst <= 1e-12 &&
                 sub1.verdict == classes::SubadditivityEvidence::Verdict::Pass &&
                 sub2.verdict == classes::SubadditivityEvidence::Verdict::Fail;
        });

  r.run("frechet_to_cauchy_concavity",
        "x -> tan(pi e^(-1/x) - pi/2) has nonpositive scaled second differences on a log grid",
        [&](std::string& d) {
          std::vector<double> grid, values;
          for (int i = 0; i < 500; ++i) {
            const double t = static_cast<double>(i) / 499.0;
            const double x = std::exp(std::log(0.01) + t * (std::log(100.0) - std::log(0.01)));
            grid.push_back(x);
            const double u = std::exp(-1.0 / x);
            values.push_back(u < 0.5 ? -1.0 / std::tan(kPi * u) : std::tan(kPi * (u - 0.5)));
          }
          const auto cert = orders::convexity_certificate(grid, values, 1e-7);
          d = std::string("verdict = ") + orders::to_string(cert.verdict) +
              ", max s = " + fmt(cert.max_second_difference);
          return cert.verdict == orders::Shape::Concave &&
                 cert.max_second_difference <= 1e-7;
        });

  r.run("quantile_bounds",
        "F(2)=0.4, F(4)=0.8 forces F(3) >= 0.7 / 0.698 / 0.654 under the Pareto / Frechet / "
        "Cauchy baselines",
        [&](std::string& d) {
          bounds::CdfConstraintSet cs{{{2.0, 0.4}, {4.0, 0.8}}};
          const double bp = bounds::necessary_bound(bounds::Baseline::Pareto, cs, 3.0);
          const double bf = bounds::necessary_bound(bounds::Baseline::Frechet, cs, 3.0);
          const double bc = bounds::necessary_bound(bounds::Baseline::Cauchy, cs, 3.0);
          d = "bounds = " + fmt(bp) + ", " + fmt(bf) + ", " + fmt(bc);
          return std::abs(bp - 0.7) < 5e-4 && std::abs(bf - 0.698) < 5e-4 &&
                 std::abs(bc - 0.654) < 5e-4 && bp >= bf && bf >= bc;
        });

  r.run("example_construction",
        "the fixed infinite-mean construction has F(2)=0.4, F(4)=0.8 and "
        "P(pool of two <= 3) >= 0.48",
        [&](std::string& d) {
          const auto spec = pooling::example_construction();
          if (std::abs(spec.cdf(2.0) - 0.4) > 1e-12 || std::abs(spec.cdf(4.0) - 0.8) > 1e-12) {
            d = "cdf constraints violated";
            return false;
          }
          const std::size_t m = std::max<std::size_t>(n, 1000000);
          pooling::PoolConfig cfg{spec, stable_calc::WeightVector{{0.5, 0.5}}, m, seed,
                                  opts.confidence, 200};
          auto batch = pooling::pool_sample(cfg);
          std::size_t count = 0;
          for (double v : batch.values)
            if (v <= 3.0) ++count;
          const double p = static_cast<double>(count) / static_cast<double>(m);
          d = "P(pool <= 3) = " + fmt(p);
          return p >= 0.48 - 3.0 * std::sqrt(0.48 * 0.52 / static_cast<double>(m));
        });

  r.run("stop_loss_mechanism",
        "E(4 - X)+ = 3 - ln 4 for one Pareto(1) risk and strictly exceeds the pooled value",
        [&](std::string& d) {
          auto single = sample(DistributionSpec::pareto(1.0), seed, n, pooling::kSingleRiskStream);
          pooling::PoolConfig cfg{DistributionSpec::pareto(1.0),
                                  stable_calc::WeightVector{{0.5, 0.5}}, n, seed,
                                  opts.confidence, 200};
          auto pooled = pooling::pool_sample(cfg);
          const auto sl_single = pooling::stop_loss(single, 4.0);
          const auto sl_pooled = pooling::stop_loss(pooled, 4.0);
          const double oracle = 3.0 - std::log(4.0);
          const double gap_sigma =
              std::sqrt(sl_single.std_error * sl_single.std_error +
                        sl_pooled.std_error * sl_pooled.std_error);
          d = "single = " + fmt(sl_single.value) + " (oracle " + fmt(oracle) +
              "), pooled = " + fmt(sl_pooled.value);
          return std::abs(sl_single.value - oracle) <= 3.0 * sl_single.std_error &&
                 sl_single.value - sl_pooled.value > 3.0 * gap_sigma;
        });

  r.run("conjecture_scans",
        "Cauchy <=_skew S(alpha,1) for alpha in {0.5, 0.7, 0.9} and S(1,b1) <=_skew S(1,b2) "
        "for (0,1), (-1,1) at grid resolution",
        [&](std::string& d) {
          orders::SkewOrderConfig cfg;
          cfg.grid_size = 80;
          const auto alpha_rows = classes::conjecture_scan_stable({0.5, 0.7, 0.9}, cfg);
          const auto beta_rows = classes::conjecture_scan_beta({{0.0, 1.0}, {-1.0, 1.0}}, cfg);
          std::size_t convex = 0, total = 0;
          for (const auto& rows : {alpha_rows, beta_rows})
            for (const auto& row : rows) {
              ++total;
              if (row.certificate.verdict == orders::Shape::Convex) ++convex;
            }
          std::ostringstream os;
          os << convex << "/" << total << " rows convex";
          d = os.str();
          return convex == total;
        });

  return std::move(r.results);
}

int print_results(const std::vector<CheckResult>& results) {
  int failures = 0;
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    if (!r.pass) ++failures;
    std::printf("[%s] %-*s  %s (%.2fs)\n", r.pass ? "PASS" : "FAIL",
                static_cast<int>(width), r.name.c_str(), r.detail.c_str(), r.seconds);
    if (!r.pass) std::printf("       claim: %s\n", r.claim.c_str());
  }
  std::printf("%zu checks, %d failure%s\n", results.size(), failures, failures == 1 ? "" : "s");
  return failures;
}

}  // namespace heavytail::reproduce
