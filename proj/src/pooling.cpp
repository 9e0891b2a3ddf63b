#include "heavytail/pooling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "heavytail/errors.hpp"

namespace heavytail::pooling {
namespace {

// (weight, stream rank) in canonical order: descending weight, zero weights
// dropped. Equal weights may land on either stream; the summed law and the
// fixed-order sum below are invariant either way.
std::vector<std::pair<double, std::uint64_t>> canonical_components(
    const stable_calc::WeightVector& w) {
  std::vector<double> pos;
  for (double t : w.weights)
    if (t > 0.0) pos.push_back(t);
  std::stable_sort(pos.begin(), pos.end(), std::greater<double>());
  std::vector<std::pair<double, std::uint64_t>> out;
  out.reserve(pos.size());
  for (std::size_t r = 0; r < pos.size(); ++r) out.emplace_back(pos[r], r);
  return out;
}

SampleBatch pool_with(const std::function<double(const rng::Stream&, std::uint64_t)>& draw,
                      const stable_calc::WeightVector& weights, std::size_t n,
                      std::uint64_t seed) {
  stable_calc::validate(weights);
  if (n < 1) throw ParameterError("pool_sample: n must be >= 1");
  const auto comps = canonical_components(weights);
  std::vector<rng::Stream> streams;
  streams.reserve(comps.size());
  for (const auto& [t, rank] : comps) streams.push_back(rng::Stream::from(seed, rank));

  SampleBatch batch;
  batch.seed = seed;
  batch.values.resize(n);
  rng::parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < comps.size(); ++k) {
        const double v = draw(streams[k], i);
        if (v == kInf) {
          acc = kInf;
          break;
        }
        acc += comps[k].first * v;
      }
      batch.values[i] = acc;
    }
  });
  return batch;
}

}  // namespace

SampleBatch pool_sample(const PoolConfig& cfg) {
  return pool_with(
      [&cfg](const rng::Stream& s, std::uint64_t i) { return cfg.spec.sample_at(s, i); },
      cfg.weights, cfg.n, cfg.seed);
}

SampleBatch pool_sample_fn(const std::function<double(const rng::Stream&, std::uint64_t)>& draw,
                           const stable_calc::WeightVector& weights, std::size_t n,
                           std::uint64_t seed) {
  return pool_with(draw, weights, n, seed);
}

DiversificationReport diversification_report(const PoolConfig& cfg) {
  DiversificationReport rep;
  rep.n = cfg.n;
  rep.seed = cfg.seed;
  rep.below_verdict_grade = cfg.n < 1000;
  const SampleBatch single = sample(cfg.spec, cfg.seed, cfg.n, kSingleRiskStream);
  const SampleBatch pooled = pool_sample(cfg);
  rep.verdict = orders::st_dominance(single, pooled, cfg.confidence, cfg.grid_size);

  if (cfg.spec.support().lo >= 0.0) {
    std::vector<double> s = single.values, p = pooled.values;
    std::sort(s.begin(), s.end());
    std::sort(p.begin(), p.end());
    rep.penalty_curve.reserve(99);
    for (int c = 1; c <= 99; ++c) {
      const double u = c / 100.0;
      const auto pick = [u](const std::vector<double>& v) {
        const auto idx = static_cast<std::size_t>(
            std::ceil(u * static_cast<double>(v.size())) - 1);
        return v[std::min(idx, v.size() - 1)];
      };
      const double qs = pick(s), qp = pick(p);
      if (qs > 0.0 && std::isfinite(qs) && std::isfinite(qp))
        rep.penalty_curve.push_back({u, qs, qp, qp / qs});
    }
  }
  return rep;
}

double deadly_pool_prob(const DeadlyRiskSpec& d) {
  if (!(d.p > 0.0) || !(d.p < 1.0)) throw ParameterError("deadly: p must be in (0,1)");
  stable_calc::validate(d.weights);
  const auto k = static_cast<double>(d.weights.positive_count());
  return 1.0 - std::pow(1.0 - d.p, k);
}

StopLoss stop_loss(const SampleBatch& samples, double t) {
  if (std::isnan(t)) throw DomainError("stop_loss: t is NaN");
  const std::size_t n = samples.n();
  if (n == 0) throw ParameterError("stop_loss: empty batch");
  std::vector<double> payoff(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = samples.values[i];
    payoff[i] = x == kInf ? 0.0 : std::max(t - x, 0.0);
  }
  const double mean = rng::pairwise_sum(payoff) / static_cast<double>(n);
  for (double& v : payoff) v = (v - mean) * (v - mean);
  const double var = rng::pairwise_sum(payoff) / static_cast<double>(n > 1 ? n - 1 : 1);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

DistributionSpec example_construction() {
  std::vector<std::pair<double, DistributionSpec>> parts;
  parts.emplace_back(0.4, DistributionSpec::uniform(0.0, 2.0));
  parts.emplace_back(0.4, DistributionSpec::uniform(2.0, 4.0));
  parts.emplace_back(0.2, DistributionSpec::scaled(1.0, 3.0, DistributionSpec::pareto(1.0)));
  return DistributionSpec::mixture(std::move(parts));
}

double ks_distance(const SampleBatch& x, const SampleBatch& y) {
  std::vector<double> xs = x.values, ys = y.values;
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double nx = static_cast<double>(xs.size());
  const double ny = static_cast<double>(ys.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    const double t = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] <= t) ++i;
    while (j < ys.size() && ys[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_critical_value(std::size_t nx, std::size_t ny, double significance) {
  if (!(significance > 0.0) || !(significance < 1.0))
    throw ParameterError("ks_critical_value: significance must be in (0,1)");
  const double c = std::sqrt(-0.5 * std::log(significance / 2.0));
  const double fx = static_cast<double>(nx), fy = static_cast<double>(ny);
  return c * std::sqrt((fx + fy) / (fx * fy));
}

}  // namespace heavytail::pooling
