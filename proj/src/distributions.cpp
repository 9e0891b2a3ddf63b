#include "heavytail/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "heavytail/errors.hpp"

namespace heavytail {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& msg) {
  if (!ok) throw ParameterError(msg);
}

// Cauchy quantile, stable near both endpoints: tan(pi(u - 1/2)) computed via
// cotangent identities so tail grids keep full relative precision.
double cauchy_quantile(double u) {
  if (u == 0.5) return 0.0;
  if (u < 0.5) return -1.0 / std::tan(kPi * u);
  return 1.0 / std::tan(kPi * (1.0 - u));
}

double half_cauchy_quantile(double u) {
  if (u <= 0.5) return std::tan(kPi * u / 2.0);
  return 1.0 / std::tan(kPi * (1.0 - u) / 2.0);
}

}  // namespace

DistributionSpec DistributionSpec::pareto(double alpha) {
  require(alpha > 0.0, "pareto: shape must be > 0");
  return DistributionSpec(Pareto{alpha});
}

DistributionSpec DistributionSpec::frechet(double alpha) {
  require(alpha > 0.0, "frechet: shape must be > 0");
  return DistributionSpec(Frechet{alpha});
}

DistributionSpec DistributionSpec::cauchy() { return DistributionSpec(Cauchy{}); }

DistributionSpec DistributionSpec::half_cauchy() { return DistributionSpec(HalfCauchy{}); }

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "uniform: need lo < hi, finite");
  return DistributionSpec(Uniform{lo, hi});
}

DistributionSpec DistributionSpec::stable(double alpha, double beta) {
  stable::validate({alpha, beta});
  return DistributionSpec(Stable{{alpha, beta}});
}

DistributionSpec DistributionSpec::two_point_deadly(double p) {
  require(p > 0.0 && p < 1.0, "two_point_deadly: p must be in (0,1)");
  return DistributionSpec(TwoPointDeadly{p});
}

DistributionSpec DistributionSpec::scaled(double scale, double shift, DistributionSpec inner) {
  require(scale > 0.0 && std::isfinite(scale), "scaled: scale must be > 0");
  require(std::isfinite(shift), "scaled: shift must be finite");
  return DistributionSpec(
      Scaled{scale, shift, std::make_shared<const DistributionSpec>(std::move(inner))});
}

DistributionSpec DistributionSpec::mixture(
    std::vector<std::pair<double, DistributionSpec>> components) {
  require(!components.empty(), "mixture: need at least one component");
  double wsum = 0.0;
  Mixture mix;
  mix.components.reserve(components.size());
  for (auto& [w, spec] : components) {
    require(w >= 0.0 && std::isfinite(w), "mixture: weights must be nonnegative");
    wsum += w;
    mix.components.emplace_back(w, std::make_shared<const DistributionSpec>(std::move(spec)));
  }
  require(std::abs(wsum - 1.0) <= 1e-12, "mixture: weights must sum to 1 within 1e-12");
  return DistributionSpec(std::move(mix));
}

const char* DistributionSpec::family_name() const noexcept {
  struct V {
    const char* operator()(const Pareto&) const { return "pareto"; }
    const char* operator()(const Frechet&) const { return "frechet"; }
    const char* operator()(const Cauchy&) const { return "cauchy"; }
    const char* operator()(const HalfCauchy&) const { return "half_cauchy"; }
    const char* operator()(const Uniform&) const { return "uniform"; }
    const char* operator()(const Stable&) const { return "stable"; }
    const char* operator()(const TwoPointDeadly&) const { return "two_point_deadly"; }
    const char* operator()(const Scaled&) const { return "scaled"; }
    const char* operator()(const Mixture&) const { return "mixture"; }
  };
  return std::visit(V{}, node_);
}

double DistributionSpec::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("cdf: x is NaN");
  struct V {
    double x;
    double operator()(const Pareto& d) const {
      return x < 1.0 ? 0.0 : 1.0 - std::pow(x, -d.alpha);
    }
    double operator()(const Frechet& d) const {
      return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -d.alpha));
    }
    double operator()(const Cauchy&) const { return std::atan(x) / kPi + 0.5; }
    double operator()(const HalfCauchy&) const {
      return x < 0.0 ? 0.0 : 2.0 * std::atan(x) / kPi;
    }
    double operator()(const Uniform& d) const {
      if (x < d.lo) return 0.0;
      if (x >= d.hi) return 1.0;
      return (x - d.lo) / (d.hi - d.lo);
    }
    double operator()(const Stable& d) const { return stable::cdf(d.params, x); }
    double operator()(const TwoPointDeadly& d) const {
      if (x == kInf) return 1.0;
      return x < 0.0 ? 0.0 : 1.0 - d.p;
    }
    double operator()(const Scaled& d) const { return d.inner->cdf((x - d.shift) / d.scale); }
    double operator()(const Mixture& d) const {
      double f = 0.0;
      for (const auto& [w, c] : d.components) f += w * c->cdf(x);
      return std::min(f, 1.0);
    }
  };
  return std::visit(V{x}, node_);
}

DistributionSpec::QuantileValue DistributionSpec::quantile_with_error(double u) const {
  if (!(u > 0.0) || !(u < 1.0)) throw DomainError("quantile: u must be in (0,1)");
  struct V {
    double u;
    const DistributionSpec* self;
    QuantileValue operator()(const Pareto& d) const {
      return {std::pow(1.0 - u, -1.0 / d.alpha), 0.0};
    }
    QuantileValue operator()(const Frechet& d) const {
      // -log(u) via log1p keeps precision as u -> 1
      return {std::pow(-std::log1p(u - 1.0), -1.0 / d.alpha), 0.0};
    }
    QuantileValue operator()(const Cauchy&) const { return {cauchy_quantile(u), 0.0}; }
    QuantileValue operator()(const HalfCauchy&) const { return {half_cauchy_quantile(u), 0.0}; }
    QuantileValue operator()(const Uniform& d) const { return {d.lo + u * (d.hi - d.lo), 0.0}; }
    QuantileValue operator()(const Stable& d) const {
      auto q = stable::quantile(d.params, u);
      return {q.value, q.error};
    }
    QuantileValue operator()(const TwoPointDeadly& d) const {
      return {u <= 1.0 - d.p ? 0.0 : kInf, 0.0};
    }
    QuantileValue operator()(const Scaled& d) const {
      auto q = d.inner->quantile_with_error(u);
      return {q.value == kInf ? kInf : d.scale * q.value + d.shift, d.scale * q.error};
    }
    QuantileValue operator()(const Mixture&) const {
      // generalized inverse by monotone bisection on the mixture cdf
      double lo = -1.0, hi = 1.0;
      while (self->cdf(hi) < u) {
        hi = hi * 4.0 + 1.0;
        if (hi > 1e306) return {kInf, 0.0};  // mass at infinity below u-level
      }
      while (self->cdf(lo) >= u) {
        lo = lo * 4.0 - 1.0;
        if (lo < -1e306) break;
      }
      for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (self->cdf(mid) >= u)
          hi = mid;
        else
          lo = mid;
      }
      return {hi, hi - lo};
    }
  };
  return std::visit(V{u, this}, node_);
}

double DistributionSpec::quantile(double u) const { return quantile_with_error(u).value; }

Support DistributionSpec::support() const {
  struct V {
    Support operator()(const DistributionSpec::Pareto&) const { return {1.0, kInf, false}; }
    Support operator()(const DistributionSpec::Frechet&) const { return {0.0, kInf, false}; }
    Support operator()(const DistributionSpec::Cauchy&) const { return {-kInf, kInf, false}; }
    Support operator()(const DistributionSpec::HalfCauchy&) const { return {0.0, kInf, false}; }
    Support operator()(const DistributionSpec::Uniform& d) const { return {d.lo, d.hi, false}; }
    Support operator()(const DistributionSpec::Stable& d) const {
      if (stable::is_positively_supported(d.params)) return {0.0, kInf, false};
      if (d.params.alpha < 1.0 && d.params.beta == -1.0) return {-kInf, 0.0, false};
      return {-kInf, kInf, false};
    }
    Support operator()(const DistributionSpec::TwoPointDeadly&) const {
      return {0.0, 0.0, true};
    }
    Support operator()(const DistributionSpec::Scaled& d) const {
      Support s = d.inner->support();
      return {s.lo == -kInf ? -kInf : d.scale * s.lo + d.shift,
              s.hi == kInf ? kInf : d.scale * s.hi + d.shift, s.atom_at_infinity};
    }
    Support operator()(const DistributionSpec::Mixture& d) const {
      Support s{kInf, -kInf, false};
      for (const auto& [w, c] : d.components) {
        if (w == 0.0) continue;
        Support cs = c->support();
        s.lo = std::min(s.lo, cs.lo);
        s.hi = std::max(s.hi, cs.hi);
        s.atom_at_infinity = s.atom_at_infinity || cs.atom_at_infinity;
      }
      return s;
    }
  };
  return std::visit(V{}, node_);
}

double DistributionSpec::sample_at(const rng::Stream& s, std::uint64_t i) const {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Stable>) {
          return stable::cms_draw(d.params, s.uniform01(2 * i), s.uniform01(2 * i + 1));
        } else if constexpr (std::is_same_v<T, TwoPointDeadly>) {
          return s.uniform01(i) < d.p ? kInf : 0.0;
        } else if constexpr (std::is_same_v<T, Scaled>) {
          const double v = d.inner->sample_at(s, i);
          return v == kInf ? kInf : d.scale * v + d.shift;
        } else if constexpr (std::is_same_v<T, Mixture>) {
          const double pick = s.uniform01(i);
          double acc = 0.0;
          std::size_t k = 0;
          for (; k + 1 < d.components.size(); ++k) {
            acc += d.components[k].first;
            if (pick < acc) break;
          }
          return d.components[k].second->sample_at(s.child(k + 1), i);
        } else {
          return quantile(s.uniform01(i));  // inverse transform
        }
      },
      node_);
}

std::size_t SampleBatch::finite_count() const noexcept {
  std::size_t k = 0;
  for (double v : values)
    if (v != kInf) ++k;
  return k;
}

SampleBatch sample(const DistributionSpec& spec, std::uint64_t seed, std::size_t n,
                   std::uint64_t stream_index) {
  if (n < 1) throw ParameterError("sample: n must be >= 1");
  SampleBatch batch;
  batch.seed = seed;
  batch.values.resize(n);
  const rng::Stream stream = rng::Stream::from(seed, stream_index);
  rng::parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) batch.values[i] = spec.sample_at(stream, i);
  });
  return batch;
}

}  // namespace heavytail
