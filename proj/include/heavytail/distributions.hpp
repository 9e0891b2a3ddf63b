#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "heavytail/rng.hpp"
#include "heavytail/stable.hpp"

namespace heavytail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed support interval plus a possible atom at +infinity (deadly risks).
struct Support {
  double lo = -kInf;
  double hi = kInf;
  bool atom_at_infinity = false;
};

/// Immutable description of a univariate law. Values are cheap to copy and
/// safe to share across threads; nested specs are held by shared pointer.
///
/// cdf() is the exact closed form for every family except Stable, which
/// delegates to the characteristic-function inversion in stable.hpp.
/// quantile() is the generalized inverse inf{x : F(x) >= u}.
class DistributionSpec {
 public:
  struct Pareto {
    double alpha;  // F(x) = 1 - x^-alpha on [1, inf)
  };
  struct Frechet {
    double alpha;  // F(x) = exp(-x^-alpha) on [0, inf)
  };
  struct Cauchy {};      // F(x) = atan(x)/pi + 1/2
  struct HalfCauchy {};  // F(x) = 2 atan(x)/pi on [0, inf)
  struct Uniform {
    double lo, hi;
  };
  struct Stable {
    stable::StableParams params;
  };
  struct TwoPointDeadly {
    double p;  // P(X = +inf) = p = 1 - P(X = 0)
  };
  struct Scaled {
    double scale;  // > 0
    double shift;
    std::shared_ptr<const DistributionSpec> inner;
  };
  struct Mixture {
    std::vector<std::pair<double, std::shared_ptr<const DistributionSpec>>> components;
  };

  using Node = std::variant<Pareto, Frechet, Cauchy, HalfCauchy, Uniform, Stable,
                            TwoPointDeadly, Scaled, Mixture>;

  static DistributionSpec pareto(double alpha);
  static DistributionSpec frechet(double alpha);
  static DistributionSpec cauchy();
  static DistributionSpec half_cauchy();
  static DistributionSpec uniform(double lo, double hi);
  static DistributionSpec stable(double alpha, double beta);
  static DistributionSpec two_point_deadly(double p);
  static DistributionSpec scaled(double scale, double shift, DistributionSpec inner);
  static DistributionSpec mixture(std::vector<std::pair<double, DistributionSpec>> components);

  const Node& node() const noexcept { return node_; }
  const char* family_name() const noexcept;

  double cdf(double x) const;

  /// Generalized inverse; u must be in (0, 1). May return +inf
  /// (TwoPointDeadly upper tail).
  double quantile(double u) const;

  struct QuantileValue {
    double value;
    double error;  // 0 for closed forms; inversion estimate for Stable
  };
  QuantileValue quantile_with_error(double u) const;

  Support support() const;

  /// Draw the i-th value of the given stream. Pure function of
  /// (spec, stream, i); mixtures consume decorrelated substreams per
  /// component and Stable consumes two uniforms per draw.
  double sample_at(const rng::Stream& stream, std::uint64_t i) const;

 private:
  explicit DistributionSpec(Node node) : node_(std::move(node)) {}
  Node node_;
};

/// A reproducible batch: regenerating with the same (spec, seed, n) gives
/// bit-identical values. Values may include +inf.
struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;

  std::size_t n() const noexcept { return values.size(); }
  std::size_t finite_count() const noexcept;
};

/// Batch sampler; stream_index selects one of the independent substreams of
/// the seed (pooling assigns one stream per component rank).
SampleBatch sample(const DistributionSpec& spec, std::uint64_t seed, std::size_t n,
                   std::uint64_t stream_index = 0);

}  // namespace heavytail
