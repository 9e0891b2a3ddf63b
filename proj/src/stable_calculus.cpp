#include "heavytail/stable_calculus.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "heavytail/errors.hpp"

namespace heavytail::stable_calc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::size_t WeightVector::positive_count() const noexcept {
  std::size_t k = 0;
  for (double w : weights)
    if (w > 0.0) ++k;
  return k;
}

void validate(const WeightVector& w) {
  if (w.weights.empty()) throw ParameterError("weights: need at least one entry");
  double sum = 0.0;
  for (double v : w.weights) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ParameterError("weights: entries must be nonnegative and finite");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ParameterError("weights: must sum to 1 within 1e-12, got " + std::to_string(sum));
}

WeightVector parse_weights(const std::string& csv) {
  WeightVector w;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw ParameterError("weights: bad entry '" + tok + "'");
    w.weights.push_back(v);
  }
  validate(w);
  return w;
}

MixResult mix_params(const stable::StableParams& params, const WeightVector& w) {
  stable::validate(params);
  validate(w);
  if (params.alpha > 1.0)
    throw UnsupportedError("mix_params: alpha > 1 mixtures are outside classification scope");

  MixResult r;
  r.base = params;
  if (params.alpha == 1.0) {
    double ent = 0.0;  // sum theta ln theta over positive weights
    for (double t : w.weights)
      if (t > 0.0) ent += t * std::log(t);
    r.gamma = 1.0;
    r.delta = -(2.0 * params.beta / kPi) * ent + 0.0;  // + 0.0 clears any -0
  } else {
    double s = 0.0;
    for (double t : w.weights)
      if (t > 0.0) s += std::pow(t, params.alpha);
    r.gamma = std::pow(s, 1.0 / params.alpha);
    r.delta = 0.0;
  }
  return r;
}

PoolingClassification classify_pooling(const stable::StableParams& p) {
  stable::validate(p);
  PoolingClassification out;
  if (p.alpha > 1.0) {
    out.pooling_increases_risk = false;
    out.reason = "alpha > 1: E|Z| is finite, so no nondegenerate law can qualify";
  } else if (p.alpha == 1.0) {
    if (p.beta >= 0.0) {
      out.pooling_increases_risk = true;
      out.reason = "alpha = 1 and beta >= 0: pooling shifts the law right by "
                   "delta = -(2 beta/pi) sum w_i ln w_i >= 0";
    } else {
      out.pooling_increases_risk = false;
      out.reason = "alpha = 1 and beta < 0: the pooled shift delta is negative "
                   "for nondegenerate weights";
    }
  } else {
    if (p.beta == 1.0) {
      out.pooling_increases_risk = true;
      out.reason = "alpha < 1 and beta = 1: Z >= 0 and pooling scales by "
                   "gamma = (sum w_i^alpha)^(1/alpha) >= 1";
    } else {
      out.pooling_increases_risk = false;
      out.reason = "alpha < 1 and beta < 1: P(Z >= 0) < 1, so the gamma >= 1 "
                   "rescaling does not dominate the single risk";
    }
  }
  return out;
}

}  // namespace heavytail::stable_calc
