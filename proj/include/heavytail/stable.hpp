#pragma once

#include <cstdint>

namespace heavytail::stable {

/// Standard stable law S(alpha, beta): characteristic exponent alpha in
/// (0, 2], skewness beta in [-1, 1], characteristic function
///   exp(-|u|^a [1 - i beta tan(pi a/2) sign u])          (alpha != 1)
///   exp(-|u|   [1 + 2 i beta / pi sign(u) ln|u|])        (alpha == 1)
/// Scale/location variants are handled by the Scaled distribution wrapper.
struct StableParams {
  double alpha;
  double beta;
};

/// Throws ParameterError if outside the admissible box.
void validate(const StableParams& p);

/// CDF by oscillatory inversion of the characteristic function:
///   F(x) = 1/2 + (1/pi) * Int_0^inf exp(-u^a) sin(phase(u; x)) du / u.
/// The integral is split at the pi-crossings of the phase, each piece
/// integrated by fixed-order Gauss-Legendre, and the alternating partial-sum
/// sequence is extrapolated (Wynn epsilon), with an explicit truncation bound
/// as fallback. Throws AccuracyError (with the achieved estimate) if the
/// requested absolute tolerance cannot be met.
double cdf(const StableParams& p, double x, double abs_tol = 1e-10);

struct Quantile {
  double value;
  double error;  ///< conservative absolute error estimate
};

/// Generalized inverse of cdf() by bracket expansion + bisection.
/// rel_tol is relative to max(1, |value|).
Quantile quantile(const StableParams& p, double u, double rel_tol = 1e-10);

/// One Chambers-Mallows-Stuck draw from two independent uniforms in (0,1).
/// Samples exactly the parametrization of cdf() above.
double cms_draw(const StableParams& p, double u1, double u2);

/// Support lower bound is 0 when alpha < 1 and beta = 1 (and symmetrically
/// the upper bound is 0 for beta = -1); the law is supported on all of R
/// otherwise.
bool is_positively_supported(const StableParams& p);

}  // namespace heavytail::stable
