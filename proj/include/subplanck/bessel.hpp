#pragma once

namespace subplanck {

/// Largest order and argument accepted by scaled_bessel.
inline constexpr double kMaxBesselOrder = 2000.0;
inline constexpr double kMaxBesselArgument = 1e6;

/// Normalized Bessel kernel
///
///   Lambda_nu(xi) = Gamma(nu + 1) (xi / 2)^(-nu) J_nu(xi),
///
/// the average of exp(i k.p) over a sphere in 2 nu + 2 dimensions with
/// |k| |p| = xi. Lambda_nu(0) = 1 and |Lambda_nu| <= 1.
///
/// nu must be a non-negative integer or half-integer, nu <= 2000, and
/// 0 <= xi <= 1e6; anything else throws DomainError. Evaluation never
/// overflows: small xi uses the power series, large xi beyond the order uses
/// the Hankel expansion, and the rest uses Miller's backward recurrence with
/// logarithmic rescaling.
double scaled_bessel(double nu, double xi);

/// J_nu(xi) for the same orders, xi in the same domain. May underflow to 0
/// where J_nu is below the double range.
double bessel_j(double nu, double xi);

/// sin(u) / u with sinc(0) = 1.
double sinc(double u);

}  // namespace subplanck
