#include "subplanck/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "subplanck/error.hpp"

namespace subplanck {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRescale = 1e250;
const double kLogRescale = std::log(kRescale);

/// sign * exp(log_abs); sign == 0 encodes an exact zero.
struct LogValue {
  int sign;
  double log_abs;
};

void validate(double nu, double xi) {
  const bool half_integer = std::isfinite(nu) && std::floor(2.0 * nu) == 2.0 * nu;
  if (!half_integer || nu < 0.0 || nu > kMaxBesselOrder) {
    std::ostringstream msg;
    msg << "Bessel order must be an integer or half-integer in [0, " << kMaxBesselOrder << "], got " << nu;
    throw DomainError(msg.str());
  }
  if (!(xi >= 0.0) || xi > kMaxBesselArgument) {
    std::ostringstream msg;
    msg << "Bessel argument must lie in [0, " << kMaxBesselArgument << "], got " << xi;
    throw DomainError(msg.str());
  }
}

bool use_series(double nu, double xi) { return xi * xi <= 4.0 * nu + 10.0; }

bool use_hankel(double nu, double xi) { return xi >= 25.0 && xi >= nu * nu; }

/// sum_k (-1)^k (xi^2/4)^k / (k! (nu+1)_k), which is Lambda_nu(xi).
double lambda_series(double nu, double xi) {
  const double q = 0.25 * xi * xi;
  double term = 1.0;
  double sum = 1.0;
  double comp = 0.0;
  for (int k = 0; k < 500; ++k) {
    term *= -q / ((k + 1.0) * (nu + k + 1.0));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) < 1e-18 * std::abs(sum) && k > 2) break;
  }
  return sum;
}

/// Hankel expansion of J_nu for xi >= max(25, nu^2). Terminates exactly for
/// half-integer orders.
LogValue log_j_hankel(double nu, double xi) {
  const double mu = 4.0 * nu * nu;
  const double inv8x = 1.0 / (8.0 * xi);
  double P = 1.0;
  double Q = 0.0;
  double a = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double f = 2.0 * k - 1.0;
    a *= (mu - f * f) * inv8x / k;
    if (a == 0.0) break;
    if (std::abs(a) > prev) break;  // asymptotic series starts to diverge
    prev = std::abs(a);
    switch (k % 4) {
      case 1: Q += a; break;
      case 2: P -= a; break;
      case 3: Q -= a; break;
      default: P += a; break;
    }
    if (std::abs(a) < 1e-17) break;
  }
  // omega = xi - (nu/2 + 1/4) pi, expanded to avoid rounding in xi - c.
  const double c = (0.5 * nu + 0.25) * kPi;
  const double cos_w = std::cos(xi) * std::cos(c) + std::sin(xi) * std::sin(c);
  const double sin_w = std::sin(xi) * std::cos(c) - std::cos(xi) * std::sin(c);
  const double v = P * cos_w - Q * sin_w;
  if (v == 0.0) return {0, 0.0};
  return {v > 0 ? 1 : -1, 0.5 * std::log(2.0 / (kPi * xi)) + std::log(std::abs(v))};
}

/// Miller's backward recurrence f_{n-1} = (2n/xi) f_n - f_{n+1} over orders
/// nu0 + m, normalized by 1 = J_0 + 2 sum J_2k (integer orders) or by the
/// closed forms of J_{1/2}, J_{-1/2} (half-integer orders).
LogValue log_j_miller(double nu, double xi) {
  const bool half = std::floor(nu) != nu;
  const double base = half ? 0.5 : 0.0;
  const long target = std::lround(nu - base);
  const double reach = std::max(nu, xi);
  const long top = static_cast<long>(std::ceil(reach - base + 20.0 + std::sqrt(160.0 * reach)));

  double f_next = 0.0;  // f_{m+1}
  double f = 1.0;       // f_m
  long rescales = 0;
  double sum = 0.0;     // integer family: f_0 + 2 sum_{even m >= 2} f_m
  double f_target = 0.0;
  long rescales_at_target = 0;
  double f_base = 0.0;       // f at order base
  double f_base_next = 0.0;  // f at order base + 1

  for (long m = top; m >= 0; --m) {
    if (m == target) {
      f_target = f;
      rescales_at_target = rescales;
    }
    if (!half && m % 2 == 0) sum += (m == 0 ? 1.0 : 2.0) * f;
    if (m == 0) {
      f_base = f;
      f_base_next = f_next;
      break;
    }
    const double order = base + static_cast<double>(m);
    const double f_prev = (2.0 * order / xi) * f - f_next;
    f_next = f;
    f = f_prev;
    if (std::abs(f) > kRescale) {
      f /= kRescale;
      f_next /= kRescale;
      sum /= kRescale;
      ++rescales;
    }
  }
  if (f_target == 0.0) return {0, 0.0};

  // Value of f_target expressed in the final scale.
  const double log_target = std::log(std::abs(f_target)) - static_cast<double>(rescales - rescales_at_target) * kLogRescale;
  int sign = f_target > 0 ? 1 : -1;

  double log_norm = 0.0;  // log |J / f| in the final scale
  if (!half) {
    log_norm = -std::log(std::abs(sum));
    if (sum < 0) sign = -sign;
  } else {
    // f_{-1/2} = (1/xi) f_{1/2} - f_{3/2}
    const double f_minus = f_base / xi - f_base_next;
    const double amp = std::sqrt(2.0 / (kPi * xi));
    const double s = std::sin(xi);
    const double c = std::cos(xi);
    double ratio = 0.0;
    if (std::abs(s) >= std::abs(c)) {
      ratio = amp * s / f_base;
    } else {
      ratio = amp * c / f_minus;
    }
    log_norm = std::log(std::abs(ratio));
    if (ratio < 0) sign = -sign;
  }
  return {sign, log_target + log_norm};
}

LogValue log_j(double nu, double xi) { return use_hankel(nu, xi) ? log_j_hankel(nu, xi) : log_j_miller(nu, xi); }

}  // namespace

double scaled_bessel(double nu, double xi) {
  validate(nu, xi);
  if (xi == 0.0) return 1.0;
  if (use_series(nu, xi)) return lambda_series(nu, xi);
  const LogValue j = log_j(nu, xi);
  if (j.sign == 0) return 0.0;
  const double log_scale = std::lgamma(nu + 1.0) + nu * std::log(2.0 / xi);
  return j.sign * std::exp(log_scale + j.log_abs);
}

double bessel_j(double nu, double xi) {
  validate(nu, xi);
  if (xi == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (use_series(nu, xi)) {
    return lambda_series(nu, xi) * std::exp(nu * std::log(0.5 * xi) - std::lgamma(nu + 1.0));
  }
  const LogValue j = log_j(nu, xi);
  return j.sign == 0 ? 0.0 : j.sign * std::exp(j.log_abs);
}

double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }

}  // namespace subplanck
