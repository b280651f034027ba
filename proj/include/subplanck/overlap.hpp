#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "subplanck/statekit.hpp"
#include "subplanck/wigner.hpp"

namespace subplanck {

/// Phase-space displacement (dx, dp) in d degrees of freedom.
class Displacement {
 public:
  Displacement(Eigen::VectorXd dx, Eigen::VectorXd dp);
  /// One degree of freedom.
  Displacement(double dx, double dp);

  static Displacement zero(Eigen::Index d) { return {Eigen::VectorXd::Zero(d), Eigen::VectorXd::Zero(d)}; }

  const Eigen::VectorXd& dx() const { return dx_; }
  const Eigen::VectorXd& dp() const { return dp_; }
  Eigen::Index dimension() const { return dx_.size(); }

  Displacement operator-() const { return {-dx_, -dp_}; }
  friend Displacement operator+(const Displacement& a, const Displacement& b);
  friend Displacement operator*(double t, const Displacement& a);

 private:
  Eigen::VectorXd dx_;
  Eigen::VectorXd dp_;
};

/// (D psi)(x) = exp(i dp (x + dx/2) / hbar) psi(x + dx), the position
/// representation of exp(i (dp x^ + dx p^) / hbar). The packet centre moves
/// by -dx and the mean momentum by +dp.
WaveFunction1D displace(const WaveFunction1D& psi, const Displacement& d);

/// <psi| D |psi> as a direct inner product.
std::complex<double> overlap_direct(const WaveFunction1D& psi, const Displacement& d);

/// <D> = sum_ij exp(i (dp x_i + dx p_j) / hbar) W_ij dx dp.
/// Throws ValidationError if |dp| or |dx| is beyond the grid's Nyquist range.
std::complex<double> overlap_from_wigner(const WignerGrid& w, const Displacement& d);

/// |<D>|^2 = (2 pi hbar) sum_ij W(x_i, p_j) W(x_i + dx, p_j + dp) dx dp, the
/// shifted W from a band-limited shift. Throws ValidationError if less than
/// 99.99% of the |W| mass stays on the grid after shifting.
double overlap_sq_autocorr(const WignerGrid& w, const Displacement& d);

/// overlap_sq_autocorr with the power spectrum of W computed once, for
/// repeated evaluation on the same grid. By Parseval the shifted sum equals
/// (1/N) sum_kl |W^_kl|^2 cos(k_x dx + k_p dp).
class AutocorrelationKernel {
 public:
  explicit AutocorrelationKernel(const WignerGrid& w);
  double operator()(const Displacement& d) const;

 private:
  const WignerGrid* w_;
  Eigen::MatrixXd power_;  // |W^|^2 / N, FFT index order
  Eigen::MatrixXd abs_w_;
  double total_mass_;
};

enum class OverlapRoute { direct, wigner_ft, autocorr, analytic, monte_carlo };
std::string to_string(OverlapRoute route);

/// Scale converting the ray parameter t into a displacement: dx = t (hbar/P)
/// times the direction's dx part, dp = t (hbar/L) times its dp part.
struct RayScale {
  double hbar = 1.0;
  double P = 1.0;
  double L = 1.0;
};

/// <D> sampled on t_i = i t_max / (n - 1) along origin + t * direction.
struct OverlapSeries {
  Displacement origin;
  Displacement direction;  // unit norm in (t-units)
  RayScale scale;
  OverlapRoute route = OverlapRoute::direct;
  std::string source;
  std::vector<double> t;
  std::vector<std::complex<double>> values;
  std::vector<double> standard_errors;  // Monte Carlo rays only
  /// Autocorrelation rays carry |<D>| only; re/im are then undefined.
  bool modulus_only = false;

  Displacement displacement_at(double t) const;
};

/// Ray skeleton with t filled in and values zeroed. The direction is
/// normalized to unit Euclidean norm in t-units; n >= 16 and t_max > 0.
OverlapSeries make_ray(const Displacement& direction, double t_max, std::size_t n, const RayScale& scale,
                       OverlapRoute route, std::string source,
                       const std::optional<Displacement>& origin = std::nullopt);

/// Samples an arbitrary evaluator along a ray. The direction is normalized
/// to unit Euclidean norm in t-units; n >= 16 and t_max > 0 are required.
OverlapSeries overlap_ray(const std::function<std::complex<double>(const Displacement&)>& evaluate,
                          const Displacement& direction, double t_max, std::size_t n, const RayScale& scale,
                          OverlapRoute route, std::string source,
                          const std::optional<Displacement>& origin = std::nullopt);

OverlapSeries overlap_ray(const WaveFunction1D& psi, const Displacement& direction, double t_max, std::size_t n,
                          const RayScale& scale, std::string source = "state");

/// route must be wigner_ft or autocorr. For autocorr the stored value is
/// sqrt of the autocorrelation and modulus_only is set.
OverlapSeries overlap_ray(const WignerGrid& w, OverlapRoute route, const Displacement& direction, double t_max,
                          std::size_t n, const RayScale& scale, std::string source = "wigner");

}  // namespace subplanck
