#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "subplanck/grid.hpp"

namespace subplanck {

/// Threshold on |psi|^2 at the outermost samples (position) and on the
/// relative momentum density in the outermost FFT bins.
inline constexpr double kBoundaryDecay = 1e-8;

/// Complex amplitudes psi(x_i) on a Grid1D together with hbar.
///
/// Construction checks shape and hbar > 0 only; normalization is explicit
/// (see normalize()) so that superpositions can be formed before rescaling.
class WaveFunction1D {
 public:
  WaveFunction1D(Grid1D grid, Eigen::VectorXcd amplitudes, double hbar);

  const Grid1D& grid() const { return grid_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  double hbar() const { return hbar_; }
  std::complex<double> operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

 private:
  Grid1D grid_;
  Eigen::VectorXcd amplitudes_;
  double hbar_;
};

/// sum |psi_i|^2 dx.
double norm_squared(const WaveFunction1D& psi);

/// Rescales to unit L2 norm. Throws ValidationError for the zero vector.
WaveFunction1D normalize(const WaveFunction1D& psi);

/// Discrete inner product sum conj(a_i) b_i dx. Grids and hbar must agree.
std::complex<double> inner_product(const WaveFunction1D& a, const WaveFunction1D& b);

/// Throws ValidationError naming the offending amplitude if |psi|^2 at
/// either end of the grid, or the momentum density in the outermost FFT
/// bins, exceeds kBoundaryDecay (relative to the peak for momentum).
void check_resolved(const WaveFunction1D& psi);

/// psi(x) ~ exp(-(x - x0)^2 / (4 sigma^2)) exp(i p0 x / hbar), normalized.
/// Position variance is sigma^2. Requires [x0 - 6 sigma, x0 + 6 sigma] inside
/// the grid.
WaveFunction1D gaussian_packet(const Grid1D& grid, double x0, double p0, double sigma, double hbar);

/// sum_k c_k psi_k without renormalization.
WaveFunction1D linear_combination(std::span<const WaveFunction1D> states,
                                  std::span<const std::complex<double>> coefficients);

/// Normalized superposition. Throws on grid/hbar mismatch or a zero result.
WaveFunction1D superpose(std::span<const WaveFunction1D> states,
                         std::span<const std::complex<double>> coefficients);

/// Two packets at x = +-separation/2 with equal weights.
WaveFunction1D cat_state(const Grid1D& grid, double separation, double sigma, double hbar);
/// Two packets at x = 0 with momenta +-separation/2.
WaveFunction1D momentum_cat_state(const Grid1D& grid, double separation, double sigma, double hbar);
/// Four packets at (x, p) = (+-x_sep/2, 0) and (0, +-p_sep/2).
WaveFunction1D compass_state(const Grid1D& grid, double x_sep, double p_sep, double sigma, double hbar);

double mean_position(const WaveFunction1D& psi);
double position_variance(const WaveFunction1D& psi);

/// <p> from the FFT momentum representation.
double mean_momentum(const WaveFunction1D& psi);

/// |psi(x_i)|^2 per sample.
Eigen::VectorXd position_density(const WaveFunction1D& psi);

}  // namespace subplanck
