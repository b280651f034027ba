#pragma once

#include <Eigen/Dense>

#include "subplanck/grid.hpp"
#include "subplanck/statekit.hpp"

namespace subplanck {

/// W(x_i, p_j) on the x-grid of a state and its conjugate momentum grid
/// p_j = j dp, j = -n/2 .. n/2 - 1, dp = 2 pi hbar / (n dx).
/// values(i, j): row i is position x_i, column j is momentum p_j.
class WignerGrid {
 public:
  WignerGrid(Grid1D x_axis, Eigen::MatrixXd values, double hbar);

  const Grid1D& x_axis() const { return x_axis_; }
  const Eigen::MatrixXd& values() const { return values_; }
  double hbar() const { return hbar_; }

  std::size_t n_x() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t n_p() const { return static_cast<std::size_t>(values_.cols()); }
  double dx() const { return x_axis_.dx(); }
  double dp() const { return x_axis_.dp(hbar_); }
  double x(std::size_t i) const { return x_axis_.x(i); }
  double p(std::size_t j) const { return (static_cast<double>(j) - static_cast<double>(n_p() / 2)) * dp(); }
  double p_min() const { return p(0); }

  /// Largest |Im| / max |W| seen before the imaginary part was discarded
  /// (zero for grids not produced by wigner_transform).
  double imaginary_residue() const { return imag_residue_; }
  void set_imaginary_residue(double r) { imag_residue_ = r; }

 private:
  Grid1D x_axis_;
  Eigen::MatrixXd values_;
  double hbar_;
  double imag_residue_ = 0.0;
};

/// Wigner function of a pure state,
///   W(x, p) = (1 / 2 pi hbar) int ds exp(i p s / hbar) psi*(x + s/2) psi(x - s/2),
/// with psi at half-grid points from band-limited interpolation.
/// Throws ValidationError if psi is not resolved on its grid.
WignerGrid wigner_transform(const WaveFunction1D& psi);

/// sum_ij W dx dp.
double normalization(const WignerGrid& w);
/// (2 pi hbar) sum_ij W^2 dx dp; 1 for pure states.
double purity(const WignerGrid& w);

/// sum_j W(x_i, p_j) dp.
Eigen::VectorXd marginal_x(const WignerGrid& w);
/// sum_i W(x_i, p_j) dx.
Eigen::VectorXd marginal_p(const WignerGrid& w);

enum class Axis { x, p };

struct PhaseWindow {
  double x_lo, x_hi, p_lo, p_hi;
};

/// Dominant oscillation period of W along `axis` inside `window`, from the
/// peak of the averaged power spectrum of the windowed slices. Throws
/// NotApplicableError("no fringes detected") when the central slice has
/// fewer than four sign changes.
double fringe_wavelength(const WignerGrid& w, Axis axis, const PhaseWindow& window);

}  // namespace subplanck
