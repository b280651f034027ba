#pragma once

#include <cstddef>

namespace subplanck {

/// Uniform, non-periodic sampling of [x_min, x_max) with n points,
/// x_i = x_min + i * dx. n must be a power of two and at least 64.
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, std::size_t n);

  /// Symmetric grid [-half_width, half_width).
  static Grid1D centered(double half_width, std::size_t n) { return {-half_width, half_width, n}; }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t size() const { return n_; }
  double dx() const { return (x_max_ - x_min_) / static_cast<double>(n_); }
  double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * dx(); }
  double width() const { return x_max_ - x_min_; }

  /// Spacing of the conjugate momentum grid, 2 pi hbar / (n dx).
  double dp(double hbar) const;
  /// Largest representable momentum magnitude, pi hbar / dx.
  double p_nyquist(double hbar) const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
};

}  // namespace subplanck
