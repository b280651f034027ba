#include "subplanck/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "subplanck/error.hpp"

namespace subplanck {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid1D::Grid1D(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {
  if (!is_power_of_two(n) || n < 64) {
    throw ValidationError("grid size must be a power of two >= 64, got " + std::to_string(n));
  }
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw ValidationError("grid requires finite x_max > x_min");
  }
}

double Grid1D::dp(double hbar) const { return 2.0 * std::numbers::pi * hbar / width(); }

double Grid1D::p_nyquist(double hbar) const { return std::numbers::pi * hbar / dx(); }

}  // namespace subplanck
