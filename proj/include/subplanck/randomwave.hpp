#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace subplanck {

/// One plane-wave component a cos(k d.x + phi).
struct WaveComponent {
  Eigen::Vector2d direction;
  double phase;
  double amplitude;
};

/// Real random-wave field psi(x) = sum_j a_j cos(k d_j.x + phi_j) on a disk.
///
/// Directions are uniform on the unit circle, phases uniform on [0, 2 pi),
/// amplitudes i.i.d. standard normal, then all amplitudes are rescaled so the
/// exact spatial mean of psi^2 over the disk equals 1 / (pi R^2).
struct RandomWaveState {
  double k;
  double region_radius;
  std::uint64_t seed;
  std::vector<WaveComponent> components;
};

inline constexpr std::size_t kDefaultWaveComponents = 400;

RandomWaveState random_wave_state(double k, std::size_t m, double region_radius, std::uint64_t seed);

double evaluate_random_wave(const RandomWaveState& state, const Eigen::Vector2d& point);
std::vector<double> evaluate_random_wave(const RandomWaveState& state, std::span<const Eigen::Vector2d> points);

/// Exact mean of psi^2 over a centered disk of the given radius.
double disk_mean_intensity(const RandomWaveState& state, double radius);

/// Exact mean of psi^2 over the axis-aligned square [-c/2, c/2]^2.
double square_mean_intensity(const RandomWaveState& state, double side);

/// Normalized two-point function C(D) = <psi(x) psi(x + D e)> / <psi^2>,
/// averaged over n_probe points uniform in the disk shrunk by max(D) and an
/// independent uniform direction e per probe. C(0) = 1 exactly.
std::vector<double> autocorrelation(const RandomWaveState& state, std::span<const double> separations,
                                    std::size_t n_probe, std::uint64_t seed);

}  // namespace subplanck
