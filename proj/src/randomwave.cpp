#include "subplanck/randomwave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "subplanck/bessel.hpp"
#include "subplanck/error.hpp"
#include "subplanck/rng.hpp"

namespace subplanck {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// (1/2) sum_ij a_i a_j [cos(phi_i - phi_j) F(k(d_i - d_j)) + cos(phi_i + phi_j) F(k(d_i + d_j))]
/// where F(q) is the region average of cos(q.x) for a centrally symmetric region.
template <typename RegionAverage>
double mean_intensity(const RandomWaveState& state, RegionAverage&& F) {
  const auto& c = state.components;
  const double k = state.k;
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double ai = c[i].amplitude;
    sum += 0.5 * ai * ai * (1.0 + std::cos(2.0 * c[i].phase) * F(2.0 * k * c[i].direction));
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const double aj = c[j].amplitude;
      const double diff = std::cos(c[i].phase - c[j].phase) * F(k * (c[i].direction - c[j].direction));
      const double plus = std::cos(c[i].phase + c[j].phase) * F(k * (c[i].direction + c[j].direction));
      sum += ai * aj * (diff + plus);
    }
  }
  return sum;
}

}  // namespace

RandomWaveState random_wave_state(double k, std::size_t m, double region_radius, std::uint64_t seed) {
  if (m < 2) throw ValidationError("a random-wave state needs at least 2 components");
  if (!(k > 0.0)) throw ValidationError("wavenumber must be positive");
  if (!(region_radius > 0.0)) throw ValidationError("region radius must be positive");

  RandomWaveState state{k, region_radius, seed, {}};
  state.components.reserve(m);
  Rng rng(seed);
  for (std::size_t j = 0; j < m; ++j) {
    const double angle = kTwoPi * rng.uniform();
    const double phase = kTwoPi * rng.uniform();
    const double amplitude = rng.normal();
    state.components.push_back({Eigen::Vector2d(std::cos(angle), std::sin(angle)), phase, amplitude});
  }
  const double area = std::numbers::pi * region_radius * region_radius;
  const double scale = std::sqrt((1.0 / area) / disk_mean_intensity(state, region_radius));
  for (auto& c : state.components) c.amplitude *= scale;
  return state;
}

double evaluate_random_wave(const RandomWaveState& state, const Eigen::Vector2d& point) {
  double sum = 0.0;
  for (const auto& c : state.components) sum += c.amplitude * std::cos(state.k * c.direction.dot(point) + c.phase);
  return sum;
}

std::vector<double> evaluate_random_wave(const RandomWaveState& state, std::span<const Eigen::Vector2d> points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(evaluate_random_wave(state, x));
  return out;
}

double disk_mean_intensity(const RandomWaveState& state, double radius) {
  return mean_intensity(state, [radius](const Eigen::Vector2d& q) { return scaled_bessel(1.0, q.norm() * radius); });
}

double square_mean_intensity(const RandomWaveState& state, double side) {
  return mean_intensity(state, [side](const Eigen::Vector2d& q) {
    return sinc(0.5 * side * q.x()) * sinc(0.5 * side * q.y());
  });
}

std::vector<double> autocorrelation(const RandomWaveState& state, std::span<const double> separations,
                                    std::size_t n_probe, std::uint64_t seed) {
  if (n_probe == 0) throw ValidationError("autocorrelation needs at least one probe point");
  double max_sep = 0.0;
  for (double s : separations) {
    if (!(s >= 0.0)) throw ValidationError("separations must be non-negative");
    max_sep = std::max(max_sep, s);
  }
  if (max_sep > state.region_radius) throw ValidationError("separation exceeds the region radius");
  const double probe_radius = state.region_radius - max_sep;

  std::vector<double> num(separations.size(), 0.0);
  std::vector<double> den(separations.size(), 0.0);
  Rng rng(seed);
  for (std::size_t s = 0; s < n_probe; ++s) {
    const double r = probe_radius * std::sqrt(rng.uniform());
    const double a = kTwoPi * rng.uniform();
    const double b = kTwoPi * rng.uniform();
    const Eigen::Vector2d x(r * std::cos(a), r * std::sin(a));
    const Eigen::Vector2d e(std::cos(b), std::sin(b));
    const double f0 = evaluate_random_wave(state, x);
    for (std::size_t i = 0; i < separations.size(); ++i) {
      const double f1 = separations[i] == 0.0 ? f0 : evaluate_random_wave(state, x + separations[i] * e);
      num[i] += f0 * f1;
      den[i] += 0.5 * (f0 * f0 + f1 * f1);
    }
  }
  std::vector<double> out(separations.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = num[i] / den[i];
  return out;
}

}  // namespace subplanck
