#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "subplanck/error.hpp"
#include "subplanck/randomwave.hpp"
#include "subplanck/rng.hpp"

using namespace subplanck;
using std::numbers::pi;

namespace {

// Midpoint rule in polar coordinates.
double disk_quadrature(const RandomWaveState& s, double radius, int nr, int na) {
  double sum = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = radius * (i + 0.5) / nr;
    for (int j = 0; j < na; ++j) {
      const double a = 2 * pi * j / na;
      const double v = evaluate_random_wave(s, Eigen::Vector2d(r * std::cos(a), r * std::sin(a)));
      sum += v * v * r;
    }
  }
  return sum * (radius / nr) * (2 * pi / na) / (pi * radius * radius);
}

}  // namespace

TEST_CASE("construction and validation") {
  const auto s = random_wave_state(10.0, 50, 1.0, 3);
  CHECK(s.components.size() == 50);
  for (const auto& c : s.components) {
    CHECK(c.direction.norm() == doctest::Approx(1.0));
    CHECK(c.phase >= 0.0);
    CHECK(c.phase < 2 * pi);
  }
  const auto t = random_wave_state(10.0, 50, 1.0, 3);
  CHECK(evaluate_random_wave(s, Eigen::Vector2d(0.1, 0.2)) == evaluate_random_wave(t, Eigen::Vector2d(0.1, 0.2)));
  CHECK_THROWS_AS(random_wave_state(10.0, 1, 1.0, 3), ValidationError);
  CHECK_THROWS_AS(random_wave_state(0.0, 10, 1.0, 3), ValidationError);
  CHECK_THROWS_AS(random_wave_state(1.0, 10, -1.0, 3), ValidationError);
}

TEST_CASE("exact means agree with quadrature") {
  const auto s = random_wave_state(12.0, 40, 1.5, 8);
  CHECK(disk_mean_intensity(s, 1.5) == doctest::Approx(1.0 / (pi * 1.5 * 1.5)).epsilon(1e-12));
  CHECK(disk_mean_intensity(s, 0.7) == doctest::Approx(disk_quadrature(s, 0.7, 800, 1600)).epsilon(1e-5));
  const double side = 0.9;
  const int n = 600;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Eigen::Vector2d x(side * ((i + 0.5) / n - 0.5), side * ((j + 0.5) / n - 0.5));
      const double v = evaluate_random_wave(s, x);
      sum += v * v;
    }
  }
  CHECK(square_mean_intensity(s, side) == doctest::Approx(sum / (n * n)).epsilon(1e-5));
}

TEST_CASE("batch evaluation matches pointwise") {
  const auto s = random_wave_state(7.0, 30, 1.0, 2);
  std::vector<Eigen::Vector2d> pts = {{0, 0}, {0.3, -0.2}, {-0.9, 0.1}};
  const auto v = evaluate_random_wave(s, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(v[i] == doctest::Approx(evaluate_random_wave(s, pts[i])));
}

TEST_CASE("field values are gaussian") {
  // Skewness over 3000 seeds is resolved to ~0.045, far inside the 0.15 requirement.
  // Pooled over seeds, the field at a fixed point is a sum of many
  // independent terms; check the third and fourth moments.
  const int n = 3000;
  std::vector<double> v;
  for (int s = 0; s < n; ++s) {
    const auto st = random_wave_state(20.0, 100, 1.0, split_seed(1, s));
    v.push_back(evaluate_random_wave(st, Eigen::Vector2d(0.2, -0.1)));
  }
  double m = 0;
  for (double x : v) m += x / n;
  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d / n;
    m3 += d * d * d / n;
    m4 += d * d * d * d / n;
  }
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2);
  CHECK(std::abs(skew) < 0.15);
  CHECK(std::abs(kurt - 3.0) < 4 * std::sqrt(24.0 / n) + 0.1);
}

TEST_CASE("autocorrelation") {
  const auto s = random_wave_state(30.0, 400, 1.0, 4);
  const std::vector<double> sep = {0.0, 0.05, 0.1, 0.2};
  const auto c = autocorrelation(s, sep, 2000, 9);
  CHECK(c[0] == 1.0);
  for (std::size_t i = 1; i < sep.size(); ++i) {
    CHECK(std::abs(c[i] - oracle::bessel_j_series(0, 30.0 * sep[i])) < 0.15);
  }
  CHECK(autocorrelation(s, sep, 2000, 9) == c);
  const std::vector<double> too_far = {0.0, 1.5};
  CHECK_THROWS_AS(autocorrelation(s, too_far, 10, 1), ValidationError);
}

TEST_CASE("sampled mean intensity over the disk") {
  const auto s = random_wave_state(40.0, 400, 1.0, 7);
  Rng rng(2024);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = std::sqrt(rng.uniform());
    const double a = 2 * pi * rng.uniform();
    const double v = evaluate_random_wave(s, Eigen::Vector2d(r * std::cos(a), r * std::sin(a)));
    sum += v * v;
  }
  CHECK(sum / n == doctest::Approx(1.0 / pi).epsilon(0.02));
  for (const auto& c : s.components) CHECK(std::abs(c.direction.norm() - 1.0) < 1e-12);
}

TEST_CASE("single plane wave") {
  const double k = 40.0;
  RandomWaveState s{k, 1.0, 0, {{Eigen::Vector2d(1.0, 0.0), 0.0, 1.0}}};
  CHECK(evaluate_random_wave(s, Eigen::Vector2d(0.0, 0.0)) == 1.0);
  CHECK(evaluate_random_wave(s, Eigen::Vector2d(pi / k, 0.0)) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("ensemble correlation vanishes at the first Bessel root") {
  const double k = 40.0;
  const double root = oracle::zeros([](double x) { return oracle::bessel_j_series(0, x); }, 1).front();
  const std::vector<double> sep = {0.0, root / k};
  double mean = 0.0;
  for (int seed = 0; seed < 100; ++seed) {
    const auto s = random_wave_state(k, 400, 1.0, split_seed(11, seed));
    const auto c = autocorrelation(s, sep, 300, split_seed(12, seed));
    CHECK(c[0] == 1.0);
    mean += c[1] / 100;
  }
  CHECK(std::abs(mean) < 0.05);
}
