#include "subplanck/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "subplanck/bessel.hpp"
#include "subplanck/error.hpp"
#include "subplanck/parallel.hpp"
#include "subplanck/randomwave.hpp"

namespace subplanck {

namespace {

constexpr std::size_t kMinSeriesPoints = 64;
constexpr double kRealTolerance = 1e-6;

/// Lagrange cubic through (ts[k], vs[k]), k = 0..3.
double cubic(const std::array<double, 4>& ts, const std::array<double, 4>& vs, double t) {
  double sum = 0.0;
  for (int a = 0; a < 4; ++a) {
    double w = vs[a];
    for (int b = 0; b < 4; ++b) {
      if (a != b) w *= (t - ts[b]) / (ts[a] - ts[b]);
    }
    sum += w;
  }
  return sum;
}

/// Vertex of the parabola through three equally spaced samples; returns
/// (offset in units of the spacing, value).
std::pair<double, double> parabola_peak(double a, double b, double c) {
  const double denom = a - 2.0 * b + c;
  if (denom == 0.0) return {0.0, b};
  const double offset = 0.5 * (a - c) / denom;
  return {offset, b - 0.25 * (a - c) * offset};
}

}  // namespace

std::vector<double> find_zeros(const std::vector<double>& t, const std::vector<double>& v) {
  if (t.size() != v.size()) throw ValidationError("t and values differ in length");
  if (t.size() < kMinSeriesPoints) {
    throw ValidationError("zero finding needs at least 64 samples, got " + std::to_string(t.size()));
  }
  const std::size_t n = t.size();
  std::vector<double> zeros;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (v[i] == 0.0) {
      if (i > 0) zeros.push_back(t[i]);
      continue;
    }
    if (v[i + 1] == 0.0 || (v[i] > 0.0) == (v[i + 1] > 0.0)) continue;
    const std::size_t start = std::min(i > 0 ? i - 1 : 0, n - 4);
    const std::array<double, 4> ts{t[start], t[start + 1], t[start + 2], t[start + 3]};
    const std::array<double, 4> vs{v[start], v[start + 1], v[start + 2], v[start + 3]};
    double lo = t[i];
    double hi = t[i + 1];
    const bool lo_positive = v[i] > 0.0;
    const double tol = 1e-6 * (hi - lo);
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if ((cubic(ts, vs, mid) > 0.0) == lo_positive) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    zeros.push_back(0.5 * (lo + hi));
  }
  return zeros;
}

std::vector<double> find_zeros(const OverlapSeries& series, ZeroMode mode) {
  const std::size_t n = series.values.size();
  if (n < kMinSeriesPoints) {
    throw ValidationError("zero finding needs at least 64 samples, got " + std::to_string(n));
  }
  if (mode == ZeroMode::sign_change || mode == ZeroMode::real_part) {
    double max_re = 0.0;
    double max_im = 0.0;
    for (const auto& z : series.values) {
      max_re = std::max(max_re, std::abs(z.real()));
      max_im = std::max(max_im, std::abs(z.imag()));
    }
    if (mode == ZeroMode::sign_change && max_im >= kRealTolerance * max_re) {
      throw ValidationError("series is not effectively real; use the |value| minima mode");
    }
    std::vector<double> re(n);
    for (std::size_t i = 0; i < n; ++i) re[i] = series.values[i].real();
    return find_zeros(series.t, re);
  }

  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(series.values[i]);
  const double threshold = 1e-3 * *std::max_element(mag.begin(), mag.end());
  std::vector<double> zeros;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (mag[i] <= mag[i - 1] && mag[i] < mag[i + 1] && mag[i] < threshold) {
      const auto [offset, value] = parabola_peak(mag[i - 1], mag[i], mag[i + 1]);
      (void)value;
      zeros.push_back(series.t[i] + offset * (series.t[i + 1] - series.t[i]));
    }
  }
  return zeros;
}

PeakEnvelope peak_envelope(const std::vector<double>& t, const std::vector<double>& mag,
                           const std::vector<double>& zeros) {
  if (zeros.size() < 2) {
    throw NotApplicableError("insufficient ringing: found " + std::to_string(zeros.size()) + " zero(s), need 2");
  }
  PeakEnvelope env;
  for (std::size_t z = 0; z + 1 < zeros.size(); ++z) {
    std::size_t best = t.size();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] <= zeros[z] || t[i] >= zeros[z + 1]) continue;
      if (best == t.size() || mag[i] > mag[best]) best = i;
    }
    if (best == t.size()) throw ValidationError("series too coarse to resolve the peak between two zeros");
    double location = t[best];
    double height = mag[best];
    if (best > 0 && best + 1 < t.size() && mag[best] >= mag[best - 1] && mag[best] >= mag[best + 1]) {
      const auto [offset, value] = parabola_peak(mag[best - 1], mag[best], mag[best + 1]);
      if (std::abs(offset) <= 1.0) {
        location += offset * (t[best + 1] - t[best]);
        height = value;
      }
    }
    env.locations.push_back(location);
    env.heights.push_back(height);
  }
  return env;
}

PeakEnvelope peak_envelope(const OverlapSeries& series, const std::vector<double>& zeros) {
  std::vector<double> mag(series.values.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(series.values[i]);
  return peak_envelope(series.t, mag, zeros);
}

PowerLawFit fit_powerlaw(const PeakEnvelope& peaks, std::size_t skip) {
  const std::size_t total = peaks.heights.size();
  if (total < 5) throw NotApplicableError("power-law fit needs at least 5 peaks, got " + std::to_string(total));
  if (total < skip + 3) throw NotApplicableError("fewer than 3 peaks inside the fit window");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = skip; i < total; ++i) {
    if (!(peaks.heights[i] > 0.0) || !(peaks.locations[i] > 0.0)) {
      throw ValidationError("power-law fit needs positive peak locations and heights");
    }
    lx.push_back(std::log(peaks.locations[i]));
    ly.push_back(std::log(peaks.heights[i]));
  }
  const double m = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - my - slope * (lx[i] - mx);
    rss += r * r;
  }
  const double se = std::sqrt(rss / (m - 2.0) / sxx);
  return {slope, se, skip, total - 1};
}

ZeroMode default_zero_mode(const OverlapSeries& series) {
  if (series.modulus_only) return ZeroMode::abs_minima;
  if (series.route == OverlapRoute::monte_carlo) return ZeroMode::real_part;
  return ZeroMode::sign_change;
}

RingingReport analyze_ringing(const OverlapSeries& series, std::size_t skip) {
  RingingReport report;
  report.zeros = find_zeros(series, default_zero_mode(series));
  for (std::size_t i = 1; i < report.zeros.size(); ++i) report.spacings.push_back(report.zeros[i] - report.zeros[i - 1]);
  report.peaks = peak_envelope(series, report.zeros);
  report.fit = fit_powerlaw(report.peaks, skip);
  report.fit_t_lo = report.peaks.locations[report.fit.first_peak];
  report.fit_t_hi = report.peaks.locations[report.fit.last_peak];
  return report;
}

std::vector<ConvergenceRow> gaussian_convergence(const std::vector<int>& N_list, double t_max, double s_max,
                                                 std::size_t n_t) {
  if (!(t_max > 0.0) || t_max > 3.0) throw ValidationError("t range must lie within (0, 3]");
  if (!(s_max > 0.0) || s_max > 1.0) throw ValidationError("momentum range must lie within (0, 1]");
  if (n_t < 2) throw ValidationError("need at least 2 sample points");
  if (N_list.empty()) throw ValidationError("N list is empty");
  for (int N : N_list) {
    if (N < 1) throw ValidationError("every N must be >= 1");
  }
  std::vector<ConvergenceRow> rows(N_list.size());
  parallel_for(N_list.size(), [&](std::size_t r) {
    const GasBox gas(N_list[r], 1.0, 1.0, 1.0);
    double dx_dev = 0.0;
    double dp_dev = 0.0;
    for (std::size_t i = 0; i < n_t; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(n_t - 1);
      const double t = f * t_max;
      const double s = f * s_max;
      dx_dev = std::max(dx_dev, std::abs(gas_overlap_analytic_equal(gas, t, 0.0) - gas_overlap_gaussian(gas, t, 0.0)));
      dp_dev = std::max(dp_dev, std::abs(gas_overlap_analytic_equal(gas, 0.0, s) - gas_overlap_gaussian(gas, 0.0, s)));
    }
    rows[r] = {gas.N, gas.order(), dx_dev, dp_dev};
  });
  return rows;
}

std::vector<VarianceRow> variance_scaling(const VarianceScalingConfig& config) {
  if (config.ensemble_size < 30) {
    throw ValidationError("variance scaling needs an ensemble of at least 30 states, got " +
                          std::to_string(config.ensemble_size));
  }
  if (config.k_list.empty()) throw ValidationError("k list is empty");
  for (std::size_t i = 0; i < config.k_list.size(); ++i) {
    const double k = config.k_list[i];
    if (!(k > 0.0)) throw ValidationError("every k must be positive");
    if (i > 0 && !(k > config.k_list[i - 1])) throw ValidationError("k list must be strictly increasing");
    if (config.cell_size < 2.0 * std::numbers::pi / k) {
      std::ostringstream msg;
      msg << "cell size " << config.cell_size << " is below one wavelength 2 pi / k = " << 2.0 * std::numbers::pi / k;
      throw ValidationError(msg.str());
    }
  }
  if (config.cell_size * std::numbers::sqrt2 / 2.0 > config.region_radius) {
    throw ValidationError("cell does not fit inside the region");
  }

  const std::size_t n_k = config.k_list.size();
  const std::size_t members = config.ensemble_size;
  std::vector<double> intensity(n_k * members);
  parallel_for(n_k * members, [&](std::size_t job) {
    const std::size_t ki = job / members;
    const std::size_t m = job % members;
    const auto state = random_wave_state(config.k_list[ki], config.components, config.region_radius,
                                         split_seed(split_seed(config.seed, ki), m));
    intensity[job] = square_mean_intensity(state, config.cell_size);
  });

  std::vector<VarianceRow> rows;
  for (std::size_t ki = 0; ki < n_k; ++ki) {
    double mean = 0.0;
    for (std::size_t m = 0; m < members; ++m) mean += intensity[ki * members + m];
    mean /= static_cast<double>(members);
    double var = 0.0;
    for (std::size_t m = 0; m < members; ++m) {
      const double d = intensity[ki * members + m] - mean;
      var += d * d;
    }
    var /= static_cast<double>(members - 1);
    rows.push_back({config.k_list[ki], mean, std::sqrt(var) / mean});
  }
  return rows;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

}  // namespace subplanck
