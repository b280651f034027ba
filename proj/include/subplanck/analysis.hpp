#pragma once

#include <cstdint>
#include <vector>

#include "subplanck/microcanonical.hpp"
#include "subplanck/overlap.hpp"
#include "subplanck/randomwave.hpp"

namespace subplanck {

enum class ZeroMode {
  sign_change,  ///< zeros of Re<D>; requires an effectively real series
  abs_minima,   ///< local minima of |<D>| below a relative threshold
  real_part,    ///< zeros of Re<D> with no realness check (Monte Carlo noise)
};

/// abs_minima for modulus-only series, real_part for Monte Carlo series,
/// sign_change otherwise.
ZeroMode default_zero_mode(const OverlapSeries& series);

/// Zeros of a sampled series. Sign changes are bracketed on the samples and
/// refined by bisection on the cubic through the four surrounding samples to
/// 1e-6 of the sample spacing. Returns an empty list when there are none.
/// Throws ValidationError for fewer than 64 samples or, in sign_change mode,
/// when max|Im| / max|Re| >= 1e-6.
std::vector<double> find_zeros(const OverlapSeries& series, ZeroMode mode = ZeroMode::sign_change);

std::vector<double> find_zeros(const std::vector<double>& t, const std::vector<double>& values);

struct PeakEnvelope {
  std::vector<double> locations;
  std::vector<double> heights;
};

/// Largest |value| between each pair of consecutive zeros, refined by a
/// parabola through the three samples around the discrete maximum.
/// Throws NotApplicableError("insufficient ringing") for fewer than 2 zeros.
PeakEnvelope peak_envelope(const std::vector<double>& t, const std::vector<double>& abs_values,
                           const std::vector<double>& zeros);
PeakEnvelope peak_envelope(const OverlapSeries& series, const std::vector<double>& zeros);

struct PowerLawFit {
  double exponent;
  double standard_error;
  std::size_t first_peak;  ///< 0-based index of the first peak used
  std::size_t last_peak;   ///< 0-based index of the last peak used
};

inline constexpr std::size_t kDefaultSkippedPeaks = 2;

/// Least-squares slope of log(height) against log(location) over peaks
/// [skip, end). Throws NotApplicableError for fewer than 5 peaks overall or
/// fewer than 3 inside the window, ValidationError for non-positive data.
PowerLawFit fit_powerlaw(const PeakEnvelope& peaks, std::size_t skip = kDefaultSkippedPeaks);

struct RingingReport {
  std::vector<double> zeros;
  std::vector<double> spacings;
  PeakEnvelope peaks;
  PowerLawFit fit;
  double fit_t_lo;
  double fit_t_hi;
};

/// find_zeros (in default_zero_mode) + peak_envelope + fit_powerlaw.
RingingReport analyze_ringing(const OverlapSeries& series, std::size_t skip = kDefaultSkippedPeaks);

struct ConvergenceRow {
  int N;
  double nu;
  double dx_deviation;  ///< sup |Lambda_nu(sqrt(N) t) - exp(-t^2 / 6)|, t = P|dx|/hbar
  double dp_deviation;  ///< sup |sinc(u)^(3N) - exp(-s^2 / 24)|, s = L|dp|/hbar, equal components
};

/// Deviation between the finite-N gas overlap factors and their large-N
/// Gaussian limits on t in [0, t_max] (t_max <= 3) and s in [0, s_max]
/// (s_max <= 1), sampled at n_t points each.
std::vector<ConvergenceRow> gaussian_convergence(const std::vector<int>& N_list, double t_max = 3.0,
                                                 double s_max = 1.0, std::size_t n_t = 601);

struct VarianceRow {
  double k;
  double mean;                  ///< ensemble mean of the cell-averaged intensity
  double relative_fluctuation;  ///< ensemble std / mean
};

struct VarianceScalingConfig {
  std::vector<double> k_list;
  std::size_t ensemble_size = 50;
  double cell_size = 1.0;
  double region_radius = 4.0;
  std::size_t components = kDefaultWaveComponents;
  std::uint64_t seed = 1;
};

/// Relative ensemble fluctuation of the random-wave intensity averaged over a
/// square cell of side cell_size centred in the region. Throws
/// ValidationError for ensembles below 30, a non-increasing k list, or a
/// cell smaller than 2 pi / k.
std::vector<VarianceRow> variance_scaling(const VarianceScalingConfig& config);

/// true if v is strictly decreasing.
bool strictly_decreasing(const std::vector<double>& v);

}  // namespace subplanck
