#include "subplanck/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "subplanck/error.hpp"
#include "subplanck/parallel.hpp"
#include "subplanck/spectral.hpp"

namespace subplanck {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

WignerGrid::WignerGrid(Grid1D x_axis, Eigen::MatrixXd values, double hbar)
    : x_axis_(x_axis), values_(std::move(values)), hbar_(hbar) {
  if (static_cast<std::size_t>(values_.rows()) != x_axis_.size() || values_.cols() != values_.rows()) {
    throw ValidationError("Wigner values must be an n x n matrix matching the x grid");
  }
  if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
}

WignerGrid wigner_transform(const WaveFunction1D& psi) {
  check_resolved(psi);
  const long n = static_cast<long>(psi.grid().size());
  const double dx = psi.grid().dx();
  const double hbar = psi.hbar();
  const Eigen::VectorXcd fine = spectral::upsample2(psi.amplitudes());
  const long n_fine = 2 * n;
  auto at = [&](long m) { return (m >= 0 && m < n_fine) ? fine[m] : std::complex<double>(0.0); };

  Eigen::MatrixXd values(n, n);
  std::vector<double> row_imag(static_cast<std::size_t>(n), 0.0);
  const double prefactor = dx / (kTwoPi * hbar) * static_cast<double>(n);

  parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    const long i = static_cast<long>(row);
    Eigen::VectorXcd folded = Eigen::VectorXcd::Zero(n);
    // s_k = k dx, psi(x_i +- s_k / 2) = fine[2i +- k]; k in [-n, n], ends halved.
    for (long k = -n; k <= n; ++k) {
      const std::complex<double> g = std::conj(at(2 * i + k)) * at(2 * i - k);
      if (g == 0.0) continue;
      const double weight = (k == -n || k == n) ? 0.5 : 1.0;
      folded[((k % n) + n) % n] += weight * g;
    }
    const Eigen::VectorXcd spectrum = spectral::ifft(folded);
    double imag = 0.0;
    for (long jf = 0; jf < n; ++jf) {
      const long col = spectral::signed_index(jf, n) + n / 2;
      const std::complex<double> v = prefactor * spectrum[jf];
      values(i, col) = v.real();
      imag = std::max(imag, std::abs(v.imag()));
    }
    row_imag[row] = imag;
  });

  WignerGrid w(psi.grid(), std::move(values), hbar);
  const double peak = w.values().cwiseAbs().maxCoeff();
  w.set_imaginary_residue(*std::max_element(row_imag.begin(), row_imag.end()) / peak);
  return w;
}

double normalization(const WignerGrid& w) { return w.values().sum() * w.dx() * w.dp(); }

double purity(const WignerGrid& w) { return kTwoPi * w.hbar() * w.values().squaredNorm() * w.dx() * w.dp(); }

Eigen::VectorXd marginal_x(const WignerGrid& w) { return w.values().rowwise().sum() * w.dp(); }

Eigen::VectorXd marginal_p(const WignerGrid& w) { return w.values().colwise().sum().transpose() * w.dx(); }

double fringe_wavelength(const WignerGrid& w, Axis axis, const PhaseWindow& window) {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < w.n_x(); ++i) {
    if (w.x(i) >= window.x_lo && w.x(i) <= window.x_hi) rows.push_back(i);
  }
  for (std::size_t j = 0; j < w.n_p(); ++j) {
    if (w.p(j) >= window.p_lo && w.p(j) <= window.p_hi) cols.push_back(j);
  }
  if (rows.empty() || cols.empty()) throw ValidationError("fringe window contains no grid points");

  // Slices run along `axis`; they are indexed by the other coordinate.
  const auto& along = axis == Axis::p ? cols : rows;
  const auto& across = axis == Axis::p ? rows : cols;
  const double step = axis == Axis::p ? w.dp() : w.dx();
  auto value = [&](std::size_t a, std::size_t b) {
    return axis == Axis::p ? w.values()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a))
                           : w.values()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  };

  const std::size_t len = along.size();
  {
    const std::size_t centre = across[across.size() / 2];
    int changes = 0;
    for (std::size_t a = 1; a < len; ++a) {
      if (value(along[a - 1], centre) * value(along[a], centre) < 0.0) ++changes;
    }
    if (changes < 4) throw NotApplicableError("no fringes detected");
  }

  const std::size_t padded = 16 * next_pow2(len);
  std::vector<double> power(padded / 2 + 1, 0.0);
  for (std::size_t b : across) {
    double mean = 0.0;
    for (std::size_t a : along) mean += value(a, b);
    mean /= static_cast<double>(len);
    Eigen::VectorXcd slice = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(padded));
    for (std::size_t a = 0; a < len; ++a) slice[static_cast<Eigen::Index>(a)] = value(along[a], b) - mean;
    const Eigen::VectorXcd spectrum = spectral::fft(slice);
    for (std::size_t f = 0; f < power.size(); ++f) power[f] += std::norm(spectrum[static_cast<Eigen::Index>(f)]);
  }

  // Ignore frequencies below one cycle per window.
  const std::size_t lowest = std::max<std::size_t>(1, (padded + len - 1) / len);
  std::size_t best = lowest;
  for (std::size_t f = lowest; f + 1 < power.size(); ++f) {
    if (power[f] > power[best]) best = f;
  }
  double offset = 0.0;
  if (best > lowest && best + 1 < power.size()) {
    const double a = power[best - 1];
    const double b = power[best];
    const double c = power[best + 1];
    const double denom = a - 2.0 * b + c;
    if (denom != 0.0) offset = 0.5 * (a - c) / denom;
  }
  const double frequency = (static_cast<double>(best) + offset) / (static_cast<double>(padded) * step);
  return 1.0 / frequency;
}

}  // namespace subplanck
