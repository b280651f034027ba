#include "subplanck/statekit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "subplanck/error.hpp"
#include "subplanck/spectral.hpp"

namespace subplanck {

using cplx = std::complex<double>;

WaveFunction1D::WaveFunction1D(Grid1D grid, Eigen::VectorXcd amplitudes, double hbar)
    : grid_(grid), amplitudes_(std::move(amplitudes)), hbar_(hbar) {
  if (static_cast<std::size_t>(amplitudes_.size()) != grid_.size()) {
    throw ValidationError("amplitude count does not match grid size");
  }
  if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
}

double norm_squared(const WaveFunction1D& psi) { return psi.amplitudes().squaredNorm() * psi.grid().dx(); }

WaveFunction1D normalize(const WaveFunction1D& psi) {
  const double n2 = norm_squared(psi);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw ValidationError("cannot normalize a zero state");
  return {psi.grid(), psi.amplitudes() / std::sqrt(n2), psi.hbar()};
}

std::complex<double> inner_product(const WaveFunction1D& a, const WaveFunction1D& b) {
  if (!(a.grid() == b.grid()) || a.hbar() != b.hbar()) throw ValidationError("states live on different grids");
  return a.amplitudes().dot(b.amplitudes()) * a.grid().dx();
}

void check_resolved(const WaveFunction1D& psi) {
  const auto& a = psi.amplitudes();
  const long n = a.size();
  const double scale = norm_squared(psi);
  const double left = std::norm(a[0]) / scale;
  const double right = std::norm(a[n - 1]) / scale;
  if (left > kBoundaryDecay || right > kBoundaryDecay) {
    std::ostringstream msg;
    msg << "state does not decay at the grid boundary: |psi|^2 = " << (left > right ? left : right) << " at x = "
        << (left > right ? psi.grid().x(0) : psi.grid().x(static_cast<std::size_t>(n - 1))) << " (limit "
        << kBoundaryDecay << ")";
    throw ValidationError(msg.str());
  }
  const Eigen::VectorXcd spectrum = spectral::fft(a);
  const double peak = spectrum.cwiseAbs2().maxCoeff();
  const double edge = std::max(std::norm(spectrum[n / 2]), std::max(std::norm(spectrum[n / 2 - 1]),
                                                                    std::norm(spectrum[n / 2 + 1])));
  if (edge > kBoundaryDecay * peak) {
    std::ostringstream msg;
    msg << "state is not band-limited: relative momentum density " << edge / peak << " near p = +-"
        << psi.grid().p_nyquist(psi.hbar()) << " (limit " << kBoundaryDecay << ")";
    throw ValidationError(msg.str());
  }
}

WaveFunction1D gaussian_packet(const Grid1D& grid, double x0, double p0, double sigma, double hbar) {
  if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
  if (x0 - 6.0 * sigma < grid.x_min() || x0 + 6.0 * sigma > grid.x(grid.size() - 1)) {
    std::ostringstream msg;
    msg << "packet support [" << x0 - 6.0 * sigma << ", " << x0 + 6.0 * sigma << "] escapes the grid ["
        << grid.x_min() << ", " << grid.x(grid.size() - 1) << "]";
    throw ValidationError(msg.str());
  }
  Eigen::VectorXcd a(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    const double u = x - x0;
    a[static_cast<Eigen::Index>(i)] = std::exp(-u * u / (4.0 * sigma * sigma)) * std::polar(1.0, p0 * x / hbar);
  }
  WaveFunction1D psi = normalize(WaveFunction1D(grid, std::move(a), hbar));
  check_resolved(psi);
  return psi;
}

WaveFunction1D linear_combination(std::span<const WaveFunction1D> states, std::span<const cplx> coefficients) {
  if (states.empty() || states.size() != coefficients.size()) {
    throw ValidationError("superposition needs one coefficient per state");
  }
  const Grid1D& grid = states.front().grid();
  const double hbar = states.front().hbar();
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (!(states[k].grid() == grid) || states[k].hbar() != hbar) {
      throw ValidationError("superposed states must share one grid and one hbar");
    }
    sum += coefficients[k] * states[k].amplitudes();
  }
  return {grid, std::move(sum), hbar};
}

WaveFunction1D superpose(std::span<const WaveFunction1D> states, std::span<const cplx> coefficients) {
  bool any = false;
  for (const auto& c : coefficients) any = any || c != cplx(0.0);
  if (!any) throw ValidationError("all superposition coefficients are zero");
  WaveFunction1D sum = linear_combination(states, coefficients);
  // Cancellation to rounding level counts as the zero vector.
  double scale = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) scale += std::abs(coefficients[k]) * std::sqrt(norm_squared(states[k]));
  if (std::sqrt(norm_squared(sum)) <= 1e-12 * scale) throw ValidationError("superposition is the zero vector");
  return normalize(sum);
}

WaveFunction1D cat_state(const Grid1D& grid, double separation, double sigma, double hbar) {
  const WaveFunction1D parts[] = {gaussian_packet(grid, -separation / 2.0, 0.0, sigma, hbar),
                                  gaussian_packet(grid, separation / 2.0, 0.0, sigma, hbar)};
  const cplx c[] = {1.0, 1.0};
  return superpose(parts, c);
}

WaveFunction1D momentum_cat_state(const Grid1D& grid, double separation, double sigma, double hbar) {
  const WaveFunction1D parts[] = {gaussian_packet(grid, 0.0, -separation / 2.0, sigma, hbar),
                                  gaussian_packet(grid, 0.0, separation / 2.0, sigma, hbar)};
  const cplx c[] = {1.0, 1.0};
  WaveFunction1D psi = superpose(parts, c);
  check_resolved(psi);
  return psi;
}

WaveFunction1D compass_state(const Grid1D& grid, double x_sep, double p_sep, double sigma, double hbar) {
  const WaveFunction1D parts[] = {
      gaussian_packet(grid, -x_sep / 2.0, 0.0, sigma, hbar), gaussian_packet(grid, x_sep / 2.0, 0.0, sigma, hbar),
      gaussian_packet(grid, 0.0, -p_sep / 2.0, sigma, hbar), gaussian_packet(grid, 0.0, p_sep / 2.0, sigma, hbar)};
  const cplx c[] = {1.0, 1.0, 1.0, 1.0};
  return superpose(parts, c);
}

Eigen::VectorXd position_density(const WaveFunction1D& psi) { return psi.amplitudes().cwiseAbs2(); }

double mean_position(const WaveFunction1D& psi) {
  const Eigen::VectorXd rho = position_density(psi);
  double num = 0.0;
  for (Eigen::Index i = 0; i < rho.size(); ++i) num += psi.grid().x(static_cast<std::size_t>(i)) * rho[i];
  return num / rho.sum();
}

double position_variance(const WaveFunction1D& psi) {
  const Eigen::VectorXd rho = position_density(psi);
  const double mean = mean_position(psi);
  double num = 0.0;
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    const double u = psi.grid().x(static_cast<std::size_t>(i)) - mean;
    num += u * u * rho[i];
  }
  return num / rho.sum();
}

double mean_momentum(const WaveFunction1D& psi) {
  const long n = psi.amplitudes().size();
  const Eigen::VectorXcd spectrum = spectral::fft(psi.amplitudes());
  const double dp = psi.grid().dp(psi.hbar());
  double num = 0.0;
  double den = 0.0;
  for (long m = 0; m < n; ++m) {
    const long k = spectral::signed_index(m, n);
    const double w = std::norm(spectrum[m]);
    // The Nyquist bin is ambiguous in sign; it carries no weight for resolved states.
    if (2 * k != -n) num += static_cast<double>(k) * dp * w;
    den += w;
  }
  return num / den;
}

}  // namespace subplanck
