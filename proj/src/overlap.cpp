#include "subplanck/overlap.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "subplanck/error.hpp"
#include "subplanck/parallel.hpp"
#include "subplanck/spectral.hpp"

namespace subplanck {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinCoverage = 0.9999;

void require_1d(const Displacement& d) {
  if (d.dimension() != 1) throw ValidationError("grid-based overlaps need a one-dimensional displacement");
}

/// Fraction of sum |W| over cells whose image under (i, j) -> (i + si, j + sj) stays on the grid.
double retained_mass(const Eigen::MatrixXd& abs_w, double si, double sj) {
  const long n_x = abs_w.rows();
  const long n_p = abs_w.cols();
  double kept = 0.0;
  for (long i = 0; i < n_x; ++i) {
    const double xi = static_cast<double>(i) + si;
    if (xi < 0.0 || xi > static_cast<double>(n_x - 1)) continue;
    for (long j = 0; j < n_p; ++j) {
      const double pj = static_cast<double>(j) + sj;
      if (pj < 0.0 || pj > static_cast<double>(n_p - 1)) continue;
      kept += abs_w(i, j);
    }
  }
  return kept;
}

}  // namespace

Displacement::Displacement(Eigen::VectorXd dx, Eigen::VectorXd dp) : dx_(std::move(dx)), dp_(std::move(dp)) {
  if (dx_.size() != dp_.size() || dx_.size() < 1) {
    throw ValidationError("displacement needs dx and dp of equal dimension >= 1");
  }
}

Displacement::Displacement(double dx, double dp)
    : Displacement(Eigen::VectorXd::Constant(1, dx), Eigen::VectorXd::Constant(1, dp)) {}

Displacement operator+(const Displacement& a, const Displacement& b) {
  if (a.dimension() != b.dimension()) throw ValidationError("displacement dimensions differ");
  return {a.dx_ + b.dx_, a.dp_ + b.dp_};
}

Displacement operator*(double t, const Displacement& a) { return {t * a.dx_, t * a.dp_}; }

WaveFunction1D displace(const WaveFunction1D& psi, const Displacement& d) {
  require_1d(d);
  const double dx = d.dx()[0];
  const double dp = d.dp()[0];
  const Grid1D& grid = psi.grid();
  const double hbar = psi.hbar();
  if (std::abs(dx) >= 0.5 * grid.width()) {
    std::ostringstream msg;
    msg << "position shift " << dx << " exceeds half the grid width " << 0.5 * grid.width();
    throw ValidationError(msg.str());
  }
  if (std::abs(dp) >= grid.p_nyquist(hbar)) {
    std::ostringstream msg;
    msg << "momentum kick " << dp << " exceeds the grid's Nyquist momentum " << grid.p_nyquist(hbar);
    throw ValidationError(msg.str());
  }
  Eigen::VectorXcd shifted = dx == 0.0 ? psi.amplitudes() : spectral::shift(psi.amplitudes(), dx / grid.dx());
  if (dp != 0.0) {
    for (Eigen::Index i = 0; i < shifted.size(); ++i) {
      shifted[i] *= std::polar(1.0, dp * (grid.x(static_cast<std::size_t>(i)) + 0.5 * dx) / hbar);
    }
  }
  WaveFunction1D out(grid, std::move(shifted), hbar);
  try {
    check_resolved(out);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("displaced state escapes the grid: ") + e.what());
  }
  return out;
}

std::complex<double> overlap_direct(const WaveFunction1D& psi, const Displacement& d) {
  return inner_product(psi, displace(psi, d));
}

std::complex<double> overlap_from_wigner(const WignerGrid& w, const Displacement& d) {
  require_1d(d);
  const double dx = d.dx()[0];
  const double dp = d.dp()[0];
  const double hbar = w.hbar();
  const double dp_limit = w.x_axis().p_nyquist(hbar);
  const double dx_limit = std::numbers::pi * hbar / w.dp();
  if (std::abs(dp) >= dp_limit || std::abs(dx) >= dx_limit) {
    std::ostringstream msg;
    msg << "displacement (dx=" << dx << ", dp=" << dp << ") outside the Nyquist range |dx| < " << dx_limit
        << ", |dp| < " << dp_limit;
    throw ValidationError(msg.str());
  }
  const auto n_x = static_cast<Eigen::Index>(w.n_x());
  const auto n_p = static_cast<Eigen::Index>(w.n_p());
  Eigen::VectorXcd phase_p(n_p);
  for (Eigen::Index j = 0; j < n_p; ++j) phase_p[j] = std::polar(1.0, dx * w.p(static_cast<std::size_t>(j)) / hbar);
  Eigen::VectorXcd phase_x(n_x);
  for (Eigen::Index i = 0; i < n_x; ++i) phase_x[i] = std::polar(1.0, dp * w.x(static_cast<std::size_t>(i)) / hbar);
  const Eigen::VectorXcd rows = w.values().cast<cplx>() * phase_p;
  return (phase_x.array() * rows.array()).sum() * (w.dx() * w.dp());
}

AutocorrelationKernel::AutocorrelationKernel(const WignerGrid& w) : w_(&w) {
  const Eigen::Index n_x = w.values().rows();
  const Eigen::Index n_p = w.values().cols();
  Eigen::MatrixXcd spectrum = w.values().cast<cplx>();
  for (Eigen::Index i = 0; i < n_x; ++i) spectrum.row(i) = spectral::fft(spectrum.row(i).transpose()).transpose();
  for (Eigen::Index j = 0; j < n_p; ++j) spectrum.col(j) = spectral::fft(spectrum.col(j));
  power_ = spectrum.cwiseAbs2() / static_cast<double>(n_x * n_p);
  abs_w_ = w.values().cwiseAbs();
  total_mass_ = abs_w_.sum();
}

double AutocorrelationKernel::operator()(const Displacement& d) const {
  require_1d(d);
  const WignerGrid& w = *w_;
  const double sx = d.dx()[0] / w.dx();
  const double sp = d.dp()[0] / w.dp();
  const double coverage =
      std::min(retained_mass(abs_w_, sx, sp), retained_mass(abs_w_, -sx, -sp)) / total_mass_;
  if (coverage < kMinCoverage) {
    std::ostringstream msg;
    msg << "shifted Wigner function keeps only " << coverage << " of its mass on the grid (need " << kMinCoverage
        << ")";
    throw ValidationError(msg.str());
  }
  const Eigen::Index n_x = power_.rows();
  const Eigen::Index n_p = power_.cols();
  Eigen::VectorXd cx(n_x), sxv(n_x), cp(n_p), spv(n_p);
  for (Eigen::Index k = 0; k < n_x; ++k) {
    const double a = kTwoPi * static_cast<double>(spectral::signed_index(k, n_x)) * sx / static_cast<double>(n_x);
    cx[k] = std::cos(a);
    sxv[k] = std::sin(a);
  }
  for (Eigen::Index l = 0; l < n_p; ++l) {
    const double a = kTwoPi * static_cast<double>(spectral::signed_index(l, n_p)) * sp / static_cast<double>(n_p);
    cp[l] = std::cos(a);
    spv[l] = std::sin(a);
  }
  // sum_kl P_kl cos(a_k + b_l)
  const double sum = cx.dot(power_ * cp) - sxv.dot(power_ * spv);
  return kTwoPi * w.hbar() * sum * w.dx() * w.dp();
}

double overlap_sq_autocorr(const WignerGrid& w, const Displacement& d) { return AutocorrelationKernel(w)(d); }

std::string to_string(OverlapRoute route) {
  switch (route) {
    case OverlapRoute::direct: return "direct";
    case OverlapRoute::wigner_ft: return "wigner-ft";
    case OverlapRoute::autocorr: return "autocorr";
    case OverlapRoute::analytic: return "analytic";
    case OverlapRoute::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

Displacement OverlapSeries::displacement_at(double t) const {
  Eigen::VectorXd dx = origin.dx() + t * (scale.hbar / scale.P) * direction.dx();
  Eigen::VectorXd dp = origin.dp() + t * (scale.hbar / scale.L) * direction.dp();
  return {std::move(dx), std::move(dp)};
}

OverlapSeries make_ray(const Displacement& direction, double t_max, std::size_t n, const RayScale& scale,
                       OverlapRoute route, std::string source, const std::optional<Displacement>& origin) {
  if (n < 16) throw ValidationError("a ray needs at least 16 points");
  if (!(t_max > 0.0)) throw ValidationError("t_max must be positive");
  const double norm = std::sqrt(direction.dx().squaredNorm() + direction.dp().squaredNorm());
  if (!(norm > 0.0)) throw ValidationError("ray direction must be nonzero");
  OverlapSeries series{origin.value_or(Displacement::zero(direction.dimension())),
                       (1.0 / norm) * direction,
                       scale,
                       route,
                       std::move(source),
                       {},
                       {},
                       {},
                       false};
  if (series.origin.dimension() != direction.dimension()) throw ValidationError("ray origin dimension mismatch");
  series.t.resize(n);
  series.values.assign(n, std::complex<double>(0.0));
  for (std::size_t i = 0; i < n; ++i) series.t[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
  return series;
}

OverlapSeries overlap_ray(const std::function<std::complex<double>(const Displacement&)>& evaluate,
                          const Displacement& direction, double t_max, std::size_t n, const RayScale& scale,
                          OverlapRoute route, std::string source, const std::optional<Displacement>& origin) {
  OverlapSeries series = make_ray(direction, t_max, n, scale, route, std::move(source), origin);
  std::vector<std::string> errors(n);
  parallel_for(n, [&](std::size_t i) {
    try {
      series.values[i] = evaluate(series.displacement_at(series.t[i]));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i].empty()) {
      std::ostringstream msg;
      msg << "ray point t=" << series.t[i] << ": " << errors[i];
      throw ValidationError(msg.str());
    }
  }
  return series;
}

OverlapSeries overlap_ray(const WaveFunction1D& psi, const Displacement& direction, double t_max, std::size_t n,
                          const RayScale& scale, std::string source) {
  return overlap_ray([&psi](const Displacement& d) { return overlap_direct(psi, d); }, direction, t_max, n, scale,
                     OverlapRoute::direct, std::move(source));
}

OverlapSeries overlap_ray(const WignerGrid& w, OverlapRoute route, const Displacement& direction, double t_max,
                          std::size_t n, const RayScale& scale, std::string source) {
  if (route == OverlapRoute::wigner_ft) {
    return overlap_ray([&w](const Displacement& d) { return overlap_from_wigner(w, d); }, direction, t_max, n,
                       scale, route, std::move(source));
  }
  if (route != OverlapRoute::autocorr) throw ValidationError("Wigner rays support the wigner-ft and autocorr routes");
  const AutocorrelationKernel kernel(w);
  OverlapSeries series = overlap_ray(
      [&kernel](const Displacement& d) { return cplx(std::sqrt(std::max(0.0, kernel(d))), 0.0); }, direction,
      t_max, n, scale, route, std::move(source));
  series.modulus_only = true;
  return series;
}

}  // namespace subplanck
