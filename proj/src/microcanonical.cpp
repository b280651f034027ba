#include "subplanck/microcanonical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "subplanck/bessel.hpp"
#include "subplanck/error.hpp"
#include "subplanck/parallel.hpp"

namespace subplanck {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct Moments {
  CompensatedSum re, im, re2, im2;
  void add(double c, double s) {
    re.add(c);
    im.add(s);
    re2.add(c * c);
    im2.add(s * s);
  }
  void merge(const Moments& o) {
    re.add(o.re.value());
    im.add(o.im.value());
    re2.add(o.re2.value());
    im2.add(o.im2.value());
  }
};

void accumulate(Moments& m, const Eigen::Ref<const Eigen::MatrixXd>& x, const Eigen::Ref<const Eigen::MatrixXd>& p,
                const Displacement& d, double hbar) {
  const Eigen::VectorXd phases = (d.dp().transpose() * x + d.dx().transpose() * p).transpose() / hbar;
  for (Eigen::Index s = 0; s < phases.size(); ++s) m.add(std::cos(phases[s]), std::sin(phases[s]));
}

McEstimate finish(const Moments& m, std::int64_t n, std::uint64_t seed) {
  const double nd = static_cast<double>(n);
  const double mean_re = m.re.value() / nd;
  const double mean_im = m.im.value() / nd;
  double var = 0.0;
  if (n > 1) {
    const double var_re = std::max(0.0, (m.re2.value() - nd * mean_re * mean_re) / (nd - 1.0));
    const double var_im = std::max(0.0, (m.im2.value() - nd * mean_im * mean_im) / (nd - 1.0));
    var = var_re + var_im;
  }
  return {{mean_re, mean_im}, std::sqrt(var / nd), n, seed};
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be positive");
}

}  // namespace

DiskBilliard::DiskBilliard(double L_, double P_, double hbar_) : L(L_), P(P_), hbar(hbar_) {
  require_positive(L, "disk radius L");
  require_positive(P, "momentum P");
  require_positive(hbar, "hbar");
}

GasBox::GasBox(int N_, double L_, double P_, double hbar_) : N(N_), L(L_), P(P_), hbar(hbar_) {
  if (N < 1) throw ValidationError("particle count N must be >= 1");
  require_positive(L, "box side L");
  require_positive(P, "momentum P");
  require_positive(hbar, "hbar");
}

void DiskShellSampler::fill(Rng& rng, Eigen::Ref<Eigen::MatrixXd> x, Eigen::Ref<Eigen::MatrixXd> p) const {
  for (Eigen::Index s = 0; s < x.cols(); ++s) {
    const double r = geom_.L * std::sqrt(rng.uniform());
    const double a = kTwoPi * rng.uniform();
    const double b = kTwoPi * rng.uniform();
    x(0, s) = r * std::cos(a);
    x(1, s) = r * std::sin(a);
    p(0, s) = geom_.P * std::cos(b);
    p(1, s) = geom_.P * std::sin(b);
  }
}

BoxShellSampler::BoxShellSampler(GasBox gas) : gas_(gas) {
  if (gas_.N > kMaxMonteCarloParticles) {
    std::ostringstream msg;
    msg << "Monte Carlo sampling supports N <= " << kMaxMonteCarloParticles << " (got N = " << gas_.N
        << "); use the analytic oracle for larger gases";
    throw ValidationError(msg.str());
  }
}

void BoxShellSampler::fill(Rng& rng, Eigen::Ref<Eigen::MatrixXd> x, Eigen::Ref<Eigen::MatrixXd> p) const {
  const Eigen::Index dim = gas_.dimension();
  const double radius = std::sqrt(static_cast<double>(gas_.N)) * gas_.P;
  for (Eigen::Index s = 0; s < x.cols(); ++s) {
    for (Eigen::Index c = 0; c < dim; ++c) x(c, s) = gas_.L * (rng.uniform() - 0.5);
    double norm2 = 0.0;
    for (Eigen::Index c = 0; c < dim; ++c) {
      p(c, s) = rng.normal();
      norm2 += p(c, s) * p(c, s);
    }
    p.col(s) *= radius / std::sqrt(norm2);
  }
}

namespace {

PhaseSpaceSample draw(const ShellSampler& sampler, std::uint64_t seed, Eigen::Index n) {
  if (n < 1) throw ValidationError("sample count must be >= 1");
  PhaseSpaceSample out{Eigen::MatrixXd(sampler.dimension(), n), Eigen::MatrixXd(sampler.dimension(), n)};
  Rng rng(seed);
  sampler.fill(rng, out.positions, out.momenta);
  return out;
}

}  // namespace

PhaseSpaceSample sample_disk_shell(const DiskBilliard& geom, std::uint64_t seed, Eigen::Index n) {
  return draw(DiskShellSampler(geom), seed, n);
}

PhaseSpaceSample sample_box_shell(const GasBox& gas, std::uint64_t seed, Eigen::Index n) {
  return draw(BoxShellSampler(gas), seed, n);
}

McEstimate mc_overlap(const ShellSampler& sampler, const Displacement& d, std::int64_t n_samples,
                      std::uint64_t seed, double hbar) {
  if (d.dimension() != sampler.dimension()) {
    std::ostringstream msg;
    msg << "displacement dimension " << d.dimension() << " does not match the shell dimension "
        << sampler.dimension();
    throw ValidationError(msg.str());
  }
  if (n_samples < 1) throw ValidationError("sample count must be >= 1");
  const auto blocks = static_cast<std::size_t>((n_samples + kMcBlockSize - 1) / kMcBlockSize);
  std::vector<Moments> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const Eigen::Index begin = static_cast<Eigen::Index>(b) * kMcBlockSize;
    const Eigen::Index count = std::min<Eigen::Index>(kMcBlockSize, n_samples - begin);
    Eigen::MatrixXd x(sampler.dimension(), count);
    Eigen::MatrixXd p(sampler.dimension(), count);
    Rng rng(split_seed(seed, b));
    sampler.fill(rng, x, p);
    accumulate(partial[b], x, p, d, hbar);
  });
  Moments total;
  for (const auto& m : partial) total.merge(m);
  return finish(total, n_samples, seed);
}

McEstimate mc_overlap(const PhaseSpaceSample& sample, const Displacement& d, double hbar) {
  if (d.dimension() != sample.dimension()) throw ValidationError("displacement dimension does not match the sample");
  Moments m;
  accumulate(m, sample.positions, sample.momenta, d, hbar);
  return finish(m, sample.size(), 0);
}

double disk_overlap_analytic(const DiskBilliard& geom, double dx_mag, double dp_mag) {
  if (dx_mag < 0.0 || dp_mag < 0.0) throw ValidationError("displacement magnitudes must be non-negative");
  return scaled_bessel(0.0, geom.P * dx_mag / geom.hbar) * scaled_bessel(1.0, geom.L * dp_mag / geom.hbar);
}

double gas_overlap_analytic(const GasBox& gas, double dx_mag, const Eigen::VectorXd& dp) {
  if (dx_mag < 0.0) throw ValidationError("|dx| must be non-negative");
  if (dp.size() != gas.dimension()) {
    std::ostringstream msg;
    msg << "gas momentum displacement needs " << gas.dimension() << " components, got " << dp.size();
    throw ValidationError(msg.str());
  }
  double value = scaled_bessel(gas.order(), std::sqrt(static_cast<double>(gas.N)) * gas.P * dx_mag / gas.hbar);
  for (Eigen::Index i = 0; i < dp.size(); ++i) value *= sinc(gas.L * dp[i] / (2.0 * gas.hbar));
  return value;
}

double gas_overlap_analytic_equal(const GasBox& gas, double dx_mag, double dp_mag) {
  if (dp_mag < 0.0) throw ValidationError("|dp| must be non-negative");
  const double component = dp_mag / std::sqrt(static_cast<double>(gas.dimension()));
  return gas_overlap_analytic(gas, dx_mag, Eigen::VectorXd::Constant(gas.dimension(), component));
}

double gas_overlap_gaussian(const GasBox& gas, double dx_mag, double dp_mag) {
  if (dx_mag < 0.0 || dp_mag < 0.0) throw ValidationError("displacement magnitudes must be non-negative");
  const double a = gas.P * dx_mag / gas.hbar;
  const double b = gas.L * dp_mag / gas.hbar;
  return std::exp(-a * a / 6.0) * std::exp(-b * b / 24.0);
}

OverlapSeries mc_overlap_ray(const ShellSampler& sampler, const Displacement& direction, double t_max,
                             std::size_t n, const RayScale& scale, std::int64_t n_samples, std::uint64_t seed,
                             std::string source) {
  OverlapSeries series = make_ray(direction, t_max, n, scale, OverlapRoute::monte_carlo, std::move(source));
  series.standard_errors.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const McEstimate e =
        mc_overlap(sampler, series.displacement_at(series.t[i]), n_samples, split_seed(seed, i), scale.hbar);
    series.values[i] = e.mean;
    series.standard_errors[i] = e.standard_error;
  }
  return series;
}

}  // namespace subplanck
