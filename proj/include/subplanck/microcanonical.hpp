#pragma once

#include <complex>
#include <cstdint>
#include <memory>

#include <Eigen/Dense>

#include "subplanck/overlap.hpp"
#include "subplanck/rng.hpp"

namespace subplanck {

/// Nearly circular 2-D billiard of radius L at momentum magnitude P.
struct DiskBilliard {
  DiskBilliard(double L, double P, double hbar = 1.0);
  double L;
  double P;
  double hbar;
};

/// Dilute gas of N particles in the box [-L/2, L/2]^3 at total energy
/// N P^2 / 2m. Excluded volume is ignored.
struct GasBox {
  GasBox(int N, double L, double P, double hbar = 1.0);
  int N;
  double L;
  double P;
  double hbar;

  int dimension() const { return 3 * N; }
  /// Bessel order (3N - 2) / 2 of the momentum-shell average.
  double order() const { return (3.0 * N - 2.0) / 2.0; }
};

inline constexpr int kMaxMonteCarloParticles = 100;

/// Phase-space points stored column-wise: positions.col(s), momenta.col(s).
struct PhaseSpaceSample {
  Eigen::MatrixXd positions;
  Eigen::MatrixXd momenta;
  Eigen::Index size() const { return positions.cols(); }
  Eigen::Index dimension() const { return positions.rows(); }
};

/// Uniform (Liouville) measure on an energy shell.
class ShellSampler {
 public:
  virtual ~ShellSampler() = default;
  virtual Eigen::Index dimension() const = 0;
  /// Fills the columns of x and p with independent shell points.
  virtual void fill(Rng& rng, Eigen::Ref<Eigen::MatrixXd> x, Eigen::Ref<Eigen::MatrixXd> p) const = 0;
};

class DiskShellSampler final : public ShellSampler {
 public:
  explicit DiskShellSampler(DiskBilliard geom) : geom_(geom) {}
  Eigen::Index dimension() const override { return 2; }
  void fill(Rng& rng, Eigen::Ref<Eigen::MatrixXd> x, Eigen::Ref<Eigen::MatrixXd> p) const override;

 private:
  DiskBilliard geom_;
};

class BoxShellSampler final : public ShellSampler {
 public:
  /// Throws ValidationError for N > 100 (use gas_overlap_analytic instead).
  explicit BoxShellSampler(GasBox gas);
  Eigen::Index dimension() const override { return gas_.dimension(); }
  void fill(Rng& rng, Eigen::Ref<Eigen::MatrixXd> x, Eigen::Ref<Eigen::MatrixXd> p) const override;

 private:
  GasBox gas_;
};

PhaseSpaceSample sample_disk_shell(const DiskBilliard& geom, std::uint64_t seed, Eigen::Index n);
PhaseSpaceSample sample_box_shell(const GasBox& gas, std::uint64_t seed, Eigen::Index n);

struct McEstimate {
  std::complex<double> mean;
  double standard_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Samples per independent RNG block; part of the determinism contract.
inline constexpr Eigen::Index kMcBlockSize = 65536;

/// Monte Carlo estimate of <exp(i (dp.x + dx.p) / hbar)> over the shell.
/// Samples are drawn in blocks of kMcBlockSize from split_seed(seed, block),
/// so the result depends only on (seed, n_samples). The standard error is
/// sqrt((var Re + var Im) / n).
McEstimate mc_overlap(const ShellSampler& sampler, const Displacement& d, std::int64_t n_samples,
                      std::uint64_t seed, double hbar);

/// Same estimator over pre-drawn points.
McEstimate mc_overlap(const PhaseSpaceSample& sample, const Displacement& d, double hbar);

/// J0(P |dx| / hbar) * 2 J1(L |dp| / hbar) / (L |dp| / hbar).
double disk_overlap_analytic(const DiskBilliard& geom, double dx_mag, double dp_mag);

/// Lambda_nu(sqrt(N) P |dx| / hbar) * prod_i sinc(L dp_i / 2 hbar), nu = (3N - 2) / 2.
double gas_overlap_analytic(const GasBox& gas, double dx_mag, const Eigen::VectorXd& dp);

/// Same with every one of the 3N momentum components equal to |dp| / sqrt(3N).
double gas_overlap_analytic_equal(const GasBox& gas, double dx_mag, double dp_mag);

/// exp(-P^2 |dx|^2 / 6 hbar^2) exp(-L^2 |dp|^2 / 24 hbar^2).
double gas_overlap_gaussian(const GasBox& gas, double dx_mag, double dp_mag);

/// Monte Carlo overlap along a ray; each ray point uses seed split by index.
OverlapSeries mc_overlap_ray(const ShellSampler& sampler, const Displacement& direction, double t_max,
                             std::size_t n, const RayScale& scale, std::int64_t n_samples, std::uint64_t seed,
                             std::string source);

}  // namespace subplanck
