// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "subplanck/analysis.hpp"
#include "subplanck/bessel.hpp"
#include "subplanck/io.hpp"
#include "subplanck/microcanonical.hpp"
#include "subplanck/overlap.hpp"
#include "subplanck/randomwave.hpp"
#include "subplanck/rng.hpp"
#include "subplanck/statekit.hpp"
#include "subplanck/wigner.hpp"

using namespace subplanck;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

int failures = 0;

void run_criterion(int id, const std::string& title, double time_limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0) {
    o.detail << "; " << fmt(seconds) << " s (limit " << fmt(time_limit) << " s)";
    o.require(seconds < time_limit, "runtime");
  } else {
    o.detail << "; " << fmt(seconds) << " s";
  }
  if (!o.pass) ++failures;
  std::printf("%s [%d] %s:%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.str().c_str());
  std::fflush(stdout);
}

double max_pairwise(const OverlapSeries& a, const OverlapSeries& b, const OverlapSeries& c) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    const double x = std::abs(a.values[i]);
    const double y = std::abs(b.values[i]);
    const double z = std::abs(c.values[i]);
    worst = std::max({worst, std::abs(x - y), std::abs(x - z), std::abs(y - z)});
  }
  return worst;
}

void three_routes(Outcome& o) {
  const Grid1D grid = Grid1D::centered(20.0, 512);
  const RayScale scale{};
  struct Case {
    const char* name;
    WaveFunction1D psi;
  };
  const std::vector<Case> cases = {{"gaussian", gaussian_packet(grid, 0.0, 0.0, 1.0, 1.0)},
                                   {"cat", cat_state(grid, 8.0, 1.0, 1.0)}};
  for (const auto& c : cases) {
    const WignerGrid w = wigner_transform(c.psi);
    for (const auto& [ray, dir, tmax] : {std::tuple{"dx", Displacement(1.0, 0.0), 10.0},
                                         std::tuple{"dp", Displacement(0.0, 1.0), 6.0}}) {
      const auto direct = overlap_ray(c.psi, dir, tmax, 21, scale);
      const auto wft = overlap_ray(w, OverlapRoute::wigner_ft, dir, tmax, 21, scale);
      const auto ac = overlap_ray(w, OverlapRoute::autocorr, dir, tmax, 21, scale);
      const double dev = max_pairwise(direct, wft, ac);
      o.detail << " " << c.name << "/" << ray << " max dev " << fmt(dev);
      o.require(dev < 1e-5, std::string(c.name) + "/" + ray + " deviation");
    }
  }
}

void disk_monte_carlo(Outcome& o) {
  const DiskBilliard geom(1.0, 1.0, 1.0);
  const DiskShellSampler sampler(geom);
  const std::vector<double> dxs = {0.0, 1.5, 3.0, 4.5, 6.0};
  const std::vector<double> dps = {0.5, 2.0, 3.5, 5.0};
  int within = 0;
  int cell = 0;
  double worst_z = 0.0;
  for (double dx : dxs) {
    for (double dp : dps) {
      // Directions vary from cell to cell; the analytic result depends on magnitudes only.
      const double a = 0.37 * cell;
      const double b = 1.1 + 0.53 * cell;
      const Displacement d(Eigen::Vector2d(dx * std::cos(a), dx * std::sin(a)),
                           Eigen::Vector2d(dp * std::cos(b), dp * std::sin(b)));
      const McEstimate est = mc_overlap(sampler, d, 1000000, split_seed(20240611, cell), geom.hbar);
      const double exact = disk_overlap_analytic(geom, dx, dp);
      const double z = std::abs(est.mean - std::complex<double>(exact, 0.0)) / est.standard_error;
      worst_z = std::max(worst_z, z);
      if (z < 3.0) ++within;
      ++cell;
    }
  }
  o.detail << " " << within << "/20 cells within 3 stderr (worst " << fmt(worst_z) << " stderr)";
  o.require(within >= 18, "cells within 3 stderr");
}

OverlapSeries disk_series(bool dx_ray, double t_max, std::size_t n) {
  const DiskBilliard geom(1.0, 1.0, 1.0);
  return overlap_ray(
      [geom](const Displacement& d) {
        return std::complex<double>(disk_overlap_analytic(geom, d.dx().norm(), d.dp().norm()), 0.0);
      },
      dx_ray ? Displacement(1.0, 0.0) : Displacement(0.0, 1.0), t_max, n, RayScale{}, OverlapRoute::analytic,
      "disk");
}

OverlapSeries gas_dx_series(int N, double t_max, std::size_t n) {
  const GasBox gas(N, 1.0, 1.0, 1.0);
  return overlap_ray(
      [gas](const Displacement& d) {
        return std::complex<double>(gas_overlap_analytic_equal(gas, d.dx().norm(), 0.0), 0.0);
      },
      Displacement(1.0, 0.0), t_max, n, RayScale{}, OverlapRoute::analytic, "gas");
}

void zero_structure(Outcome& o) {
  const auto j0 = [](double x) { return oracle::bessel_j_series(0, x); };
  const auto j1 = [](double x) { return oracle::bessel_j_series(1, x); };
  const auto j0_roots = oracle::zeros(j0, 11);
  const double j1_root = oracle::zeros(j1, 1).front();
  o.detail << " oracle roots " << fmt(j0_roots[0], 10) << ", " << fmt(j1_root, 10) << ";";

  const auto zx = find_zeros(disk_series(true, 40.0, 4096));
  const auto zp = find_zeros(disk_series(false, 10.0, 1024));
  o.require(zx.size() >= 11 && !zp.empty(), "zero count");
  if (!o.pass) return;
  o.detail << " first dx zero " << fmt(zx[0], 10) << ", first dp zero " << fmt(zp[0], 10);
  o.require(std::abs(zx[0] - 2.404826) < 1e-4, "first dx zero");
  o.require(std::abs(zp[0] - 3.831706) < 1e-4, "first dp zero");
  o.require(std::abs(zx[0] - j0_roots[0]) < 1e-4, "dx zero vs oracle");
  o.require(std::abs(zp[0] - j1_root) < 1e-4, "dp zero vs oracle");
  const double s_into = zx[9] - zx[8];
  const double s_after = zx[10] - zx[9];
  o.detail << ", spacings at the 10th zero " << fmt(s_into, 6) << " / " << fmt(s_after, 6) << " vs pi";
  o.require(std::abs(s_into / pi - 1.0) < 0.01 && std::abs(s_after / pi - 1.0) < 0.01, "10th zero spacing");
}

void ringing_exponents(Outcome& o) {
  const double ex = analyze_ringing(disk_series(true, 40.0, 4096)).fit.exponent;
  const double ep = analyze_ringing(disk_series(false, 40.0, 4096)).fit.exponent;
  o.detail << " disk dx " << fmt(ex, 4) << ", disk dp " << fmt(ep, 4);
  o.require(std::abs(ex + 0.5) <= 0.05, "disk dx exponent");
  o.require(std::abs(ep + 1.5) <= 0.05, "disk dp exponent");
  std::vector<double> gas_abs;
  for (int N : {1, 2, 5}) {
    const double e = analyze_ringing(gas_dx_series(N, 60.0, 8192)).fit.exponent;
    o.detail << ", gas N=" << N << " " << fmt(e, 4);
    gas_abs.push_back(std::abs(e));
    if (N == 1) o.require(std::abs(e + 1.0) <= 0.05, "gas N=1 exponent");
  }
  o.require(gas_abs[0] < gas_abs[1] && gas_abs[1] < gas_abs[2], "gas |exponent| increasing");
}

void large_n_limit(Outcome& o) {
  const auto rows = gaussian_convergence({10, 100, 1000});
  std::vector<double> dx;
  for (const auto& r : rows) {
    o.detail << (dx.empty() ? " " : ", ") << "N=" << r.N << " dx " << fmt(r.dx_deviation) << " dp "
             << fmt(r.dp_deviation);
    dx.push_back(r.dx_deviation);
  }
  o.require(strictly_decreasing(dx), "dx deviation strictly decreasing");
  o.require(rows[2].dx_deviation < 1e-2, "dx deviation at N=1000");
  o.require(rows[2].dp_deviation < 1e-3, "dp deviation at N=1000");
}

void unit_overlap(Outcome& o) {
  double worst = 0.0;
  const auto track = [&](std::complex<double> v) { worst = std::max(worst, std::abs(v - 1.0)); };
  const Grid1D grid = Grid1D::centered(20.0, 512);
  for (const auto& psi : {gaussian_packet(grid, 1.0, 0.5, 1.0, 1.0), cat_state(grid, 8.0, 1.0, 1.0),
                          momentum_cat_state(grid, 8.0, 1.0, 1.0), compass_state(grid, 8.0, 8.0, 1.0, 1.0)}) {
    const Displacement zero(0.0, 0.0);
    const WignerGrid w = wigner_transform(psi);
    track(overlap_direct(psi, zero));
    track(overlap_from_wigner(w, zero));
    track(std::sqrt(overlap_sq_autocorr(w, zero)));
  }
  const DiskBilliard disk(1.0, 1.0, 1.0);
  track(disk_overlap_analytic(disk, 0.0, 0.0));
  track(mc_overlap(DiskShellSampler(disk), Displacement::zero(2), 1000, 1, 1.0).mean);
  for (int N : {1, 2, 5, 10, 100}) {
    const GasBox gas(N, 1.0, 1.0, 1.0);
    track(mc_overlap(BoxShellSampler(gas), Displacement::zero(gas.dimension()), 1000, 1, 1.0).mean);
  }
  for (int N = 1; N <= 1000; ++N) {
    const GasBox gas(N, 1.0, 1.0, 1.0);
    track(gas_overlap_analytic(gas, 0.0, Eigen::VectorXd::Zero(gas.dimension())));
    track(gas_overlap_gaussian(gas, 0.0, 0.0));
  }
  double worst_lambda = 0.0;
  for (int twice = 0; twice <= 2998; ++twice) {
    const double nu = twice / 2.0;
    worst_lambda = std::max(worst_lambda, std::abs(scaled_bessel(nu, 0.0) - 1.0));
    // Just off the origin the kernel must approach 1 as 1 - xi^2 / (4 (nu + 1)).
    const double xi = 1e-3;
    worst_lambda = std::max(worst_lambda, std::abs(scaled_bessel(nu, xi) - (1.0 - xi * xi / (4.0 * (nu + 1.0)))));
  }
  o.detail << " max |<D(0,0)> - 1| over routes " << fmt(worst) << ", Lambda_nu(0) for nu <= 1499 " << fmt(worst_lambda);
  o.require(worst < 1e-9, "routes at zero displacement");
  o.require(worst_lambda < 1e-9, "Lambda_nu near zero");
}

void wigner_integrity(Outcome& o) {
  struct Case {
    const char* name;
    WaveFunction1D psi;
    double s;
  };
  const Grid1D g16 = Grid1D::centered(16.0, 512);
  const Grid1D g32 = Grid1D::centered(32.0, 1024);
  const std::vector<Case> cases = {{"gaussian", gaussian_packet(g16, 0.5, -0.5, 1.0, 1.0), 0.0},
                                   {"cat s=8", cat_state(g16, 8.0, 1.0, 1.0), 8.0},
                                   {"cat s=16", cat_state(g32, 16.0, 1.0, 1.0), 16.0},
                                   {"compass", compass_state(g16, 8.0, 8.0, 1.0, 1.0), 0.0}};
  double worst_norm = 0.0;
  double worst_purity = 0.0;
  double worst_marginal = 0.0;
  for (const auto& c : cases) {
    const WignerGrid w = wigner_transform(c.psi);
    worst_norm = std::max(worst_norm, std::abs(normalization(w) - 1.0));
    worst_purity = std::max(worst_purity, std::abs(purity(w) - 1.0));
    worst_marginal =
        std::max(worst_marginal, (marginal_x(w) - position_density(c.psi)).cwiseAbs().maxCoeff());
    if (c.s > 0) {
      const double expected = 2 * pi / c.s;
      const double period = fringe_wavelength(w, Axis::p, PhaseWindow{-1.0, 1.0, -3.0, 3.0});
      o.detail << " " << c.name << " fringe " << fmt(period, 5) << " vs " << fmt(expected, 5) << ";";
      o.require(std::abs(period / expected - 1.0) < 0.05, std::string(c.name) + " fringe period");
    }
  }
  o.detail << " |norm-1| " << fmt(worst_norm) << ", |purity-1| " << fmt(worst_purity) << ", marginal "
           << fmt(worst_marginal);
  o.require(worst_norm < 1e-6, "normalization");
  o.require(worst_purity < 1e-5, "purity");
  o.require(worst_marginal < 1e-8, "marginal");
}

void random_waves(Outcome& o) {
  const double k = 40.0;
  std::vector<double> sep;
  for (int i = 0; i <= 25; ++i) sep.push_back(0.4 * i / k);
  std::vector<double> mean(sep.size(), 0.0);
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    const auto state = random_wave_state(k, 400, 1.0, split_seed(7, s));
    const auto c = autocorrelation(state, sep, 500, split_seed(8, s));
    for (std::size_t i = 0; i < sep.size(); ++i) mean[i] += c[i] / seeds;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < sep.size(); ++i) {
    worst = std::max(worst, std::abs(mean[i] - oracle::bessel_j_series(0, k * sep[i])));
  }
  o.detail << " autocorrelation vs J0 max dev " << fmt(worst);
  o.require(worst < 0.05, "autocorrelation");

  VarianceScalingConfig cfg;
  cfg.k_list = {25, 50, 100, 200};
  const auto rows = variance_scaling(cfg);
  std::vector<double> fl;
  o.detail << "; fluctuation";
  for (const auto& r : rows) {
    o.detail << " " << fmt(r.relative_fluctuation);
    fl.push_back(r.relative_fluctuation);
  }
  o.require(strictly_decreasing(fl), "fluctuation strictly decreasing");
}

bool same_bytes(const std::filesystem::path& a, const std::filesystem::path& b) {
  return io::read_file(a) == io::read_file(b);
}

void determinism(Outcome& o) {
  const auto dir = std::filesystem::temp_directory_path() / "subplanck_acceptance";
  std::filesystem::create_directories(dir);
  std::ostringstream sink;
  const std::vector<std::vector<std::string>> commands = {
      {"mc", "--geometry", "disk", "--ray", "mixed", "--samples", "200000", "--seed", "42", "--format", "csv"},
      {"mc", "--geometry", "gas", "--N", "3", "--dp-ray", "--samples", "100000", "--seed", "9", "--format", "json"},
      {"study", "--study", "variance-scaling", "--k-list", "25,50", "--ensemble", "30", "--seed", "5"}};
  int idx = 0;
  for (const auto& base : commands) {
    std::vector<std::filesystem::path> outs;
    for (const char* threads : {"1", "3"}) {
      ::setenv("SUBPLANCK_THREADS", threads, 1);
      auto args = base;
      const auto out = dir / ("run" + std::to_string(idx) + "_" + threads + ".out");
      args.push_back("--out");
      args.push_back(out.string());
      const int rc = cli::run(args, sink, sink);
      o.require(rc == 0, base[0] + " exit code");
      outs.push_back(out);
    }
    ::unsetenv("SUBPLANCK_THREADS");
    const bool same = same_bytes(outs[0], outs[1]);
    bool summary_same = true;
    if (base[0] == "study") summary_same = same_bytes(outs[0].string() + ".summary.json", outs[1].string() + ".summary.json");
    o.detail << " " << base[0] << "#" << idx << (same && summary_same ? " identical" : " differs");
    o.require(same && summary_same, "byte-identical " + base[0]);
    ++idx;
  }
  std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
  run_criterion(1, "three-route overlap equivalence", 10, three_routes);
  run_criterion(2, "disk billiard Monte Carlo vs closed form", 60, disk_monte_carlo);
  run_criterion(3, "zero structure", 0, zero_structure);
  run_criterion(4, "ringing exponents", 0, ringing_exponents);
  run_criterion(5, "large-N Gaussian limit", 5, large_n_limit);
  run_criterion(6, "unitarity and normalization", 0, unit_overlap);
  run_criterion(7, "Wigner integrity", 0, wigner_integrity);
  run_criterion(8, "random waves", 120, random_waves);
  run_criterion(9, "determinism", 0, determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
