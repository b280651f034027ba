#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "subplanck/analysis.hpp"
#include "subplanck/bessel.hpp"
#include "subplanck/error.hpp"
#include "subplanck/io.hpp"
#include "subplanck/microcanonical.hpp"
#include "subplanck/overlap.hpp"
#include "subplanck/statekit.hpp"
#include "subplanck/wigner.hpp"

#ifndef SUBPLANCK_BUILD_ID
#define SUBPLANCK_BUILD_ID "unknown"
#endif

namespace subplanck::cli {

namespace {

using io::CsvTable;
using io::Json;

struct Units {
  double hbar = 1.0;
  double P = 1.0;
  double L = 1.0;
};

void add_units(CLI::App& app, Units& u) {
  app.add_option("--hbar", u.hbar, "Reduced Planck constant")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--P", u.P, "Characteristic momentum P")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--L", u.L, "Characteristic length L")->capture_default_str()->check(CLI::PositiveNumber);
}

std::string units_line(const Units& u) {
  return "hbar=" + io::format_double(u.hbar) + " P=" + io::format_double(u.P) + " L=" + io::format_double(u.L);
}

Json units_json(const Units& u) { return Json{{"hbar", u.hbar}, {"P", u.P}, {"L", u.L}}; }

std::vector<std::string> base_comments(const std::string& command, const Units& u) {
  return {"subplanck " + command, "build=" SUBPLANCK_BUILD_ID, units_line(u)};
}

struct StateSpec {
  std::string kind = "gaussian";
  double sep = 8.0;
  std::optional<double> psep;
  double sigma = 1.0;
  double x0 = 0.0;
  double p0 = 0.0;
  std::size_t grid = 512;
  double xmax = 16.0;
};

void add_state(CLI::App& app, StateSpec& s) {
  app.add_option("--state", s.kind, "gaussian | cat2 | pcat2 | cat4")
      ->capture_default_str()
      ->check(CLI::IsMember({"gaussian", "cat2", "pcat2", "cat4"}));
  app.add_option("--sep", s.sep, "Packet separation (position for cat2/cat4, momentum for pcat2)")
      ->capture_default_str();
  app.add_option("--psep", s.psep, "Momentum separation of the cat4 packets (default: --sep)");
  app.add_option("--sigma", s.sigma, "Packet width (position standard deviation)")->capture_default_str();
  app.add_option("--x0", s.x0, "Gaussian centre")->capture_default_str();
  app.add_option("--p0", s.p0, "Gaussian mean momentum")->capture_default_str();
  app.add_option("--grid", s.grid, "Grid points (power of two >= 64)")->capture_default_str();
  app.add_option("--xmax", s.xmax, "Grid half-width; x in [-xmax, xmax)")->capture_default_str();
}

WaveFunction1D build_state(const StateSpec& s, double hbar) {
  const Grid1D grid = Grid1D::centered(s.xmax, s.grid);
  if (s.kind == "gaussian") return gaussian_packet(grid, s.x0, s.p0, s.sigma, hbar);
  if (s.kind == "cat2") return cat_state(grid, s.sep, s.sigma, hbar);
  if (s.kind == "pcat2") return momentum_cat_state(grid, s.sep, s.sigma, hbar);
  return compass_state(grid, s.sep, s.psep.value_or(s.sep), s.sigma, hbar);
}

Json state_json(const StateSpec& s) {
  Json j{{"kind", s.kind}, {"sigma", s.sigma}, {"grid", s.grid}, {"xmax", s.xmax}};
  if (s.kind == "gaussian") {
    j["x0"] = s.x0;
    j["p0"] = s.p0;
  } else {
    j["sep"] = s.sep;
    if (s.kind == "cat4") j["psep"] = s.psep.value_or(s.sep);
  }
  return j;
}

void write_csv(const std::string& path, const CsvTable& table) { io::write_file_atomic(path, io::to_csv(table)); }

void write_json(const std::string& path, const Json& j) { io::write_file_atomic(path, j.dump(2) + "\n"); }

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0') {
      throw ValidationError(std::string("malformed ") + what + " list: '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError(std::string("empty ") + what + " list");
  return out;
}

/// 1-D direction for grid-based states.
Displacement grid_direction(const std::string& ray) {
  if (ray == "dx") return {1.0, 0.0};
  if (ray == "dp") return {0.0, 1.0};
  return {1.0, 1.0};
}

/// Direction in 2 (disk) or 3N (gas) dimensions. The dp part of a gas ray has
/// equal components.
Displacement shell_direction(const std::string& ray, Eigen::Index dim) {
  Eigen::VectorXd dx = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd dp = Eigen::VectorXd::Zero(dim);
  const Eigen::VectorXd equal = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  if (ray == "dx" || ray == "mixed") dx[0] = 1.0;
  if (ray == "dp" || ray == "mixed") {
    if (dim == 2) {
      dp[1] = 1.0;
    } else {
      dp = equal;
    }
  }
  return {dx, dp};
}

struct RaySpec {
  std::string ray = "dx";
  double tmax = 10.0;
  std::size_t n = 21;
  bool dx_flag = false;
  bool dp_flag = false;
};

void add_ray(CLI::App& app, RaySpec& r, std::size_t default_n, double default_tmax) {
  r.n = default_n;
  r.tmax = default_tmax;
  app.add_option("--ray", r.ray, "Displacement ray: dx | dp | mixed")
      ->capture_default_str()
      ->check(CLI::IsMember({"dx", "dp", "mixed"}));
  app.add_flag("--dx-ray", r.dx_flag, "Shorthand for --ray dx");
  app.add_flag("--dp-ray", r.dp_flag, "Shorthand for --ray dp");
  app.add_option("--tmax", r.tmax, "Largest ray parameter (units hbar/P for dx, hbar/L for dp)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--n", r.n, "Number of ray points")->capture_default_str();
}

void resolve_ray(RaySpec& r) {
  if (r.dx_flag && r.dp_flag) throw ValidationError("--dx-ray and --dp-ray are exclusive");
  if (r.dx_flag) r.ray = "dx";
  if (r.dp_flag) r.ray = "dp";
}

// ---------------------------------------------------------------------------

struct WignerCmd {
  Units units;
  StateSpec state;
  std::string out;
  std::string format = "csv";
  std::string summary;
  std::string fringe_axis;
  std::vector<double> window;
};

int cmd_wigner(const WignerCmd& c, std::ostream& log) {
  const WaveFunction1D psi = build_state(c.state, c.units.hbar);
  const WignerGrid w = wigner_transform(psi);
  if (c.format == "bin") {
    io::write_file_atomic(c.out, io::wigner_to_binary(w));
  } else {
    CsvTable table = io::wigner_to_csv(w);
    table.comments = base_comments("wigner", c.units);
    write_csv(c.out, table);
  }
  Json summary{{"command", "wigner"},
               {"build", SUBPLANCK_BUILD_ID},
               {"units", units_json(c.units)},
               {"state", state_json(c.state)},
               {"n_x", w.n_x()},
               {"n_p", w.n_p()},
               {"dx", w.dx()},
               {"dp", w.dp()},
               {"normalization", normalization(w)},
               {"purity", purity(w)},
               {"max_abs_w", w.values().cwiseAbs().maxCoeff()},
               {"pure_state_bound", 1.0 / (std::numbers::pi * c.units.hbar)},
               {"imaginary_residue", w.imaginary_residue()}};
  if (!c.fringe_axis.empty()) {
    if (c.window.size() != 4) throw ValidationError("--window needs x_lo,x_hi,p_lo,p_hi");
    const PhaseWindow win{c.window[0], c.window[1], c.window[2], c.window[3]};
    const double period = fringe_wavelength(w, c.fringe_axis == "x" ? Axis::x : Axis::p, win);
    summary["fringe"] = Json{{"axis", c.fringe_axis}, {"window", c.window}, {"period", period}};
  }
  write_json(c.summary.empty() ? c.out + ".summary.json" : c.summary, summary);
  log << "normalization " << io::format_double(normalization(w)) << ", purity " << io::format_double(purity(w))
      << "\n";
  return kOk;
}

struct OverlapCmd {
  Units units;
  StateSpec state;
  RaySpec ray;
  std::string route = "direct";
  std::string out;
  std::string format = "csv";
};

int cmd_overlap(OverlapCmd c, std::ostream& log) {
  resolve_ray(c.ray);
  const WaveFunction1D psi = build_state(c.state, c.units.hbar);
  const Displacement dir = grid_direction(c.ray.ray);
  const RayScale scale{c.units.hbar, c.units.P, c.units.L};
  const std::string source = c.state.kind;

  std::vector<std::pair<std::string, OverlapSeries>> series;
  if (c.route == "direct" || c.route == "all") {
    series.emplace_back("direct", overlap_ray(psi, dir, c.ray.tmax, c.ray.n, scale, source));
  }
  if (c.route != "direct") {
    const WignerGrid w = wigner_transform(psi);
    if (c.route == "wigner-ft" || c.route == "all") {
      series.emplace_back("wigner", overlap_ray(w, OverlapRoute::wigner_ft, dir, c.ray.tmax, c.ray.n, scale, source));
    }
    if (c.route == "autocorr" || c.route == "all") {
      series.emplace_back("autocorr", overlap_ray(w, OverlapRoute::autocorr, dir, c.ray.tmax, c.ray.n, scale, source));
    }
  }

  std::vector<std::string> comments = base_comments("overlap", c.units);
  comments.push_back("state=" + c.state.kind + " ray=" + c.ray.ray + " route=" + c.route);

  if (c.route != "all") {
    if (c.format == "json") {
      Json j = io::series_to_json(series.front().second);
      j["metadata"]["build"] = SUBPLANCK_BUILD_ID;
      j["metadata"]["state"] = state_json(c.state);
      write_json(c.out, j);
    } else {
      CsvTable table = io::series_to_csv(series.front().second);
      table.comments = comments;
      write_csv(c.out, table);
    }
    return kOk;
  }

  const auto& direct = series[0].second;
  const auto& wig = series[1].second;
  const auto& ac = series[2].second;
  double worst = 0.0;
  CsvTable table;
  table.comments = comments;
  table.header = {"t",         "re_direct", "im_direct",   "abs_direct", "re_wigner",
                  "im_wigner", "abs_wigner", "abs_autocorr", "max_pairwise_dev"};
  for (std::size_t i = 0; i < direct.t.size(); ++i) {
    const double a = std::abs(direct.values[i]);
    const double b = std::abs(wig.values[i]);
    const double d = std::abs(ac.values[i]);
    const double dev = std::max({std::abs(a - b), std::abs(a - d), std::abs(b - d)});
    worst = std::max(worst, dev);
    table.rows.push_back({direct.t[i], direct.values[i].real(), direct.values[i].imag(), a, wig.values[i].real(),
                          wig.values[i].imag(), b, d, dev});
  }
  if (c.format == "json") {
    Json j{{"metadata", Json{{"command", "overlap"},
                             {"build", SUBPLANCK_BUILD_ID},
                             {"units", units_json(c.units)},
                             {"state", state_json(c.state)},
                             {"ray", c.ray.ray},
                             {"route", "all"},
                             {"max_pairwise_dev", worst}}}};
    for (const auto& [name, s] : series) j[name] = io::series_to_json(s);
    write_json(c.out, j);
  } else {
    write_csv(c.out, table);
  }
  log << "max pairwise deviation " << io::format_double(worst) << "\n";
  return kOk;
}

struct McCmd {
  Units units;
  std::string geometry = "disk";
  int N = 1;
  RaySpec ray;
  long long samples = 1000000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

int cmd_mc(McCmd c, std::ostream& log) {
  resolve_ray(c.ray);
  if (c.samples < 1) throw ValidationError("--samples must be >= 1");
  std::unique_ptr<ShellSampler> sampler;
  if (c.geometry == "disk") {
    sampler = std::make_unique<DiskShellSampler>(DiskBilliard(c.units.L, c.units.P, c.units.hbar));
  } else {
    const GasBox gas(c.N, c.units.L, c.units.P, c.units.hbar);
    if (gas.N > kMaxMonteCarloParticles) {
      throw ValidationError("Monte Carlo supports N <= 100; use `subplanck oracle --formula gas` for N = " +
                            std::to_string(gas.N));
    }
    sampler = std::make_unique<BoxShellSampler>(gas);
  }
  const RayScale scale{c.units.hbar, c.units.P, c.units.L};
  const OverlapSeries s = mc_overlap_ray(*sampler, shell_direction(c.ray.ray, sampler->dimension()), c.ray.tmax,
                                         c.ray.n, scale, c.samples, c.seed, c.geometry);
  if (c.format == "json") {
    Json j = io::series_to_json(s);
    j["metadata"]["build"] = SUBPLANCK_BUILD_ID;
    j["metadata"]["seed"] = c.seed;
    j["metadata"]["samples"] = c.samples;
    j["metadata"]["geometry"] = c.geometry;
    if (c.geometry == "gas") j["metadata"]["N"] = c.N;
    write_json(c.out, j);
  } else {
    CsvTable table;
    table.comments = base_comments("mc", c.units);
    table.comments.push_back("geometry=" + c.geometry + (c.geometry == "gas" ? " N=" + std::to_string(c.N) : "") +
                             " ray=" + c.ray.ray);
    table.comments.push_back("seed=" + std::to_string(c.seed) + " samples=" + std::to_string(c.samples));
    table.header = {"t", "mean_re", "mean_im", "stderr"};
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      table.rows.push_back({s.t[i], s.values[i].real(), s.values[i].imag(), s.standard_errors[i]});
    }
    write_csv(c.out, table);
  }
  log << "wrote " << s.t.size() << " Monte Carlo points\n";
  return kOk;
}

struct OracleSpec {
  std::string formula = "disk";
  int N = 1;
};

void add_oracle(CLI::App& app, OracleSpec& o) {
  app.add_option("--formula", o.formula, "disk (Bessel product) | gas (finite-N) | gaussian (large-N limit)")
      ->capture_default_str()
      ->check(CLI::IsMember({"disk", "gas", "gaussian"}));
  app.add_option("--N", o.N, "Gas particle count")->capture_default_str();
}

/// Analytic overlap along a ray; t is P|dx|/hbar on dx rays and L|dp|/hbar on dp rays.
OverlapSeries oracle_series(const OracleSpec& o, const RaySpec& r, const Units& u) {
  const RayScale scale{u.hbar, u.P, u.L};
  if (o.formula == "disk") {
    const DiskBilliard geom(u.L, u.P, u.hbar);
    return overlap_ray(
        [geom](const Displacement& d) {
          return std::complex<double>(disk_overlap_analytic(geom, d.dx().norm(), d.dp().norm()), 0.0);
        },
        shell_direction(r.ray, 2), r.tmax, r.n, scale, OverlapRoute::analytic, "disk");
  }
  const GasBox gas(o.N, u.L, u.P, u.hbar);
  if (gas.order() > kMaxBesselOrder) {
    throw DomainError("gas N = " + std::to_string(gas.N) + " needs Bessel order " + io::format_double(gas.order()) +
                      " beyond the supported maximum " + io::format_double(kMaxBesselOrder) + " (N <= 1334)");
  }
  const bool exact = o.formula == "gas";
  return overlap_ray(
      [gas, exact](const Displacement& d) {
        const double v = exact ? gas_overlap_analytic(gas, d.dx().norm(), d.dp())
                               : gas_overlap_gaussian(gas, d.dx().norm(), d.dp().norm());
        return std::complex<double>(v, 0.0);
      },
      shell_direction(r.ray, gas.dimension()), r.tmax, r.n, scale, OverlapRoute::analytic, o.formula);
}

struct OracleCmd {
  Units units;
  OracleSpec oracle;
  RaySpec ray;
  std::string out;
  std::string format = "csv";
};

int cmd_oracle(OracleCmd c, std::ostream& log) {
  resolve_ray(c.ray);
  const OverlapSeries s = oracle_series(c.oracle, c.ray, c.units);
  if (c.format == "json") {
    Json j{{"metadata", Json{{"command", "oracle"},
                             {"build", SUBPLANCK_BUILD_ID},
                             {"units", units_json(c.units)},
                             {"formula", c.oracle.formula},
                             {"N", c.oracle.N},
                             {"ray", c.ray.ray}}},
           {"t", s.t}};
    std::vector<double> v;
    for (const auto& z : s.values) v.push_back(z.real());
    j["value"] = v;
    write_json(c.out, j);
  } else {
    CsvTable table;
    table.comments = base_comments("oracle", c.units);
    table.comments.push_back("formula=" + c.oracle.formula + " N=" + std::to_string(c.oracle.N) + " ray=" + c.ray.ray);
    table.header = {"t", "value"};
    for (std::size_t i = 0; i < s.t.size(); ++i) table.rows.push_back({s.t[i], s.values[i].real()});
    write_csv(c.out, table);
  }
  log << "wrote " << s.t.size() << " oracle points\n";
  return kOk;
}

struct RingCmd {
  Units units;
  std::string series_path;
  OracleSpec oracle;
  RaySpec ray;
  std::size_t skip = kDefaultSkippedPeaks;
  std::string out;
};

int cmd_ring(RingCmd c, std::ostream& log) {
  resolve_ray(c.ray);
  OverlapSeries s = c.series_path.empty() ? oracle_series(c.oracle, c.ray, c.units)
                                          : io::series_from_csv(io::parse_csv(io::read_file(c.series_path)));
  const RingingReport report = analyze_ringing(s, c.skip);
  Json j{{"metadata", Json{{"command", "ring"}, {"build", SUBPLANCK_BUILD_ID}, {"units", units_json(c.units)}}}};
  if (c.series_path.empty()) {
    j["metadata"]["formula"] = c.oracle.formula;
    j["metadata"]["N"] = c.oracle.N;
    j["metadata"]["ray"] = c.ray.ray;
    j["metadata"]["tmax"] = c.ray.tmax;
    j["metadata"]["n"] = c.ray.n;
  } else {
    j["metadata"]["series"] = c.series_path;
  }
  j["report"] = io::ringing_to_json(report);
  write_json(c.out, j);
  log << "exponent " << io::format_double(report.fit.exponent) << " +- "
      << io::format_double(report.fit.standard_error) << "\n";
  return kOk;
}

struct StudyCmd {
  Units units;
  std::string study = "gaussian-convergence";
  std::string n_list = "10,100,1000";
  std::string k_list = "25,50,100,200";
  std::size_t ensemble = 50;
  double cell = 1.0;
  double radius = 4.0;
  std::size_t components = kDefaultWaveComponents;
  std::uint64_t seed = 1;
  std::string out;
  std::string summary;
};

std::string monotonic_flag(const std::vector<double>& v) {
  if (v.size() < 2) return "n/a";
  return strictly_decreasing(v) ? "decreasing" : "not-decreasing";
}

int cmd_study(const StudyCmd& c, std::ostream& log) {
  CsvTable table;
  table.comments = base_comments("study", c.units);
  Json summary{{"command", "study"}, {"study", c.study}, {"build", SUBPLANCK_BUILD_ID}, {"units", units_json(c.units)}};
  if (c.study == "gaussian-convergence") {
    std::vector<int> ns;
    for (double v : parse_list(c.n_list, "N")) {
      if (v != std::floor(v) || v < 1) throw ValidationError("N values must be positive integers");
      ns.push_back(static_cast<int>(v));
    }
    for (int n : ns) {
      if (GasBox(n, 1.0, 1.0).order() > kMaxBesselOrder) {
        throw DomainError("N = " + std::to_string(n) + " exceeds the Bessel order domain (N <= 1334)");
      }
    }
    const auto rows = gaussian_convergence(ns);
    table.comments.push_back("study=gaussian-convergence t=P|dx|/hbar in [0,3] s=L|dp|/hbar in [0,1]");
    table.header = {"N", "nu", "dx_deviation", "dp_deviation"};
    std::vector<double> dx_dev;
    std::vector<double> dp_dev;
    for (const auto& r : rows) {
      table.rows.push_back({static_cast<double>(r.N), r.nu, r.dx_deviation, r.dp_deviation});
      dx_dev.push_back(r.dx_deviation);
      dp_dev.push_back(r.dp_deviation);
    }
    summary["N"] = ns;
    summary["dx_deviation"] = dx_dev;
    summary["dp_deviation"] = dp_dev;
    summary["dx_monotonic"] = monotonic_flag(dx_dev);
    summary["dp_monotonic"] = monotonic_flag(dp_dev);
  } else {
    VarianceScalingConfig cfg;
    cfg.k_list = parse_list(c.k_list, "k");
    cfg.ensemble_size = c.ensemble;
    cfg.cell_size = c.cell;
    cfg.region_radius = c.radius;
    cfg.components = c.components;
    cfg.seed = c.seed;
    const auto rows = variance_scaling(cfg);
    table.comments.push_back("study=variance-scaling ensemble=" + std::to_string(c.ensemble) +
                             " cell=" + io::format_double(c.cell) + " radius=" + io::format_double(c.radius) +
                             " components=" + std::to_string(c.components));
    table.comments.push_back("seed=" + std::to_string(c.seed) + " samples=" + std::to_string(c.ensemble));
    table.header = {"k", "mean_intensity", "relative_fluctuation"};
    std::vector<double> fluct;
    for (const auto& r : rows) {
      table.rows.push_back({r.k, r.mean, r.relative_fluctuation});
      fluct.push_back(r.relative_fluctuation);
    }
    summary["seed"] = c.seed;
    summary["ensemble"] = c.ensemble;
    summary["k"] = cfg.k_list;
    summary["relative_fluctuation"] = fluct;
    summary["monotonic"] = monotonic_flag(fluct);
  }
  write_csv(c.out, table);
  write_json(c.summary.empty() ? c.out + ".summary.json" : c.summary, summary);
  log << "wrote " << table.rows.size() << " study rows\n";
  return kOk;
}

int run_checked(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-space overlap and Wigner-function numerics"};
  app.require_subcommand(1);

  WignerCmd w;
  auto* wigner = app.add_subcommand("wigner", "Wigner function of a Gaussian, cat or compass state");
  add_units(*wigner, w.units);
  add_state(*wigner, w.state);
  wigner->add_option("--out", w.out, "Output file")->required();
  wigner->add_option("--format", w.format, "csv | bin")->capture_default_str()->check(CLI::IsMember({"csv", "bin"}));
  wigner->add_option("--summary", w.summary, "Summary JSON path (default: <out>.summary.json)");
  wigner->add_option("--fringe-axis", w.fringe_axis, "Measure the fringe period along x or p")
      ->check(CLI::IsMember({"x", "p"}));
  wigner->add_option("--window", w.window, "Fringe window x_lo,x_hi,p_lo,p_hi")->delimiter(',')->expected(4);

  OverlapCmd o;
  auto* overlap = app.add_subcommand("overlap", "<psi|D|psi> along a displacement ray");
  add_units(*overlap, o.units);
  add_state(*overlap, o.state);
  add_ray(*overlap, o.ray, 21, 4.0);
  overlap->add_option("--route", o.route, "direct | wigner-ft | autocorr | all")
      ->capture_default_str()
      ->check(CLI::IsMember({"direct", "wigner-ft", "autocorr", "all"}));
  overlap->add_option("--out", o.out, "Output file")->required();
  overlap->add_option("--format", o.format, "csv | json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));

  McCmd m;
  auto* mc = app.add_subcommand("mc", "Monte Carlo shell average of the displacement phase");
  add_units(*mc, m.units);
  mc->add_option("--geometry", m.geometry, "disk | gas")->capture_default_str()->check(CLI::IsMember({"disk", "gas"}));
  mc->add_option("--N", m.N, "Gas particle count")->capture_default_str();
  add_ray(*mc, m.ray, 20, 10.0);
  mc->add_option("--samples", m.samples, "Samples per ray point")->capture_default_str();
  mc->add_option("--seed", m.seed, "RNG seed")->capture_default_str();
  mc->add_option("--out", m.out, "Output file")->required();
  mc->add_option("--format", m.format, "csv | json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));

  OracleCmd a;
  auto* oracle = app.add_subcommand("oracle", "Closed-form shell overlaps along a ray");
  add_units(*oracle, a.units);
  add_oracle(*oracle, a.oracle);
  add_ray(*oracle, a.ray, 1001, 30.0);
  oracle->add_option("--out", a.out, "Output file")->required();
  oracle->add_option("--format", a.format, "csv | json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));

  RingCmd r;
  auto* ring = app.add_subcommand("ring", "Zeros, peak envelope and power-law fit of an overlap series");
  add_units(*ring, r.units);
  ring->add_option("--series", r.series_path, "Series CSV from `overlap`, `mc` or `oracle`");
  add_oracle(*ring, r.oracle);
  add_ray(*ring, r.ray, 4096, 40.0);
  ring->add_option("--skip", r.skip, "Peaks excluded from the start of the fit")->capture_default_str();
  ring->add_option("--out", r.out, "Report JSON")->required();

  StudyCmd s;
  auto* study = app.add_subcommand("study", "Large-N convergence or random-wave variance scaling");
  add_units(*study, s.units);
  study->add_option("--study", s.study, "gaussian-convergence | variance-scaling")
      ->capture_default_str()
      ->check(CLI::IsMember({"gaussian-convergence", "variance-scaling"}));
  study->add_option("--N-list", s.n_list, "Comma-separated particle counts")->capture_default_str();
  study->add_option("--k-list", s.k_list, "Comma-separated wavenumbers")->capture_default_str();
  study->add_option("--ensemble", s.ensemble, "Random-wave ensemble size")->capture_default_str();
  study->add_option("--cell", s.cell, "Coarse-graining cell side")->capture_default_str();
  study->add_option("--radius", s.radius, "Region radius")->capture_default_str();
  study->add_option("--components", s.components, "Plane waves per state")->capture_default_str();
  study->add_option("--seed", s.seed, "RNG seed")->capture_default_str();
  study->add_option("--out", s.out, "Output CSV")->required();
  study->add_option("--summary", s.summary, "Summary JSON path (default: <out>.summary.json)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kUsage;
  }

  if (wigner->parsed()) return cmd_wigner(w, out);
  if (overlap->parsed()) return cmd_overlap(o, out);
  if (mc->parsed()) return cmd_mc(m, out);
  if (oracle->parsed()) return cmd_oracle(a, out);
  if (ring->parsed()) return cmd_ring(r, out);
  return cmd_study(s, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_checked(args, out, err);
  } catch (const NotApplicableError& e) {
    err << "not applicable: " << e.what() << "\n";
    return kNotApplicable;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace subplanck::cli
