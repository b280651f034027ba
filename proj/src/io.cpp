#include "subplanck/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "subplanck/error.hpp"

namespace subplanck::io {

namespace {

static_assert(std::endian::native == std::endian::little, "binary Wigner I/O assumes a little-endian host");

template <typename T>
void put(std::string& out, T v) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  out.append(bytes, sizeof(T));
}

template <typename T>
T get(std::string_view in, std::size_t offset) {
  T v;
  std::memcpy(&v, in.data() + offset, sizeof(T));
  return v;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ValidationError("CSV field is not a number: '" + s + "'");
  return v;
}

Json displacement_json(const Displacement& d) {
  return Json{{"dx", std::vector<double>(d.dx().begin(), d.dx().end())},
              {"dp", std::vector<double>(d.dp().begin(), d.dp().end())}};
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ValidationError("CSV has no column '" + std::string(name) + "'");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  for (const auto& c : table.comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool have_header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      table.comments.emplace_back(line);
      continue;
    }
    if (!have_header) {
      table.header = split(line, ',');
      have_header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != table.header.size()) throw ValidationError("CSV row width does not match the header");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw ValidationError("CSV has no header row");
  return table;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ValidationError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

CsvTable wigner_to_csv(const WignerGrid& w) {
  CsvTable table;
  table.header = {"x", "p", "W"};
  table.rows.reserve(w.n_x() * w.n_p());
  for (std::size_t i = 0; i < w.n_x(); ++i) {
    for (std::size_t j = 0; j < w.n_p(); ++j) {
      table.rows.push_back({w.x(i), w.p(j), w.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    }
  }
  return table;
}

std::string wigner_to_binary(const WignerGrid& w) {
  std::string out;
  out.reserve(32 + 8 * w.n_x() * w.n_p());
  out.append("WGR1", 4);
  out.append(4, '\0');
  put<std::uint64_t>(out, w.n_x());
  put<std::uint64_t>(out, w.n_p());
  put<double>(out, w.hbar());
  for (std::size_t i = 0; i < w.n_x(); ++i) {
    for (std::size_t j = 0; j < w.n_p(); ++j) {
      put<double>(out, w.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
  return out;
}

WignerBinary wigner_from_binary(std::string_view bytes) {
  if (bytes.size() < 32 || bytes.substr(0, 4) != "WGR1") throw ValidationError("not a WGR1 Wigner file");
  WignerBinary out;
  out.n_x = get<std::uint64_t>(bytes, 8);
  out.n_p = get<std::uint64_t>(bytes, 16);
  out.hbar = get<double>(bytes, 24);
  if (bytes.size() != 32 + 8 * out.n_x * out.n_p) throw ValidationError("WGR1 payload size does not match header");
  out.values.resize(static_cast<Eigen::Index>(out.n_x), static_cast<Eigen::Index>(out.n_p));
  std::size_t offset = 32;
  for (Eigen::Index i = 0; i < out.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.values.cols(); ++j, offset += 8) out.values(i, j) = get<double>(bytes, offset);
  }
  return out;
}

CsvTable series_to_csv(const OverlapSeries& series) {
  CsvTable table;
  const bool mc = !series.standard_errors.empty();
  table.header = {"t", "re", "im", "abs"};
  if (mc) table.header.emplace_back("stderr");
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    const auto& z = series.values[i];
    std::vector<double> row;
    if (series.modulus_only) {
      row = {series.t[i], std::nan(""), std::nan(""), std::abs(z)};
    } else {
      row = {series.t[i], z.real(), z.imag(), std::abs(z)};
    }
    if (mc) row.push_back(series.standard_errors[i]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Json series_to_json(const OverlapSeries& series) {
  std::vector<double> re, im, ab;
  for (const auto& z : series.values) {
    re.push_back(z.real());
    im.push_back(z.imag());
    ab.push_back(std::abs(z));
  }
  Json j;
  j["metadata"] = Json{{"source", series.source},
                       {"route", to_string(series.route)},
                       {"hbar", series.scale.hbar},
                       {"P", series.scale.P},
                       {"L", series.scale.L},
                       {"origin", displacement_json(series.origin)},
                       {"direction", displacement_json(series.direction)},
                       {"modulus_only", series.modulus_only}};
  j["t"] = series.t;
  if (!series.modulus_only) {
    j["re"] = re;
    j["im"] = im;
  }
  j["abs"] = ab;
  if (!series.standard_errors.empty()) j["stderr"] = series.standard_errors;
  return j;
}

OverlapSeries series_from_csv(const CsvTable& table) {
  const std::size_t t_col = table.column("t");
  OverlapSeries series = make_ray(Displacement(1.0, 0.0), 1.0, 16, RayScale{}, OverlapRoute::analytic, "csv");
  series.t.clear();
  series.values.clear();
  const auto has = [&](std::string_view name) {
    for (const auto& h : table.header) {
      if (h == name) return true;
    }
    return false;
  };
  if (has("re") && has("im")) {
    const std::size_t re = table.column("re");
    const std::size_t im = table.column("im");
    bool modulus = false;
    for (const auto& row : table.rows) {
      series.t.push_back(row[t_col]);
      if (std::isnan(row[re])) {
        modulus = true;
        series.values.emplace_back(row[table.column("abs")], 0.0);
      } else {
        series.values.emplace_back(row[re], row[im]);
      }
    }
    series.modulus_only = modulus;
  } else if (has("mean_re") && has("mean_im")) {
    const std::size_t re = table.column("mean_re");
    const std::size_t im = table.column("mean_im");
    for (const auto& row : table.rows) {
      series.t.push_back(row[t_col]);
      series.values.emplace_back(row[re], row[im]);
    }
    series.route = OverlapRoute::monte_carlo;
  } else if (has("value")) {
    const std::size_t v = table.column("value");
    for (const auto& row : table.rows) {
      series.t.push_back(row[t_col]);
      series.values.emplace_back(row[v], 0.0);
    }
  } else {
    throw ValidationError("series CSV needs re/im, mean_re/mean_im or value columns");
  }
  return series;
}

Json ringing_to_json(const RingingReport& report) {
  return Json{{"zeros", report.zeros},
              {"spacings", report.spacings},
              {"peak_locations", report.peaks.locations},
              {"peak_heights", report.peaks.heights},
              {"exponent", report.fit.exponent},
              {"exponent_stderr", report.fit.standard_error},
              {"fit_window", Json{{"first_peak", report.fit.first_peak},
                                  {"last_peak", report.fit.last_peak},
                                  {"t_lo", report.fit_t_lo},
                                  {"t_hi", report.fit_t_hi}}}};
}

Json mc_estimate_to_json(const McEstimate& e) {
  return Json{{"mean_re", e.mean.real()},
              {"mean_im", e.mean.imag()},
              {"stderr", e.standard_error},
              {"n_samples", e.n_samples},
              {"seed", e.seed}};
}

}  // namespace subplanck::io
