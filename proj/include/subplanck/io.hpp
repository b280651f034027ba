#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "subplanck/analysis.hpp"
#include "subplanck/microcanonical.hpp"
#include "subplanck/overlap.hpp"
#include "subplanck/wigner.hpp"

namespace subplanck::io {

using Json = nlohmann::ordered_json;

/// Comma-separated table: optional "# ..." metadata lines, a header row, then
/// numeric rows. Numbers are written with 17 significant digits so parsing
/// and re-writing is byte-identical.
struct CsvTable {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;  // throws if absent
};

std::string format_double(double v);
std::string to_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Columns x, p, W; one row per grid cell, x-major.
CsvTable wigner_to_csv(const WignerGrid& w);

/// 32-byte header ("WGR1", 4 zero bytes, n_x u64, n_p u64, hbar f64, all
/// little-endian) followed by n_x * n_p row-major little-endian doubles.
std::string wigner_to_binary(const WignerGrid& w);

struct WignerBinary {
  std::uint64_t n_x = 0;
  std::uint64_t n_p = 0;
  double hbar = 0.0;
  Eigen::MatrixXd values;
};
WignerBinary wigner_from_binary(std::string_view bytes);

/// Columns t, re, im, abs (plus stderr for Monte Carlo rays).
CsvTable series_to_csv(const OverlapSeries& series);
Json series_to_json(const OverlapSeries& series);

/// Reads t and (re, im), (mean_re, mean_im) or a single value column into a series.
OverlapSeries series_from_csv(const CsvTable& table);

Json ringing_to_json(const RingingReport& report);
Json mc_estimate_to_json(const McEstimate& estimate);

}  // namespace subplanck::io
