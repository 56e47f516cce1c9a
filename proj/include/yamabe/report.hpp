#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace yamabe {

// Run-wide options shared by every CLI command; flags override config-file values,
// which override these defaults.
struct RunConfig {
  std::vector<int> n_values;
  std::vector<int> m_values;
  std::vector<double> beta_grid; // empty = default certification grid
  int resolution = 0;  // 0 = per-command default
  int mc_samples = 0;  // 0 = skip Monte Carlo cross-checks
  std::uint64_t seed = 1;
  std::string out;    // empty = stdout
  std::string format; // empty = command default
};

// JSON config file with the RunConfig field names; "n" and "m" accept a number,
// a list, or a range string like "3..7".
RunConfig load_config_file(const std::string& path, RunConfig base);

// "4" | "3,5,9" | "3..30"
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

// Shortest round-trip decimal form; the same bytes for the same double, every run.
std::string format_double(double v);

using Cell = std::variant<std::int64_t, double, bool, std::string>;

struct Table {
  std::vector<std::pair<std::string, Cell>> meta; // emission order is preserved
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// RFC-4180-style: quoted cells where needed, CRLF line ends, mandatory header row;
// metadata is carried as leading '# key=value' comment lines.
std::string render_csv(const Table& table);

// Stable key order: meta object first, then rows as objects in column order.
std::string render_json(const Table& table);

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};
struct SvgGuide {
  double x = 0.0;
  std::string label;
};

// Standalone SVG 1.1 line chart; metadata rides in <desc> so the image itself
// stays byte-stable for identical inputs.
std::string render_line_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<SvgSeries>& series,
                            const std::vector<SvgGuide>& guides,
                            const std::vector<std::pair<std::string, Cell>>& meta);

// Writes to path, or stdout when path is empty.
void write_output(const std::string& path, const std::string& payload);

} // namespace yamabe
