#include "yamabe/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "yamabe/error.hpp"

namespace yamabe {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep) parts.push_back("");
  return parts;
}

int parse_int(const std::string& s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(errc::domain, "not an integer: '" + s + "'");
  }
  return value;
}

std::string cell_to_text(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
  return std::get<std::string>(c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

nlohmann::ordered_json cell_to_json(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::get<std::int64_t>(c);
  if (std::holds_alternative<double>(c)) return std::get<double>(c);
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c);
  return std::get<std::string>(c);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double nice_step(double range) {
  if (!(range > 0.0)) return 1.0;
  const double raw = range / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  if (norm < 1.5) return mag;
  if (norm < 3.5) return 2.0 * mag;
  if (norm < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

} // namespace

std::vector<int> parse_int_list(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) fail(errc::domain, "empty integer list");
  const auto dots = t.find("..");
  if (dots != std::string::npos) {
    const int lo = parse_int(trim(t.substr(0, dots)));
    const int hi = parse_int(trim(t.substr(dots + 2)));
    if (hi < lo) fail(errc::domain, "descending range: '" + t + "'");
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::vector<int> out;
  for (const std::string& part : split(t, ',')) out.push_back(parse_int(part));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) fail(errc::domain, "empty number list");
  std::vector<double> out;
  for (const std::string& part : split(t, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(errc::domain, "not a number: '" + part + "'");
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) fail(errc::numerical, "failed to format a double");
  return std::string(buf, ptr);
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot read config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    fail(errc::domain, "config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) fail(errc::domain, "config file must hold a JSON object");

  auto as_int_list = [&](const nlohmann::json& v, const char* key) {
    std::vector<int> out;
    if (v.is_number_integer()) out.push_back(v.get<int>());
    else if (v.is_string()) out = parse_int_list(v.get<std::string>());
    else if (v.is_array()) {
      for (const auto& e : v) out.push_back(e.get<int>());
    } else {
      fail(errc::domain, std::string("config key '") + key + "' must be int, list or range");
    }
    return out;
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "n") base.n_values = as_int_list(value, "n");
    else if (key == "m") base.m_values = as_int_list(value, "m");
    else if (key == "beta_grid") {
      base.beta_grid.clear();
      if (value.is_string()) base.beta_grid = parse_double_list(value.get<std::string>());
      else if (value.is_array()) {
        for (const auto& e : value) base.beta_grid.push_back(e.get<double>());
      } else {
        fail(errc::domain, "config key 'beta_grid' must be a list or string");
      }
    } else if (key == "resolution") base.resolution = value.get<int>();
    else if (key == "mc_samples") base.mc_samples = value.get<int>();
    else if (key == "seed") base.seed = value.get<std::uint64_t>();
    else if (key == "out") base.out = value.get<std::string>();
    else if (key == "format") base.format = value.get<std::string>();
    else fail(errc::domain, "unknown config key '" + key + "'");
  }
  return base;
}

std::string render_csv(const Table& table) {
  std::string out;
  for (const auto& [key, value] : table.meta) {
    out += "# " + key + "=" + cell_to_text(value) + "\r\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(table.columns[i]);
  }
  out += "\r\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      fail(errc::io, "table row width does not match header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cell_to_text(row[i]));
    }
    out += "\r\n";
  }
  return out;
}

std::string render_json(const Table& table) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) meta[key] = cell_to_json(value);
  j["meta"] = std::move(meta);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      fail(errc::io, "table row width does not match header");
    }
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_to_json(row[i]);
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string render_line_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<SvgSeries>& series,
                            const std::vector<SvgGuide>& guides,
                            const std::vector<std::pair<std::string, Cell>>& meta) {
  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!(x_lo < x_hi)) fail(errc::domain, "svg chart needs at least two distinct x values");
  if (!(y_lo < y_hi)) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  y_lo = std::min(y_lo, 0.0); // keep the zero line visible: positivity is the point
  const double y_pad = 0.05 * (y_hi - y_lo);
  y_hi += y_pad;

  const double W = 800, H = 520, L = 72, R = 770, T = 48, B = 460;
  auto px = [&](double x) { return L + (x - x_lo) / (x_hi - x_lo) * (R - L); };
  auto py = [&](double y) { return B - (y - y_lo) / (y_hi - y_lo) * (B - T); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed2(W) +
         "\" height=\"" + fixed2(H) + "\" viewBox=\"0 0 " + fixed2(W) + " " + fixed2(H) +
         "\">\n";
  svg += "  <desc>";
  for (std::size_t i = 0; i < meta.size(); ++i) {
    if (i) svg += "; ";
    svg += xml_escape(meta[i].first) + "=" + xml_escape(cell_to_text(meta[i].second));
  }
  svg += "</desc>\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + fixed2(W) + "\" height=\"" + fixed2(H) +
         "\" fill=\"white\"/>\n";
  svg += "  <text x=\"" + fixed2(0.5 * W) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" + xml_escape(title) + "</text>\n";

  // axes
  svg += "  <line x1=\"" + fixed2(L) + "\" y1=\"" + fixed2(B) + "\" x2=\"" + fixed2(R) +
         "\" y2=\"" + fixed2(B) + "\" stroke=\"black\"/>\n";
  svg += "  <line x1=\"" + fixed2(L) + "\" y1=\"" + fixed2(T) + "\" x2=\"" + fixed2(L) +
         "\" y2=\"" + fixed2(B) + "\" stroke=\"black\"/>\n";

  const double xs = nice_step(x_hi - x_lo), ys = nice_step(y_hi - y_lo);
  for (double x = std::ceil(x_lo / xs) * xs; x <= x_hi + 1e-12; x += xs) {
    svg += "  <line x1=\"" + fixed2(px(x)) + "\" y1=\"" + fixed2(B) + "\" x2=\"" +
           fixed2(px(x)) + "\" y2=\"" + fixed2(B + 5) + "\" stroke=\"black\"/>\n";
    svg += "  <text x=\"" + fixed2(px(x)) + "\" y=\"" + fixed2(B + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           format_double(x) + "</text>\n";
  }
  for (double y = std::ceil(y_lo / ys) * ys; y <= y_hi + 1e-12; y += ys) {
    svg += "  <line x1=\"" + fixed2(L - 5) + "\" y1=\"" + fixed2(py(y)) + "\" x2=\"" +
           fixed2(L) + "\" y2=\"" + fixed2(py(y)) + "\" stroke=\"black\"/>\n";
    svg += "  <text x=\"" + fixed2(L - 8) + "\" y=\"" + fixed2(py(y) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           format_double(y) + "</text>\n";
  }
  if (y_lo < 0.0 && y_hi > 0.0) {
    svg += "  <line x1=\"" + fixed2(L) + "\" y1=\"" + fixed2(py(0.0)) + "\" x2=\"" +
           fixed2(R) + "\" y2=\"" + fixed2(py(0.0)) +
           "\" stroke=\"#999999\" stroke-dasharray=\"2,3\"/>\n";
  }
  for (const auto& g : guides) {
    svg += "  <line x1=\"" + fixed2(px(g.x)) + "\" y1=\"" + fixed2(T) + "\" x2=\"" +
           fixed2(px(g.x)) + "\" y2=\"" + fixed2(B) +
           "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4,4\"/>\n";
    svg += "  <text x=\"" + fixed2(px(g.x) + 4) + "\" y=\"" + fixed2(T + 14) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">" +
           xml_escape(g.label) + "</text>\n";
  }
  // series + legend
  double legend_y = T + 16;
  for (const auto& s : series) {
    svg += "  <polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (i) svg += ' ';
      svg += fixed2(px(s.points[i].first)) + "," + fixed2(py(s.points[i].second));
    }
    svg += "\"/>\n";
    svg += "  <line x1=\"" + fixed2(R - 150) + "\" y1=\"" + fixed2(legend_y) + "\" x2=\"" +
           fixed2(R - 126) + "\" y2=\"" + fixed2(legend_y) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"1.5\"/>\n";
    svg += "  <text x=\"" + fixed2(R - 120) + "\" y=\"" + fixed2(legend_y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(s.label) +
           "</text>\n";
    legend_y += 18;
  }
  svg += "  <text x=\"" + fixed2(0.5 * (L + R)) + "\" y=\"" + fixed2(H - 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         xml_escape(x_label) + "</text>\n";
  svg += "  <text x=\"18\" y=\"" + fixed2(0.5 * (T + B)) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " + fixed2(0.5 * (T + B)) + ")\">" +
         xml_escape(y_label) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot open output file '" + path + "'");
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) fail(errc::io, "failed writing output file '" + path + "'");
}

} // namespace yamabe
