#include "sketchlab/results.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sketchlab {

namespace {

constexpr const char* kCsvHeader =
    "kind,n1,n2,n3,r0,r,eps1,eps2,trials,noise_mode,median_rel_err,"
    "median_abs_err,p25_rel_err,p75_rel_err,rank_flag_failures,master_seed";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_number(const std::string& field, std::uint64_t line_offset) {
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("csv: malformed numeric field \"" + field + "\"",
                     line_offset);
  }
  return value;
}

// --- SVG helpers ---------------------------------------------------------

struct Rgb {
  double r, g, b;
};

// Perceptually uniform dark-to-bright ramp (viridis anchor points).
constexpr Rgb kRamp[] = {
    {68, 1, 84},    {71, 44, 122},  {59, 81, 139},
    {44, 113, 142}, {33, 144, 141}, {39, 173, 129},
    {92, 200, 99},  {170, 220, 50}, {253, 231, 37},
};

std::string ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  constexpr int kSegments = static_cast<int>(std::size(kRamp)) - 1;
  const double scaled = t * kSegments;
  const int lo = std::min(static_cast<int>(scaled), kSegments - 1);
  const double frac = scaled - lo;
  const Rgb& a = kRamp[lo];
  const Rgb& b = kRamp[lo + 1];
  char buf[32];
  std::snprintf(buf, sizeof buf, "rgb(%d,%d,%d)",
                static_cast<int>(std::lround(a.r + frac * (b.r - a.r))),
                static_cast<int>(std::lround(a.g + frac * (b.g - a.g))),
                static_cast<int>(std::lround(a.b + frac * (b.b - a.b))));
  return buf;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  if (name == "svg") return OutputFormat::kSvgHeatmap;
  throw ValidationError("unknown output format \"" + name +
                        "\" (expected csv, json, or svg)");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string results_csv_header() { return kCsvHeader; }

std::string to_csv(const ResultsTable& table) {
  std::string out = kCsvHeader;
  out.push_back('\n');
  for (const CellSummary& row : table.rows) {
    out += row.kind;
    out.push_back(',');
    out += std::to_string(row.n1);
    out.push_back(',');
    out += std::to_string(row.n2);
    out.push_back(',');
    out += std::to_string(row.n3);
    out.push_back(',');
    out += std::to_string(row.r0);
    out.push_back(',');
    out += std::to_string(row.r);
    out.push_back(',');
    out += format_double(row.eps1);
    out.push_back(',');
    out += format_double(row.eps2);
    out.push_back(',');
    out += std::to_string(row.trials);
    out.push_back(',');
    out += row.noise_mode;
    out.push_back(',');
    out += format_double(row.median_rel_err);
    out.push_back(',');
    out += format_double(row.median_abs_err);
    out.push_back(',');
    out += format_double(row.p25_rel_err);
    out.push_back(',');
    out += format_double(row.p75_rel_err);
    out.push_back(',');
    out += std::to_string(row.rank_flag_failures);
    out.push_back(',');
    out += std::to_string(row.master_seed);
    out.push_back('\n');
  }
  return out;
}

ResultsTable parse_results_csv(const std::string& text) {
  ResultsTable table;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::uint64_t line_offset = pos;
    pos = eol + 1;

    if (!saw_header) {
      if (line != kCsvHeader) {
        throw ParseError("csv: header does not match the results schema",
                         line_offset);
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;

    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 16) {
      throw ParseError("csv: expected 16 fields, got " +
                           std::to_string(f.size()),
                       line_offset);
    }
    CellSummary row;
    row.kind = f[0];
    row.n1 = parse_number<Index>(f[1], line_offset);
    row.n2 = parse_number<Index>(f[2], line_offset);
    row.n3 = parse_number<Index>(f[3], line_offset);
    row.r0 = parse_number<Index>(f[4], line_offset);
    row.r = parse_number<Index>(f[5], line_offset);
    row.eps1 = parse_number<double>(f[6], line_offset);
    row.eps2 = parse_number<double>(f[7], line_offset);
    row.trials = parse_number<std::size_t>(f[8], line_offset);
    row.noise_mode = f[9];
    row.median_rel_err = parse_number<double>(f[10], line_offset);
    row.median_abs_err = parse_number<double>(f[11], line_offset);
    row.p25_rel_err = parse_number<double>(f[12], line_offset);
    row.p75_rel_err = parse_number<double>(f[13], line_offset);
    row.rank_flag_failures = parse_number<std::size_t>(f[14], line_offset);
    row.master_seed = parse_number<std::uint64_t>(f[15], line_offset);
    table.rows.push_back(std::move(row));
  }
  if (!saw_header) {
    throw ParseError("csv: empty input, header line required", 0);
  }
  return table;
}

std::string to_json(const ResultsTable& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const CellSummary& row : table.rows) {
    nlohmann::ordered_json j;
    j["kind"] = row.kind;
    j["n1"] = row.n1;
    j["n2"] = row.n2;
    j["n3"] = row.n3;
    j["r0"] = row.r0;
    j["r"] = row.r;
    j["eps1"] = row.eps1;
    j["eps2"] = row.eps2;
    j["trials"] = row.trials;
    j["noise_mode"] = row.noise_mode;
    j["median_rel_err"] = row.median_rel_err;
    j["median_abs_err"] = row.median_abs_err;
    j["p25_rel_err"] = row.p25_rel_err;
    j["p75_rel_err"] = row.p75_rel_err;
    j["rank_flag_failures"] = row.rank_flag_failures;
    j["master_seed"] = row.master_seed;
    rows.push_back(std::move(j));
  }
  return rows.dump(2) + "\n";
}

std::string to_svg_heatmap(const ResultsTable& table) {
  // Axes are index-based (one slot per distinct grid value), which keeps
  // log-spaced epsilon grids readable.
  std::set<Index> r_set;
  std::set<double> x_set, y_set;
  for (const CellSummary& row : table.rows) {
    r_set.insert(row.r);
    x_set.insert(row.eps1);
    y_set.insert(row.eps2);
  }
  const std::vector<Index> rs(r_set.begin(), r_set.end());
  const std::vector<double> xs(x_set.begin(), x_set.end());
  const std::vector<double> ys(y_set.begin(), y_set.end());

  std::map<std::tuple<Index, double, double>, double> value;
  constexpr double kTiny = 1e-300;
  double vmin = 0.0, vmax = 0.0;
  bool any = false;
  for (const CellSummary& row : table.rows) {
    const double lg = std::log10(std::max(row.median_rel_err, kTiny));
    value[{row.r, row.eps1, row.eps2}] = lg;
    if (!any) {
      vmin = vmax = lg;
      any = true;
    } else {
      vmin = std::min(vmin, lg);
      vmax = std::max(vmax, lg);
    }
  }
  if (!any) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"360\" "
           "height=\"60\"><text x=\"12\" y=\"34\" font-family=\"monospace\" "
           "font-size=\"13\">median relative error: no data</text></svg>\n";
  }
  if (vmax - vmin < 1e-12) {
    vmin -= 0.5;
    vmax += 0.5;
  }

  constexpr double kCell = 36.0;
  constexpr double kMarginL = 88.0;
  constexpr double kTitleH = 40.0;
  constexpr double kMarginB = 46.0;
  const double grid_w = kCell * static_cast<double>(xs.size());
  const double grid_h = kCell * static_cast<double>(ys.size());
  const double panel_h = kTitleH + grid_h + kMarginB;
  const double bar_x = kMarginL + grid_w + 42.0;
  const double width = bar_x + 18.0 + 86.0;
  const double height = panel_h * static_cast<double>(rs.size()) + 16.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << coord(width)
      << "\" height=\"" << coord(height) << "\" font-family=\"monospace\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  for (std::size_t p = 0; p < rs.size(); ++p) {
    const double top = panel_h * static_cast<double>(p);
    svg << "<text x=\"" << coord(kMarginL) << "\" y=\"" << coord(top + 24.0)
        << "\" font-size=\"14\">r = " << rs[p]
        << " (median rel err, log10 color)</text>\n";
    for (std::size_t j = 0; j < ys.size(); ++j) {
      // eps2 grows upward: row j sits (ys.size()-1-j) cells below the top.
      const double y =
          top + kTitleH + kCell * static_cast<double>(ys.size() - 1 - j);
      svg << "<text x=\"" << coord(kMarginL - 8.0) << "\" y=\""
          << coord(y + kCell / 2 + 4.0)
          << "\" font-size=\"11\" text-anchor=\"end\">" << short_number(ys[j])
          << "</text>\n";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = kMarginL + kCell * static_cast<double>(i);
        const auto it = value.find({rs[p], xs[i], ys[j]});
        std::string fill = "#cccccc";
        if (it != value.end() && std::isfinite(it->second)) {
          fill = ramp_color((it->second - vmin) / (vmax - vmin));
        }
        svg << "<rect x=\"" << coord(x) << "\" y=\"" << coord(y)
            << "\" width=\"" << coord(kCell) << "\" height=\"" << coord(kCell)
            << "\" fill=\"" << fill
            << "\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";
      }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = kMarginL + kCell * (static_cast<double>(i) + 0.5);
      svg << "<text x=\"" << coord(x) << "\" y=\""
          << coord(top + kTitleH + grid_h + 16.0)
          << "\" font-size=\"11\" text-anchor=\"middle\">"
          << short_number(xs[i]) << "</text>\n";
    }
    svg << "<text x=\"" << coord(kMarginL + grid_w / 2) << "\" y=\""
        << coord(top + kTitleH + grid_h + 34.0)
        << "\" font-size=\"12\" text-anchor=\"middle\">eps1</text>\n";
    svg << "<text x=\"" << coord(kMarginL - 64.0) << "\" y=\""
        << coord(top + kTitleH + grid_h / 2)
        << "\" font-size=\"12\">eps2</text>\n";
  }

  // Shared colorbar, labeled with the un-logged error values.
  const double bar_h = std::max(grid_h, 3.0 * kCell);
  const double bar_top = kTitleH;
  svg << "<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" "
         "y2=\"0\">\n";
  for (int stop = 0; stop <= 16; ++stop) {
    const double t = static_cast<double>(stop) / 16.0;
    svg << "<stop offset=\"" << coord(100.0 * t) << "%\" stop-color=\""
        << ramp_color(t) << "\"/>\n";
  }
  svg << "</linearGradient></defs>\n";
  svg << "<rect x=\"" << coord(bar_x) << "\" y=\"" << coord(bar_top)
      << "\" width=\"18\" height=\"" << coord(bar_h)
      << "\" fill=\"url(#scale)\" stroke=\"#444444\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double t = static_cast<double>(tick) / 4.0;
    const double lg = vmin + t * (vmax - vmin);
    const double y = bar_top + bar_h * (1.0 - t);
    char label[32];
    std::snprintf(label, sizeof label, "%.2e", std::pow(10.0, lg));
    svg << "<text x=\"" << coord(bar_x + 24.0) << "\" y=\"" << coord(y + 4.0)
        << "\" font-size=\"11\">" << label << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

void emit_results(const ResultsTable& table, OutputFormat format,
                  const std::string& path) {
  std::string payload;
  switch (format) {
    case OutputFormat::kCsv:
      payload = to_csv(table);
      break;
    case OutputFormat::kJson:
      payload = to_json(table);
      break;
    case OutputFormat::kSvgHeatmap:
      payload = to_svg_heatmap(table);
      break;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open results file for writing: " + path);
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.flush();
  if (!out) {
    throw IoError("write failure on results file: " + path);
  }
}

}  // namespace sketchlab
