#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sketchlab/types.hpp"

namespace sketchlab {

// One experiment cell aggregated over its trials. Field order matches the
// CSV column order.
struct CellSummary {
  std::string kind;  // "matrix" or "tensor"
  Index n1 = 0;
  Index n2 = 0;
  Index n3 = 1;
  Index r0 = 0;
  Index r = 0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::size_t trials = 0;
  std::string noise_mode;  // "real" or "complex"
  double median_rel_err = 0.0;
  double median_abs_err = 0.0;
  double p25_rel_err = 0.0;
  double p75_rel_err = 0.0;
  std::size_t rank_flag_failures = 0;
  std::uint64_t master_seed = 0;
};

struct ResultsTable {
  std::vector<CellSummary> rows;
};

enum class OutputFormat { kCsv, kJson, kSvgHeatmap };

// "csv" | "json" | "svg"; anything else is a ValidationError.
OutputFormat parse_output_format(const std::string& name);

// Shortest representation that parses back to the identical double
// (printf %.17g).
std::string format_double(double v);

std::string results_csv_header();

// Doubles are printed with 17 significant digits so a parse-back recovers
// every value exactly.
std::string to_csv(const ResultsTable& table);

// Inverse of to_csv; the header line must match the schema exactly.
// Throws ParseError with the byte offset of the offending line.
ResultsTable parse_results_csv(const std::string& text);

// Array of row objects, keys in CSV column order.
std::string to_json(const ResultsTable& table);

// One heatmap panel per distinct r: eps1 on x, eps2 on y,
// log10(median_rel_err) as color, with a shared labeled colorbar.
std::string to_svg_heatmap(const ResultsTable& table);

// Serialize in the chosen format and write to path (IoError on failure).
void emit_results(const ResultsTable& table, OutputFormat format,
                  const std::string& path);

}  // namespace sketchlab
