#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "sketchlab/results.hpp"

using namespace sketchlab;

namespace {

CellSummary sample_row(Index r, double eps1, double eps2) {
  CellSummary c;
  c.kind = "matrix";
  c.n1 = 100;
  c.n2 = 80;
  c.n3 = 1;
  c.r0 = 10;
  c.r = r;
  c.eps1 = eps1;
  c.eps2 = eps2;
  c.trials = 50;
  c.noise_mode = "real";
  c.median_rel_err = 0.1 / 3.0;               // not exactly representable
  c.median_abs_err = 1.0e-17;                 // needs all 17 digits
  c.p25_rel_err = 0.012345678901234567;
  c.p75_rel_err = 6.02214076e23;
  c.rank_flag_failures = 3;
  c.master_seed = 0xFFFFFFFFFFFFFFFFull;      // largest u64 must survive
  return c;
}

bool same_row(const CellSummary& a, const CellSummary& b) {
  return a.kind == b.kind && a.n1 == b.n1 && a.n2 == b.n2 && a.n3 == b.n3 &&
         a.r0 == b.r0 && a.r == b.r && a.eps1 == b.eps1 && a.eps2 == b.eps2 &&
         a.trials == b.trials && a.noise_mode == b.noise_mode &&
         a.median_rel_err == b.median_rel_err &&
         a.median_abs_err == b.median_abs_err &&
         a.p25_rel_err == b.p25_rel_err && a.p75_rel_err == b.p75_rel_err &&
         a.rank_flag_failures == b.rank_flag_failures &&
         a.master_seed == b.master_seed;
}

}  // namespace

TEST_CASE("the CSV header is the pinned sixteen-column schema") {
  CHECK(results_csv_header() ==
        "kind,n1,n2,n3,r0,r,eps1,eps2,trials,noise_mode,median_rel_err,"
        "median_abs_err,p25_rel_err,p75_rel_err,rank_flag_failures,"
        "master_seed");
  const std::string empty = to_csv(ResultsTable{});
  CHECK(empty == results_csv_header() + "\n");
  CHECK(parse_results_csv(empty).rows.empty());
}

TEST_CASE("CSV round-trips awkward doubles and large seeds exactly") {
  ResultsTable table;
  table.rows.push_back(sample_row(20, 1e-4, 0.01));
  table.rows.push_back(sample_row(99, 0.1, 1.0 / 3.0));
  CellSummary tiny = sample_row(20, 0.0, 0.0);
  tiny.kind = "tensor";
  tiny.n3 = 4;
  tiny.noise_mode = "complex";
  tiny.median_rel_err = 5e-324;  // subnormal floor
  tiny.median_abs_err = 0.0;
  table.rows.push_back(tiny);

  const std::string csv = to_csv(table);
  // Header plus one line per row, each ending in newline.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  const ResultsTable back = parse_results_csv(csv);
  REQUIRE(back.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(same_row(back.rows[i], table.rows[i]));

  // Serialization is a pure function of the table.
  CHECK(to_csv(back) == csv);
}

TEST_CASE("format_double survives a parse round-trip at full precision") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, 0.0, -0.0,
                   -123456.789012345678, 1e308}) {
    const std::string s = format_double(v);
    // strtod rather than stod: stod reports subnormals (ERANGE) as
    // out_of_range even though the parsed value is exact.
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("CSV parse errors carry the offset of the offending line") {
  const std::string good = to_csv([] {
    ResultsTable t;
    t.rows.push_back(sample_row(20, 0.1, 0.2));
    return t;
  }());

  try {
    parse_results_csv("");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.byte_offset() == 0);
  }

  try {
    parse_results_csv("kind,n1\nmatrix,3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.byte_offset() == 0);
  }

  // Wrong field count on the data line: offset points at that line.
  const std::string short_line = results_csv_header() + "\nmatrix,1,2\n";
  try {
    parse_results_csv(short_line);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.byte_offset() == results_csv_header().size() + 1);
  }

  // Malformed number in the second data row: offset points there, not at 0.
  const std::string header_and_first =
      good;  // header + one valid line
  std::string two_rows = header_and_first;
  const std::size_t second_start = two_rows.size();
  std::string corrupt =
      "matrix,100,80,1,10,20,zzz,0.2,50,real,1,1,1,1,0,7\n";
  two_rows += corrupt;
  try {
    parse_results_csv(two_rows);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.byte_offset() == second_start);
  }
}

TEST_CASE("JSON output parses back with keys in column order") {
  ResultsTable table;
  table.rows.push_back(sample_row(20, 1e-3, 0.01));
  table.rows.push_back(sample_row(40, 1e-2, 0.01));
  const std::string js = to_json(table);
  const nlohmann::json parsed = nlohmann::json::parse(js);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0]["kind"] == "matrix");
  CHECK(parsed[0]["n1"] == 100);
  CHECK(parsed[0]["r"] == 20);
  CHECK(parsed[1]["r"] == 40);
  CHECK(parsed[0]["eps1"].get<double>() == 1e-3);
  CHECK(parsed[0]["median_rel_err"].get<double>() == 0.1 / 3.0);
  CHECK(parsed[0]["master_seed"].get<std::uint64_t>() ==
        0xFFFFFFFFFFFFFFFFull);
  CHECK(parsed[0]["noise_mode"] == "real");

  // Key order inside each row object follows the CSV columns.
  const nlohmann::ordered_json ordered = nlohmann::ordered_json::parse(js);
  std::vector<std::string> keys;
  for (auto it = ordered[0].begin(); it != ordered[0].end(); ++it)
    keys.push_back(it.key());
  REQUIRE(keys.size() == 16);
  CHECK(keys.front() == "kind");
  CHECK(keys[1] == "n1");
  CHECK(keys.back() == "master_seed");
  CHECK(js.back() == '\n');
}

TEST_CASE("SVG heatmap renders one panel per sketch size") {
  ResultsTable table;
  int cell = 0;
  for (Index r : {Index(20), Index(40)})
    for (double e1 : {1e-3, 1e-2})
      for (double e2 : {1e-3, 1e-2}) {
        CellSummary c = sample_row(r, e1, e2);
        c.median_rel_err = std::pow(10.0, -6 + cell++ % 5);
        table.rows.push_back(c);
      }
  const std::string svg = to_svg_heatmap(table);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("r = 20") != std::string::npos);
  CHECK(svg.find("r = 40") != std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);
  CHECK(svg.find("NaN") == std::string::npos);

  // Degenerate inputs still produce a well-formed document.
  const std::string empty_svg = to_svg_heatmap(ResultsTable{});
  CHECK(empty_svg.find("<svg") != std::string::npos);
  CHECK(empty_svg.find("no data") != std::string::npos);
}

TEST_CASE("format names map to formats, unknown names are rejected") {
  CHECK(parse_output_format("csv") == OutputFormat::kCsv);
  CHECK(parse_output_format("json") == OutputFormat::kJson);
  CHECK(parse_output_format("svg") == OutputFormat::kSvgHeatmap);
  CHECK_THROWS_AS(parse_output_format("yaml"), ValidationError);
  CHECK_THROWS_AS(parse_output_format(""), ValidationError);
}

TEST_CASE("emit_results writes the same bytes to_csv produces") {
  ResultsTable table;
  table.rows.push_back(sample_row(20, 0.1, 0.2));
  const std::string path = "results_emit_test.csv";
  emit_results(table, OutputFormat::kCsv, path);
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  in.close();
  CHECK(content == to_csv(table));
  std::remove(path.c_str());

  CHECK_THROWS_AS(
      emit_results(table, OutputFormat::kCsv, "no_such_dir/zzz/r.csv"),
      IoError);
}
