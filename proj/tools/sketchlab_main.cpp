#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sketchlab/bounds.hpp"
#include "sketchlab/experiment.hpp"
#include "sketchlab/results.hpp"
#include "sketchlab/tensor_io.hpp"
#include "sketchlab/validators.hpp"

namespace {

using namespace sketchlab;

// Exit codes: 0 success, 2 bad flags or spec, 3 numerical or statistical
// failure, 4 file I/O or parse failure.
constexpr int kExitOk = 0;
constexpr int kExitSpec = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct ExperimentFlags {
  ExperimentSpec spec;
  std::vector<Index> n3_list{1, 2, 4, 8};
  bool n3_sweep = false;
  std::string noise = "real";
  std::string field = "complex";
  std::string format = "csv";
  std::string out;
  std::size_t workers = 0;
};

void add_experiment_flags(CLI::App* sub, ExperimentFlags& f, bool tensor) {
  sub->add_option("--n1", f.spec.n1, "target rows");
  sub->add_option("--n2", f.spec.n2, "target columns");
  if (tensor) {
    sub->add_option("--n3", f.spec.n3, "frontal slices");
    sub->add_flag("--n3-sweep", f.n3_sweep,
                  "sweep n3 at fixed noise 0.01/0.01 (one row per (n3, r))");
    sub->add_option("--n3-list", f.n3_list, "n3 values for --n3-sweep")
        ->delimiter(',');
  }
  sub->add_option("--r0", f.spec.r0, "true (tubal) rank of the target");
  sub->add_option("--r", f.spec.r_list, "sketch sizes to sweep")
      ->delimiter(',');
  sub->add_option("--eps1", f.spec.eps1_grid, "target |Z|_F grid")
      ->delimiter(',');
  sub->add_option("--eps2", f.spec.eps2_grid, "target |Zt|_F grid")
      ->delimiter(',');
  sub->add_option("--trials", f.spec.trials, "trials per cell");
  sub->add_option("--seed", f.spec.master_seed, "master seed")->required();
  sub->add_option("--noise", f.noise, "noise entries: real | complex");
  sub->add_option("--field", f.field, "target entries: real | complex");
  sub->add_option("--workers", f.workers, "worker threads (0 = all cores)");
  sub->add_option("--out", f.out, "output path (default: stdout)");
  sub->add_option("--format", f.format, "output format: csv | json | svg");
}

void write_or_print(const ResultsTable& table, const std::string& format,
                    const std::string& out) {
  const OutputFormat fmt = parse_output_format(format);
  if (out.empty()) {
    switch (fmt) {
      case OutputFormat::kCsv:
        std::cout << to_csv(table);
        break;
      case OutputFormat::kJson:
        std::cout << to_json(table);
        break;
      case OutputFormat::kSvgHeatmap:
        std::cout << to_svg_heatmap(table);
        break;
    }
    return;
  }
  emit_results(table, fmt, out);
  std::cerr << "wrote " << out << "\n";
}

int run_experiment(ExperimentFlags& f, bool tensor) {
  f.spec.kind = tensor ? ExperimentKind::kTensor : ExperimentKind::kMatrix;
  if (f.spec.r_list.empty()) f.spec.r_list = {20};
  if (f.spec.eps1_grid.empty()) f.spec.eps1_grid = {0.01};
  if (f.spec.eps2_grid.empty()) f.spec.eps2_grid = {0.01};
  f.spec.noise_mode = parse_noise_mode(f.noise);
  f.spec.field_mode = parse_field_mode(f.field);
  f.spec.output_path = f.out;

  ExperimentResult result;
  if (tensor && f.n3_sweep) {
    result = run_tensor_n3_sweep(f.spec, f.n3_list, f.workers);
  } else if (tensor) {
    result = run_tensor_experiment(f.spec, f.workers);
  } else {
    result = run_matrix_experiment(f.spec, f.workers);
  }
  write_or_print(result.table, f.format, f.out);
  return kExitOk;
}

nlohmann::ordered_json report_to_json(const ValidationReport& report) {
  nlohmann::ordered_json j;
  j["law"] = report.law;
  j["m"] = report.m;
  j["n"] = report.n;
  j["r"] = report.r;
  j["samples"] = report.samples;
  j["all_pass"] = report.all_pass;
  j["checks"] = nlohmann::ordered_json::array();
  for (const LemmaCheck& c : report.checks) {
    nlohmann::ordered_json jc;
    jc["detail"] = c.detail;
    jc["param"] = c.param;
    jc["threshold"] = c.threshold;
    jc["expected"] = c.expected;
    jc["tolerance"] = c.tolerance;
    jc["empirical"] = c.empirical;
    jc["pass"] = c.pass;
    j["checks"].push_back(std::move(jc));
  }
  return j;
}

void print_report(const ValidationReport& report) {
  std::cout << report.law << " (m=" << report.m << ", n=" << report.n;
  if (report.r > 0) std::cout << ", r=" << report.r;
  std::cout << ", samples=" << report.samples << ")\n";
  for (const LemmaCheck& c : report.checks) {
    std::cout << "  [" << (c.pass ? "PASS" : "FAIL") << "] param="
              << format_double(c.param)
              << " empirical=" << format_double(c.empirical)
              << " expected=" << format_double(c.expected)
              << " tolerance=" << format_double(c.tolerance) << "  "
              << c.detail << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sketchlab: low-rank matrix and low-tubal-rank tensor recovery from "
      "two noisy linear sketches, with closed-form error-bound evaluation "
      "and Monte Carlo validation of the underlying random-matrix laws"};
  app.require_subcommand(1);

  ExperimentFlags matrix_flags;
  matrix_flags.spec.n1 = 100;
  matrix_flags.spec.n2 = 100;
  matrix_flags.spec.r0 = 10;
  matrix_flags.spec.trials = 50;
  CLI::App* matrix_cmd = app.add_subcommand(
      "matrix-exp", "median recovery error over an (r, eps1, eps2) grid");
  add_experiment_flags(matrix_cmd, matrix_flags, /*tensor=*/false);

  ExperimentFlags tensor_flags;
  tensor_flags.spec.n1 = 100;
  tensor_flags.spec.n2 = 100;
  tensor_flags.spec.n3 = 4;
  tensor_flags.spec.r0 = 10;
  tensor_flags.spec.trials = 50;
  CLI::App* tensor_cmd = app.add_subcommand(
      "tensor-exp", "tensor recovery sweep (optionally an n3 sweep)");
  add_experiment_flags(tensor_cmd, tensor_flags, /*tensor=*/true);

  std::string compare_in;
  Index compare_r = 0;
  double compare_eps1 = 0.01, compare_eps2 = 0.01;
  std::uint64_t compare_seed = 0;
  std::string compare_noise = "real";
  bool compare_json = false;
  CLI::App* compare_cmd = app.add_subcommand(
      "data-compare",
      "tensor sketch vs slicewise matrix sketches on a TNS1 file");
  compare_cmd->add_option("--in", compare_in, "input TNS1 tensor")
      ->required();
  compare_cmd->add_option("--r", compare_r, "sketch size")->required();
  compare_cmd->add_option("--eps1", compare_eps1, "target |Z|_F");
  compare_cmd->add_option("--eps2", compare_eps2, "target |Zt|_F");
  compare_cmd->add_option("--seed", compare_seed, "master seed")->required();
  compare_cmd->add_option("--noise", compare_noise,
                          "noise entries: real | complex");
  compare_cmd->add_flag("--json", compare_json, "emit JSON instead of text");

  Index lemma_n = 50;
  std::vector<double> lemma_eps{0.25, 0.5, 1.0};
  std::size_t lemma_samples = 10000;
  Index gordon_m = 200, gordon_n = 50;
  std::vector<double> lemma_delta{0.05, 0.2};
  std::size_t gordon_samples = 2000;
  Index haar_n = 40, haar_r = 10;
  std::size_t haar_samples = 2000;
  std::uint64_t lemma_seed = 0;
  std::size_t lemma_workers = 0;
  std::string lemma_law = "all";
  bool lemma_json = false;
  CLI::App* lemma_cmd = app.add_subcommand(
      "validate-lemmas",
      "Monte Carlo checks of the singular-value laws behind the bounds");
  lemma_cmd->add_option("--law", lemma_law,
                        "all | square | gordon | haar");
  lemma_cmd->add_option("--n", lemma_n, "square law matrix size");
  lemma_cmd->add_option("--eps", lemma_eps, "square law epsilon grid")
      ->delimiter(',');
  lemma_cmd->add_option("--samples", lemma_samples, "square law sample count");
  lemma_cmd->add_option("--gordon-m", gordon_m, "tall matrix rows");
  lemma_cmd->add_option("--gordon-n", gordon_n, "tall matrix columns");
  lemma_cmd->add_option("--delta", lemma_delta,
                        "delta grid for the one-sided laws")
      ->delimiter(',');
  lemma_cmd->add_option("--gordon-samples", gordon_samples,
                        "tall-matrix sample count");
  lemma_cmd->add_option("--haar-n", haar_n, "Haar unitary size");
  lemma_cmd->add_option("--haar-r", haar_r, "corner truncation");
  lemma_cmd->add_option("--haar-samples", haar_samples,
                        "Haar corner sample count");
  lemma_cmd->add_option("--seed", lemma_seed, "master seed")->required();
  lemma_cmd->add_option("--workers", lemma_workers,
                        "worker threads (0 = all cores)");
  lemma_cmd->add_flag("--json", lemma_json, "emit JSON instead of text");

  std::string bound_kind;
  BoundInput bound_in;
  bool bound_json = false;
  CLI::App* bound_cmd = app.add_subcommand(
      "bound", "evaluate a closed-form recovery error bound");
  bound_cmd
      ->add_option("--kind", bound_kind,
                   "robust | robust-r0 | robust-n1 | lowrank | tensor-robust "
                   "| tensor-approx")
      ->required();
  bound_cmd->add_option("--n1", bound_in.n1, "target rows");
  bound_cmd->add_option("--n2", bound_in.n2, "target columns");
  bound_cmd->add_option("--n3", bound_in.n3, "frontal slices (tensor kinds)");
  bound_cmd->add_option("--r", bound_in.r, "sketch size");
  bound_cmd->add_option("--r-low", bound_in.r_low,
                        "true rank / truncation rank");
  bound_cmd->add_option("--delta1", bound_in.delta1, "delta_1");
  bound_cmd->add_option("--delta2", bound_in.delta2, "delta_2");
  bound_cmd->add_option("--epsilon", bound_in.epsilon, "epsilon");
  bound_cmd->add_option("--z-norm", bound_in.z_norm, "|Z| norm");
  bound_cmd->add_option("--zt-norm", bound_in.z_tilde_norm, "|Zt| norm");
  bound_cmd->add_option("--sigma-tail", bound_in.sigma_tail,
                        "sigma_{r_low+1}(X0) or tail Frobenius norm");
  bound_cmd->add_flag("--json", bound_json, "emit JSON instead of text");

  Index gen_n1 = 100, gen_n2 = 100, gen_n3 = 4, gen_r0 = 10;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  std::string gen_field = "complex";
  std::string gen_dtype = "complex";
  double gen_norm = 0.0;
  CLI::App* gen_cmd = app.add_subcommand(
      "gen-tensor", "write a synthetic low-tubal-rank TNS1 file");
  gen_cmd->add_option("--n1", gen_n1, "rows");
  gen_cmd->add_option("--n2", gen_n2, "columns");
  gen_cmd->add_option("--n3", gen_n3, "frontal slices");
  gen_cmd->add_option("--r0", gen_r0, "tubal rank");
  gen_cmd->add_option("--seed", gen_seed, "master seed")->required();
  gen_cmd->add_option("--out", gen_out, "output path")->required();
  gen_cmd->add_option("--field", gen_field, "target entries: real | complex");
  gen_cmd->add_option("--dtype", gen_dtype, "file dtype: real | complex");
  gen_cmd->add_option("--norm", gen_norm,
                      "rescale to this Frobenius norm (0 = leave as drawn)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSpec;
  }

  try {
    if (matrix_cmd->parsed()) {
      return run_experiment(matrix_flags, /*tensor=*/false);
    }
    if (tensor_cmd->parsed()) {
      return run_experiment(tensor_flags, /*tensor=*/true);
    }
    if (compare_cmd->parsed()) {
      const DataComparisonReport report = run_data_tensor_comparison(
          compare_in, compare_r, compare_eps1, compare_eps2, compare_seed,
          parse_noise_mode(compare_noise));
      if (compare_json) {
        nlohmann::ordered_json j;
        j["n1"] = report.n1;
        j["n2"] = report.n2;
        j["n3"] = report.n3;
        j["r"] = report.r;
        j["eps1"] = report.eps1;
        j["eps2"] = report.eps2;
        j["master_seed"] = report.master_seed;
        j["strategies"] = nlohmann::ordered_json::array();
        for (const StrategyReport& s : report.strategies) {
          nlohmann::ordered_json js;
          js["name"] = s.name;
          js["abs_err"] = s.abs_err;
          js["rel_err"] = s.rel_err;
          js["sketch_matrix_count"] = s.sketch_matrix_count;
          js["sketch_storage_bytes"] = s.sketch_storage_bytes;
          j["strategies"].push_back(std::move(js));
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "tensor " << report.n1 << "x" << report.n2 << "x"
                  << report.n3 << ", r=" << report.r
                  << ", eps1=" << format_double(report.eps1)
                  << ", eps2=" << format_double(report.eps2)
                  << ", seed=" << report.master_seed << "\n";
        for (const StrategyReport& s : report.strategies) {
          std::cout << "  " << s.name << ": abs_err="
                    << format_double(s.abs_err)
                    << " rel_err=" << format_double(s.rel_err)
                    << " sketch_matrices=" << s.sketch_matrix_count
                    << " sketch_bytes=" << s.sketch_storage_bytes << "\n";
        }
      }
      return kExitOk;
    }
    if (lemma_cmd->parsed()) {
      if (lemma_law != "all" && lemma_law != "square" &&
          lemma_law != "gordon" && lemma_law != "haar") {
        throw ValidationError("unknown law \"" + lemma_law +
                              "\" (expected all, square, gordon, or haar)");
      }
      const Seed seed{lemma_seed, 0};
      std::vector<ValidationReport> reports;
      if (lemma_law == "all" || lemma_law == "square") {
        reports.push_back(validate_square_gaussian_law(
            lemma_n, lemma_eps, lemma_samples, seed, lemma_workers));
      }
      if (lemma_law == "all" || lemma_law == "gordon") {
        reports.push_back(validate_gordon(gordon_m, gordon_n, lemma_delta,
                                          gordon_samples, seed,
                                          lemma_workers));
      }
      if (lemma_law == "all" || lemma_law == "haar") {
        reports.push_back(validate_truncated_haar(haar_n, haar_r, lemma_delta,
                                                  haar_samples, seed,
                                                  lemma_workers));
      }
      bool all_pass = true;
      if (lemma_json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const ValidationReport& r : reports) {
          j.push_back(report_to_json(r));
          all_pass = all_pass && r.all_pass;
        }
        std::cout << j.dump(2) << "\n";
      } else {
        for (const ValidationReport& r : reports) {
          print_report(r);
          all_pass = all_pass && r.all_pass;
        }
      }
      return all_pass ? kExitOk : kExitNumerical;
    }
    if (bound_cmd->parsed()) {
      BoundOutput out;
      if (bound_kind == "robust") {
        out = robust_bound(bound_in);
      } else if (bound_kind == "robust-r0") {
        out = robust_bound_r_equals_r0(bound_in);
      } else if (bound_kind == "robust-n1") {
        out = robust_bound_r_equals_n1(bound_in);
      } else if (bound_kind == "lowrank") {
        out = lowrank_approx_bound(bound_in);
      } else if (bound_kind == "tensor-robust") {
        out = tensor_robust_bound(bound_in);
      } else if (bound_kind == "tensor-approx") {
        out = tensor_approx_bound(bound_in);
      } else {
        throw ValidationError("unknown bound kind \"" + bound_kind + "\"");
      }
      if (bound_json) {
        nlohmann::ordered_json j;
        j["kind"] = bound_kind;
        j["value"] = out.value;
        j["probability_floor"] = out.probability_floor;
        j["valid"] = out.valid;
        j["reason"] = out.reason;
        j["terms"] = nlohmann::ordered_json::array();
        for (const BoundTerm& t : out.terms) {
          j["terms"].push_back({{"name", t.name}, {"value", t.value}});
        }
        j["note"] = out.note;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "kind: " << bound_kind << "\n"
                  << "value: " << format_double(out.value) << "\n"
                  << "probability_floor: "
                  << format_double(out.probability_floor) << "\n"
                  << "valid: " << (out.valid ? "true" : "false") << "\n";
        if (!out.reason.empty()) std::cout << "reason: " << out.reason << "\n";
        for (const BoundTerm& t : out.terms) {
          std::cout << "  " << t.name << ": " << format_double(t.value)
                    << "\n";
        }
        if (!out.note.empty()) std::cout << "note: " << out.note << "\n";
      }
      return kExitOk;
    }
    if (gen_cmd->parsed()) {
      const FieldMode field = parse_field_mode(gen_field);
      TensorDtype dtype;
      if (gen_dtype == "real") {
        dtype = TensorDtype::kReal;
      } else if (gen_dtype == "complex") {
        dtype = TensorDtype::kComplex;
      } else {
        throw ValidationError("unknown dtype \"" + gen_dtype +
                              "\" (expected real or complex)");
      }
      if (dtype == TensorDtype::kReal && field != FieldMode::kRealTarget) {
        throw ValidationError(
            "gen-tensor: real dtype requires --field real");
      }
      Tensor3 t = gen_lowtubal_tensor(gen_n1, gen_n2, gen_n3, gen_r0,
                                      Seed{gen_seed, 0}, field);
      if (gen_norm > 0.0) t = scale_to_frobenius(t, gen_norm);
      if (dtype == TensorDtype::kReal) {
        // Real factors make the product mathematically real; the transform
        // path leaves imaginary dust at machine scale, which a real-dtype
        // file cannot carry.
        for (DenseMatrix& s : t.slices()) {
          s = s.real().cast<Complex>();
        }
      }
      save_tensor_file(t, gen_out, dtype);
      std::cerr << "wrote " << gen_out << "\n";
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
