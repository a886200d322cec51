#include "sketchlab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "sketchlab/matrix_sketch.hpp"
#include "sketchlab/parallel.hpp"
#include "sketchlab/tensor_io.hpp"
#include "sketchlab/tensor_sketch.hpp"
#include "sketchlab/tproduct.hpp"

namespace sketchlab {

namespace {

// Substream role tags. Sketching matrices and noise directions are keyed by
// (role, r, trial) — deliberately not by the epsilon indices — so all cells
// of the noise grid see the same draws, rescaled to each cell's target norm.
// Shared draws make the cross-epsilon median ratios a paired comparison,
// which is what keeps the flat-trend check at large r stable at 50 trials.
constexpr std::uint64_t kRoleTarget = 0x3058;            // target X0
constexpr std::uint64_t kRoleSketch = 0x53;              // S
constexpr std::uint64_t kRoleSketchTilde = 0x5453;       // St
constexpr std::uint64_t kRoleNoise = 0x5a;               // Z
constexpr std::uint64_t kRoleNoiseTilde = 0x545a;        // Zt
constexpr std::uint64_t kRoleSliceSketch = 0x4b53;       // per-slice S_k
constexpr std::uint64_t kRoleSliceSketchTilde = 0x4b54;  // per-slice St_k

DenseMatrix sample_gaussian(Index rows, Index cols, const Seed& seed,
                            NoiseMode mode) {
  return mode == NoiseMode::kComplex ? sample_complex_gaussian(rows, cols, seed)
                                     : sample_real_gaussian(rows, cols, seed);
}

// A rows x cols x n3 Gaussian tensor drawn as one slice-major stream, so the
// n3 = 1 case is byte-identical to the plain matrix draw from the same seed.
Tensor3 sample_gaussian_tensor(Index rows, Index cols, Index n3,
                               const Seed& seed, NoiseMode mode) {
  return fold(sample_gaussian(rows * n3, cols, seed, mode), rows, cols, n3);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

struct GridShape {
  std::size_t nr, ne1, ne2, trials;

  std::size_t cells() const { return nr * ne1 * ne2; }
  std::size_t tasks() const { return cells() * trials; }
};

struct TaskCoords {
  std::size_t ri, e1, e2, trial;
};

TaskCoords split_task(std::size_t task, const GridShape& g) {
  TaskCoords c;
  c.trial = task % g.trials;
  task /= g.trials;
  c.e2 = task % g.ne2;
  task /= g.ne2;
  c.e1 = task % g.ne1;
  c.ri = task / g.ne1;
  return c;
}

// Collapse the per-trial records of each cell into one table row, cells kept
// in grid order. Aggregation happens after the parallel section on fully
// collected lists, so worker count cannot affect the output.
ResultsTable aggregate(const ExperimentSpec& spec, const char* kind,
                       Index n3, const GridShape& g,
                       const std::vector<TrialRecord>& records) {
  ResultsTable table;
  for (std::size_t ri = 0; ri < g.nr; ++ri) {
    for (std::size_t e1 = 0; e1 < g.ne1; ++e1) {
      for (std::size_t e2 = 0; e2 < g.ne2; ++e2) {
        const std::size_t base =
            ((ri * g.ne1 + e1) * g.ne2 + e2) * g.trials;
        std::vector<double> rel(g.trials), abs(g.trials);
        std::size_t rank_failures = 0;
        for (std::size_t t = 0; t < g.trials; ++t) {
          rel[t] = records[base + t].rel_err_frobenius;
          abs[t] = records[base + t].abs_err_frobenius;
          if (!records[base + t].rank_flag) ++rank_failures;
        }
        CellSummary row;
        row.kind = kind;
        row.n1 = spec.n1;
        row.n2 = spec.n2;
        row.n3 = n3;
        row.r0 = spec.r0;
        row.r = spec.r_list[ri];
        row.eps1 = spec.eps1_grid[e1];
        row.eps2 = spec.eps2_grid[e2];
        row.trials = g.trials;
        row.noise_mode = to_string(spec.noise_mode);
        row.median_rel_err = percentile(rel, 0.5);
        row.median_abs_err = percentile(abs, 0.5);
        row.p25_rel_err = percentile(rel, 0.25);
        row.p75_rel_err = percentile(rel, 0.75);
        row.rank_flag_failures = rank_failures;
        row.master_seed = spec.master_seed;
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

std::size_t sketch_pair_bytes(Index r, Index n1, Index n2,
                              std::size_t count) {
  return count * static_cast<std::size_t>(r) *
         static_cast<std::size_t>(n1 + n2) * sizeof(Complex);
}

}  // namespace

const char* to_string(NoiseMode mode) {
  return mode == NoiseMode::kComplex ? "complex" : "real";
}

const char* to_string(FieldMode mode) {
  return mode == FieldMode::kComplexTarget ? "complex-target" : "real-target";
}

NoiseMode parse_noise_mode(const std::string& name) {
  if (name == "real") return NoiseMode::kReal;
  if (name == "complex") return NoiseMode::kComplex;
  throw ValidationError("unknown noise mode \"" + name +
                        "\" (expected real or complex)");
}

FieldMode parse_field_mode(const std::string& name) {
  if (name == "real" || name == "real-target") return FieldMode::kRealTarget;
  if (name == "complex" || name == "complex-target") {
    return FieldMode::kComplexTarget;
  }
  throw ValidationError("unknown field mode \"" + name +
                        "\" (expected real or complex)");
}

void validate_spec(const ExperimentSpec& spec) {
  std::vector<std::string> problems;
  if (spec.n1 < 1) problems.push_back("n1 must be >= 1");
  if (spec.n2 < 1) problems.push_back("n2 must be >= 1");
  if (spec.n3 < 1) problems.push_back("n3 must be >= 1");
  if (spec.r0 < 0) {
    problems.push_back("r0 must be >= 0");
  } else if (spec.n1 >= 1 && spec.n2 >= 1 &&
             spec.r0 > std::min(spec.n1, spec.n2)) {
    problems.push_back("r0 must be <= min(n1, n2)");
  }
  if (spec.trials < 1) problems.push_back("trials must be >= 1");
  if (spec.r_list.empty()) {
    problems.push_back("r_list must be nonempty");
  } else if (std::any_of(spec.r_list.begin(), spec.r_list.end(),
                         [](Index r) { return r < 1; })) {
    problems.push_back("r_list entries must be >= 1");
  }
  const auto bad_eps = [](double e) { return !std::isfinite(e) || e < 0.0; };
  if (spec.eps1_grid.empty()) {
    problems.push_back("eps1_grid must be nonempty");
  } else if (std::any_of(spec.eps1_grid.begin(), spec.eps1_grid.end(),
                         bad_eps)) {
    problems.push_back("eps1_grid entries must be finite and >= 0");
  }
  if (spec.eps2_grid.empty()) {
    problems.push_back("eps2_grid must be nonempty");
  } else if (std::any_of(spec.eps2_grid.begin(), spec.eps2_grid.end(),
                         bad_eps)) {
    problems.push_back("eps2_grid entries must be finite and >= 0");
  }
  if (!problems.empty()) {
    std::string msg = "experiment spec invalid: " + problems.front();
    for (std::size_t i = 1; i < problems.size(); ++i) {
      msg += "; " + problems[i];
    }
    throw ValidationError(msg);
  }
}

DenseMatrix gen_lowrank_matrix(Index n1, Index n2, Index r0, const Seed& seed,
                               FieldMode field) {
  if (n1 < 1 || n2 < 1) {
    throw ShapeError("gen_lowrank_matrix: dimensions must be positive");
  }
  if (r0 < 0 || r0 > std::min(n1, n2)) {
    throw ShapeError("gen_lowrank_matrix: need 0 <= r0 <= min(n1, n2)");
  }
  if (r0 == 0) return DenseMatrix::Zero(n1, n2);
  const NoiseMode draw = field == FieldMode::kComplexTarget
                             ? NoiseMode::kComplex
                             : NoiseMode::kReal;
  const DenseMatrix g1 = sample_gaussian(n1, r0, derive(seed, 1, 0), draw);
  const DenseMatrix g2 = sample_gaussian(r0, n2, derive(seed, 2, 0), draw);
  return g1 * g2;
}

Tensor3 gen_lowtubal_tensor(Index n1, Index n2, Index n3, Index r0,
                            const Seed& seed, FieldMode field) {
  if (n1 < 1 || n2 < 1 || n3 < 1) {
    throw ShapeError("gen_lowtubal_tensor: dimensions must be positive");
  }
  if (r0 < 0 || r0 > std::min(n1, n2)) {
    throw ShapeError("gen_lowtubal_tensor: need 0 <= r0 <= min(n1, n2)");
  }
  if (r0 == 0) return Tensor3::zero(n1, n2, n3);
  const NoiseMode draw = field == FieldMode::kComplexTarget
                             ? NoiseMode::kComplex
                             : NoiseMode::kReal;
  std::vector<DenseMatrix> a(static_cast<std::size_t>(n3));
  std::vector<DenseMatrix> b(static_cast<std::size_t>(n3));
  for (Index k = 0; k < n3; ++k) {
    a[static_cast<std::size_t>(k)] =
        sample_gaussian(n1, r0, derive(seed, 1, static_cast<std::uint64_t>(k)),
                        draw);
    b[static_cast<std::size_t>(k)] =
        sample_gaussian(r0, n2, derive(seed, 2, static_cast<std::uint64_t>(k)),
                        draw);
  }
  return t_product_fft(Tensor3(std::move(a)), Tensor3(std::move(b)));
}

DenseMatrix scale_to_frobenius(const DenseMatrix& m, double target) {
  if (!std::isfinite(target) || target < 0.0) {
    throw ValidationError(
        "scale_to_frobenius: target must be finite and nonnegative");
  }
  if (target == 0.0) return DenseMatrix::Zero(m.rows(), m.cols());
  const double norm = m.norm();
  if (norm == 0.0) {
    throw ValidationError(
        "scale_to_frobenius: zero input cannot reach a positive norm");
  }
  return m * (target / norm);
}

Tensor3 scale_to_frobenius(const Tensor3& t, double target) {
  if (!std::isfinite(target) || target < 0.0) {
    throw ValidationError(
        "scale_to_frobenius: target must be finite and nonnegative");
  }
  if (target == 0.0) return Tensor3::zero(t.n1(), t.n2(), t.n3());
  const double norm = tensor_frobenius(t);
  if (norm == 0.0) {
    throw ValidationError(
        "scale_to_frobenius: zero input cannot reach a positive norm");
  }
  return scale(t, Complex(target / norm, 0.0));
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) {
    throw ValidationError("percentile: empty sample");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw ValidationError("percentile: q must lie in [0, 1]");
  }
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

ExperimentResult run_matrix_experiment(const ExperimentSpec& spec,
                                       std::size_t workers) {
  validate_spec(spec);
  const Seed root{spec.master_seed, 0};
  const DenseMatrix x0 = scale_to_frobenius(
      gen_lowrank_matrix(spec.n1, spec.n2, spec.r0,
                         derive(root, kRoleTarget), spec.field_mode),
      1.0);
  const double x0_norm = x0.norm();

  const GridShape g{spec.r_list.size(), spec.eps1_grid.size(),
                    spec.eps2_grid.size(), spec.trials};
  std::vector<TrialRecord> records(g.tasks());

  parallel_for(g.tasks(), workers, [&](std::size_t task) {
    const TaskCoords c = split_task(task, g);
    const Index r = spec.r_list[c.ri];
    const auto rr = static_cast<std::uint64_t>(r);
    const double eps1 = spec.eps1_grid[c.e1];
    const double eps2 = spec.eps2_grid[c.e2];

    SketchModel model;
    model.x0 = x0;
    model.s = sample_complex_gaussian(r, spec.n1,
                                      derive(root, kRoleSketch, rr, c.trial));
    model.s_tilde = sample_complex_gaussian(
        r, spec.n2, derive(root, kRoleSketchTilde, rr, c.trial));
    if (eps1 > 0.0) {
      model.z = scale_to_frobenius(
          sample_gaussian(r, spec.n2, derive(root, kRoleNoise, rr, c.trial),
                          spec.noise_mode),
          eps1);
    }
    if (eps2 > 0.0) {
      model.z_tilde = scale_to_frobenius(
          sample_gaussian(r, spec.n1,
                          derive(root, kRoleNoiseTilde, rr, c.trial),
                          spec.noise_mode),
          eps2);
    }
    const SketchPair pair = make_sketches(model);

    const auto start = std::chrono::steady_clock::now();
    const RecoveryResult rec = recover_auto(pair.y, pair.y_tilde, model.s);
    const double ms = elapsed_ms(start);

    TrialRecord& out = records[task];
    out.n1 = spec.n1;
    out.n2 = spec.n2;
    out.n3 = 1;
    out.r0 = spec.r0;
    out.r = r;
    out.eps1 = eps1;
    out.eps2 = eps2;
    out.trial_index = c.trial;
    out.abs_err_frobenius = recovery_error(rec.x, x0, MatrixNorm::kFrobenius);
    out.rel_err_frobenius = out.abs_err_frobenius / x0_norm;
    out.rank_flag = rec.y_tilde_full_rank;
    out.wall_time_ms = ms;
  });

  ExperimentResult result;
  result.table = aggregate(spec, "matrix", 1, g, records);
  result.records = std::move(records);
  return result;
}

ExperimentResult run_tensor_experiment(const ExperimentSpec& spec,
                                       std::size_t workers) {
  validate_spec(spec);
  const Seed root{spec.master_seed, 0};
  const Tensor3 x0 = scale_to_frobenius(
      gen_lowtubal_tensor(spec.n1, spec.n2, spec.n3, spec.r0,
                          derive(root, kRoleTarget), spec.field_mode),
      1.0);
  const double x0_norm = tensor_frobenius(x0);

  const GridShape g{spec.r_list.size(), spec.eps1_grid.size(),
                    spec.eps2_grid.size(), spec.trials};
  std::vector<TrialRecord> records(g.tasks());

  parallel_for(g.tasks(), workers, [&](std::size_t task) {
    const TaskCoords c = split_task(task, g);
    const Index r = spec.r_list[c.ri];
    const auto rr = static_cast<std::uint64_t>(r);
    const double eps1 = spec.eps1_grid[c.e1];
    const double eps2 = spec.eps2_grid[c.e2];

    TensorSketchModel model;
    model.x0 = x0;
    model.s = sample_complex_gaussian(r, spec.n1,
                                      derive(root, kRoleSketch, rr, c.trial));
    model.s_tilde = sample_complex_gaussian(
        r, spec.n2, derive(root, kRoleSketchTilde, rr, c.trial));
    if (eps1 > 0.0) {
      model.z = scale_to_frobenius(
          sample_gaussian_tensor(r, spec.n2, spec.n3,
                                 derive(root, kRoleNoise, rr, c.trial),
                                 spec.noise_mode),
          eps1);
    }
    if (eps2 > 0.0) {
      model.z_tilde = scale_to_frobenius(
          sample_gaussian_tensor(r, spec.n1, spec.n3,
                                 derive(root, kRoleNoiseTilde, rr, c.trial),
                                 spec.noise_mode),
          eps2);
    }
    const TensorSketchPair pair = make_tensor_sketches(model);

    const auto start = std::chrono::steady_clock::now();
    const TensorRecoveryResult rec =
        recover_tensor_detailed(pair.y, pair.y_tilde, model.s);
    const double ms = elapsed_ms(start);

    TrialRecord& out = records[task];
    out.n1 = spec.n1;
    out.n2 = spec.n2;
    out.n3 = spec.n3;
    out.r0 = spec.r0;
    out.r = r;
    out.eps1 = eps1;
    out.eps2 = eps2;
    out.trial_index = c.trial;
    out.abs_err_frobenius = tensor_frobenius(subtract(rec.x, x0));
    out.rel_err_frobenius = out.abs_err_frobenius / x0_norm;
    out.rank_flag = rec.all_slices_full_rank;
    out.wall_time_ms = ms;
  });

  ExperimentResult result;
  result.table = aggregate(spec, "tensor", spec.n3, g, records);
  result.records = std::move(records);
  return result;
}

ExperimentResult run_tensor_n3_sweep(const ExperimentSpec& spec,
                                     const std::vector<Index>& n3_list,
                                     std::size_t workers) {
  if (n3_list.empty()) {
    throw ValidationError("n3 sweep: n3_list must be nonempty");
  }
  if (std::any_of(n3_list.begin(), n3_list.end(),
                  [](Index n3) { return n3 < 1; })) {
    throw ValidationError("n3 sweep: n3_list entries must be >= 1");
  }
  ExperimentResult all;
  for (Index n3 : n3_list) {
    ExperimentSpec sub = spec;
    sub.kind = ExperimentKind::kTensor;
    sub.n3 = n3;
    sub.eps1_grid = {0.01};
    sub.eps2_grid = {0.01};
    ExperimentResult part = run_tensor_experiment(sub, workers);
    all.table.rows.insert(all.table.rows.end(), part.table.rows.begin(),
                          part.table.rows.end());
    all.records.insert(all.records.end(), part.records.begin(),
                       part.records.end());
  }
  return all;
}

DataComparisonReport run_data_tensor_comparison(const std::string& path,
                                                Index r, double eps1,
                                                double eps2,
                                                std::uint64_t master_seed,
                                                NoiseMode noise_mode) {
  if (r < 1) {
    throw ValidationError("data comparison: r must be >= 1");
  }
  if (!std::isfinite(eps1) || eps1 < 0.0 || !std::isfinite(eps2) ||
      eps2 < 0.0) {
    throw ValidationError(
        "data comparison: noise norms must be finite and nonnegative");
  }
  const Tensor3 x0 = scale_to_frobenius(load_tensor_file(path), 1.0);
  const Index n1 = x0.n1();
  const Index n2 = x0.n2();
  const Index n3 = x0.n3();
  const double x0_norm = tensor_frobenius(x0);
  const Seed root{master_seed, 0};
  const auto rr = static_cast<std::uint64_t>(r);

  // One (S, St) pair shared by the tensor strategy and the shared-slicewise
  // strategy; one noise pair reused by all strategies so only the sketching
  // scheme differs.
  const DenseMatrix s =
      sample_complex_gaussian(r, n1, derive(root, kRoleSketch, rr, 0));
  const DenseMatrix st =
      sample_complex_gaussian(r, n2, derive(root, kRoleSketchTilde, rr, 0));
  Tensor3 z, zt;
  if (eps1 > 0.0) {
    z = scale_to_frobenius(
        sample_gaussian_tensor(r, n2, n3, derive(root, kRoleNoise, rr, 0),
                               noise_mode),
        eps1);
  }
  if (eps2 > 0.0) {
    zt = scale_to_frobenius(
        sample_gaussian_tensor(r, n1, n3,
                               derive(root, kRoleNoiseTilde, rr, 0),
                               noise_mode),
        eps2);
  }

  DataComparisonReport report;
  report.n1 = n1;
  report.n2 = n2;
  report.n3 = n3;
  report.r = r;
  report.eps1 = eps1;
  report.eps2 = eps2;
  report.master_seed = master_seed;

  {
    TensorSketchModel model;
    model.x0 = x0;
    model.s = s;
    model.s_tilde = st;
    model.z = z;
    model.z_tilde = zt;
    const TensorSketchPair pair = make_tensor_sketches(model);
    const Tensor3 xa = recover_tensor(pair.y, pair.y_tilde, s);
    StrategyReport sr;
    sr.name = "tensor";
    sr.abs_err = tensor_frobenius(subtract(xa, x0));
    sr.rel_err = sr.abs_err / x0_norm;
    sr.sketch_matrix_count = 1;
    sr.sketch_storage_bytes = sketch_pair_bytes(r, n1, n2, 1);
    report.strategies.push_back(std::move(sr));
  }

  const auto slicewise = [&](const char* name, bool fresh_per_slice) {
    double err_sq = 0.0;
    for (Index k = 0; k < n3; ++k) {
      const auto kk = static_cast<std::uint64_t>(k);
      DenseMatrix fresh_s, fresh_st;
      const DenseMatrix* sk = &s;
      const DenseMatrix* stk = &st;
      if (fresh_per_slice) {
        fresh_s = sample_complex_gaussian(
            r, n1, derive(root, kRoleSliceSketch, rr, kk));
        fresh_st = sample_complex_gaussian(
            r, n2, derive(root, kRoleSliceSketchTilde, rr, kk));
        sk = &fresh_s;
        stk = &fresh_st;
      }
      DenseMatrix y = (*sk) * x0.slice(k);
      if (!z.empty()) y += z.slice(k);
      DenseMatrix y_tilde = (*stk) * x0.slice(k).adjoint();
      if (!zt.empty()) y_tilde += zt.slice(k);
      const RecoveryResult rec = recover_auto(y, y_tilde, *sk);
      err_sq += (rec.x - x0.slice(k)).squaredNorm();
    }
    StrategyReport sr;
    sr.name = name;
    sr.abs_err = std::sqrt(err_sq);
    sr.rel_err = sr.abs_err / x0_norm;
    sr.sketch_matrix_count = fresh_per_slice ? static_cast<std::size_t>(n3) : 1;
    sr.sketch_storage_bytes =
        sketch_pair_bytes(r, n1, n2, sr.sketch_matrix_count);
    report.strategies.push_back(std::move(sr));
  };
  slicewise("slicewise-fresh", true);
  slicewise("slicewise-shared", false);

  return report;
}

}  // namespace sketchlab
