#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sketchlab/results.hpp"
#include "sketchlab/rng.hpp"
#include "sketchlab/tensor3.hpp"
#include "sketchlab/types.hpp"

namespace sketchlab {

// Distribution of the additive sketch noise Z, Zt.
enum class NoiseMode { kReal, kComplex };

// Field of the synthetic ground truth X0 (the recovery theory is stated over
// the complex field; real targets are exposed for comparison runs).
enum class FieldMode { kRealTarget, kComplexTarget };

enum class ExperimentKind {
  kMatrix,
  kTensor,
  kLemmaValidation,
  kBoundEval,
  kDataTensor,
};

const char* to_string(NoiseMode mode);
const char* to_string(FieldMode mode);
NoiseMode parse_noise_mode(const std::string& name);
FieldMode parse_field_mode(const std::string& name);

// Declarative description of one experiment run. eps1 targets |Z|_F and
// eps2 targets |Zt|_F; every (r, eps1, eps2) combination is one cell.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kMatrix;
  Index n1 = 0;
  Index n2 = 0;
  Index n3 = 1;
  Index r0 = 0;
  std::vector<Index> r_list;
  std::vector<double> eps1_grid;
  std::vector<double> eps2_grid;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  NoiseMode noise_mode = NoiseMode::kReal;
  FieldMode field_mode = FieldMode::kComplexTarget;
  std::string output_path;  // empty: the caller decides where output goes
};

// Throws ValidationError whose message lists every violated invariant, not
// just the first one.
void validate_spec(const ExperimentSpec& spec);

// One recovery trial. Reproducible from (master_seed, cell, trial_index)
// alone; wall_time_ms is diagnostic and never serialized.
struct TrialRecord {
  Index n1 = 0;
  Index n2 = 0;
  Index n3 = 1;
  Index r0 = 0;
  Index r = 0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::size_t trial_index = 0;
  double rel_err_frobenius = 0.0;
  double abs_err_frobenius = 0.0;
  bool rank_flag = true;  // y_tilde passed the full-rank check
  double wall_time_ms = 0.0;
};

struct ExperimentResult {
  ResultsTable table;                // one row per cell, grid order
  std::vector<TrialRecord> records;  // every trial, cells in row order
};

// Product of two Gaussian factors n1 x r0 and r0 x n2; rank r0 almost
// surely. r0 = 0 gives the zero matrix.
DenseMatrix gen_lowrank_matrix(Index n1, Index n2, Index r0, const Seed& seed,
                               FieldMode field = FieldMode::kComplexTarget);

// t-product of two Gaussian tensors n1 x r0 x n3 and r0 x n2 x n3; tubal
// rank r0 almost surely. With n3 = 1 this reproduces gen_lowrank_matrix
// bit for bit from the same seed.
Tensor3 gen_lowtubal_tensor(Index n1, Index n2, Index n3, Index r0,
                            const Seed& seed,
                            FieldMode field = FieldMode::kComplexTarget);

// Rescale to an exact Frobenius norm. target = 0 returns the zero object;
// a zero input with target > 0 is a ValidationError.
DenseMatrix scale_to_frobenius(const DenseMatrix& m, double target);
Tensor3 scale_to_frobenius(const Tensor3& t, double target);

// Inclusive-of-endpoints linear interpolation at q*(size-1) on the sorted
// sample; q = 0.5 is the usual midpoint median. Exposed for tests.
double percentile(std::vector<double> values, double q);

// Double-sketch recovery sweep over the (r, eps1, eps2) grid. X0 is fixed
// for the whole run (unit Frobenius norm); S, St, Z, Zt are redrawn every
// trial. Output is deterministic for a given spec regardless of `workers`
// (0 = one per hardware thread).
ExperimentResult run_matrix_experiment(const ExperimentSpec& spec,
                                       std::size_t workers = 0);

// Tensor analogue over n1 x n2 x n3 targets; with n3 = 1 it draws the same
// targets, sketches, and noise as the matrix experiment and reproduces its
// errors to rounding.
ExperimentResult run_tensor_experiment(const ExperimentSpec& spec,
                                       std::size_t workers = 0);

// Growth-with-n3 sweep: fixed noise norms 0.01/0.01, fresh unit-norm X0 per
// n3, one row per (n3, r) pair. The ExperimentSpec's epsilon grids are
// ignored in favor of the pinned noise.
ExperimentResult run_tensor_n3_sweep(const ExperimentSpec& spec,
                                     const std::vector<Index>& n3_list,
                                     std::size_t workers = 0);

struct StrategyReport {
  std::string name;
  double abs_err = 0.0;
  double rel_err = 0.0;
  std::size_t sketch_matrix_count = 0;   // distinct (S, St) pairs held
  std::size_t sketch_storage_bytes = 0;  // complex128 entries of those pairs
};

struct DataComparisonReport {
  Index n1 = 0;
  Index n2 = 0;
  Index n3 = 0;
  Index r = 0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::uint64_t master_seed = 0;
  // In order: tensor, slicewise-fresh, slicewise-shared.
  std::vector<StrategyReport> strategies;
};

// Loads a TNS1 tensor, normalizes it to unit Frobenius norm, and recovers it
// three ways from equally noisy sketches: (a) the tensor double sketch;
// (b) the matrix double sketch applied to each frontal slice with fresh
// per-slice sketching matrices; (c) the same but with one shared pair. The
// same noise tensor is used by all three so the errors are comparable.
DataComparisonReport run_data_tensor_comparison(
    const std::string& path, Index r, double eps1, double eps2,
    std::uint64_t master_seed, NoiseMode noise_mode = NoiseMode::kReal);

}  // namespace sketchlab
