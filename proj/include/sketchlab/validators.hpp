#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sketchlab/rng.hpp"
#include "sketchlab/types.hpp"

namespace sketchlab {

// One grid point of a Monte Carlo law check.
struct LemmaCheck {
  std::string detail;  // which side / which claim
  double param;        // the epsilon or delta of this grid point
  double threshold;    // singular-value threshold under test
  double expected;     // required (one-sided) or exact (two-sided) frequency
  double tolerance;    // statistical slack applied to `expected`
  double empirical;    // observed frequency
  bool pass;
};

struct ValidationReport {
  std::string law;
  Index m = 0;      // rows (or n for square laws)
  Index n = 0;      // cols
  Index r = 0;      // corner parameter of the Haar law, else 0
  std::size_t samples = 0;
  Seed seed;
  std::vector<LemmaCheck> checks;
  bool all_pass = true;
};

// Exact small-ball law for the smallest singular value of an n x n standard
// complex Gaussian matrix: P(sigma_min >= eps / sqrt(n)) = exp(-eps^2).
// Two-sided check per epsilon with tolerance
// 3 sqrt(p(1-p)/samples) + 0.005, p = exp(-eps^2).
ValidationReport validate_square_gaussian_law(Index n,
                                              const std::vector<double>& eps_grid,
                                              std::size_t samples,
                                              const Seed& seed,
                                              std::size_t workers = 0);

// Extreme singular values of an m x n standard complex Gaussian matrix,
// m > n: sigma_min >= sqrt(m)-sqrt(n)-sqrt(log(1/delta)) and
// sigma_max <= sqrt(m)+sqrt(n)+sqrt(log(1/delta)), each required to hold
// with empirical frequency >= 1 - delta - 3 sqrt(delta(1-delta)/samples).
ValidationReport validate_gordon(Index m, Index n,
                                 const std::vector<double>& delta_grid,
                                 std::size_t samples, const Seed& seed,
                                 std::size_t workers = 0);

// Smallest singular value of the upper-left (n-r) x (n-r) corner of a Haar
// unitary: sigma_min >= sqrt(delta) / sqrt(r(n-r)) with empirical frequency
// >= 1 - delta - 3 sqrt(delta(1-delta)/samples). r = 0 makes the corner the
// whole unitary (sigma_min = 1); its threshold is taken as 0 so the check is
// trivially satisfied.
ValidationReport validate_truncated_haar(Index n, Index r,
                                         const std::vector<double>& delta_grid,
                                         std::size_t samples, const Seed& seed,
                                         std::size_t workers = 0);

}  // namespace sketchlab
