#include "sketchlab/validators.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "sketchlab/linalg.hpp"
#include "sketchlab/parallel.hpp"

namespace sketchlab {

namespace {

// Stream tags keeping the three laws' sample streams disjoint under a shared
// base seed.
constexpr std::uint64_t kSquareLawTag = 0x53514c57;  // "SQLW"
constexpr std::uint64_t kGordonTag = 0x474f5244;     // "GORD"
constexpr std::uint64_t kHaarTag = 0x48414152;       // "HAAR"

void require_samples(std::size_t samples) {
  if (samples == 0) {
    throw ValidationError("validator: samples must be positive");
  }
}

void require_delta_grid(const std::vector<double>& grid) {
  for (double d : grid) {
    if (!(d > 0.0) || !(d <= 1.0)) {
      throw ValidationError("validator: delta must lie in (0, 1], got " +
                            std::to_string(d));
    }
  }
}

double one_sided_slack(double delta, std::size_t samples) {
  return 3.0 * std::sqrt(delta * (1.0 - delta) /
                         static_cast<double>(samples));
}

double frequency_at_least(const std::vector<double>& values,
                          double threshold) {
  std::size_t hits = 0;
  for (double v : values) {
    if (v >= threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(values.size());
}

}  // namespace

ValidationReport validate_square_gaussian_law(Index n,
                                              const std::vector<double>& eps_grid,
                                              std::size_t samples,
                                              const Seed& seed,
                                              std::size_t workers) {
  if (n < 1) {
    throw ShapeError("validate_square_gaussian_law: n must be positive");
  }
  require_samples(samples);
  for (double eps : eps_grid) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) {
      throw ValidationError(
          "validate_square_gaussian_law: epsilon must be finite and "
          "nonnegative, got " +
          std::to_string(eps));
    }
  }

  // One sigma_min draw per sample, shared by every grid point.
  std::vector<double> sig_min(samples);
  parallel_for(samples, workers, [&](std::size_t i) {
    const DenseMatrix a = sample_complex_gaussian(
        n, n, derive(seed, kSquareLawTag, static_cast<std::uint64_t>(i)));
    sig_min[i] = singular_values(a).minCoeff();
  });

  ValidationReport report;
  report.law = "square_gaussian_sigma_min";
  report.m = n;
  report.n = n;
  report.samples = samples;
  report.seed = seed;
  const double root_n = std::sqrt(static_cast<double>(n));
  for (double eps : eps_grid) {
    LemmaCheck check;
    check.detail = "P(sigma_min >= eps/sqrt(n)) vs exp(-eps^2), two-sided";
    check.param = eps;
    check.threshold = eps / root_n;
    const double p = std::exp(-eps * eps);
    check.expected = p;
    check.tolerance =
        3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)) + 0.005;
    check.empirical = frequency_at_least(sig_min, check.threshold);
    check.pass = std::abs(check.empirical - p) <= check.tolerance;
    report.all_pass = report.all_pass && check.pass;
    report.checks.push_back(std::move(check));
  }
  return report;
}

ValidationReport validate_gordon(Index m, Index n,
                                 const std::vector<double>& delta_grid,
                                 std::size_t samples, const Seed& seed,
                                 std::size_t workers) {
  if (m < 1 || n < 1) {
    throw ShapeError("validate_gordon: dimensions must be positive");
  }
  if (m <= n) {
    throw ShapeError("validate_gordon: requires m > n, got m=" +
                     std::to_string(m) + " n=" + std::to_string(n));
  }
  require_samples(samples);
  require_delta_grid(delta_grid);

  std::vector<double> sig_min(samples);
  std::vector<double> sig_max(samples);
  parallel_for(samples, workers, [&](std::size_t i) {
    const DenseMatrix a = sample_complex_gaussian(
        m, n, derive(seed, kGordonTag, static_cast<std::uint64_t>(i)));
    const RealVector sv = singular_values(a);
    sig_max[i] = sv.maxCoeff();
    sig_min[i] = sv.minCoeff();
  });

  ValidationReport report;
  report.law = "gordon_extreme_singular_values";
  report.m = m;
  report.n = n;
  report.samples = samples;
  report.seed = seed;
  const double root_m = std::sqrt(static_cast<double>(m));
  const double root_n = std::sqrt(static_cast<double>(n));
  for (double delta : delta_grid) {
    const double shift = std::sqrt(std::log(1.0 / delta));
    const double slack = one_sided_slack(delta, samples);

    LemmaCheck lower;
    lower.detail = "P(sigma_min >= sqrt(m)-sqrt(n)-sqrt(log(1/delta)))";
    lower.param = delta;
    lower.threshold = root_m - root_n - shift;
    lower.expected = 1.0 - delta;
    lower.tolerance = slack;
    lower.empirical = frequency_at_least(sig_min, lower.threshold);
    lower.pass = lower.empirical >= lower.expected - lower.tolerance;
    report.all_pass = report.all_pass && lower.pass;
    report.checks.push_back(std::move(lower));

    LemmaCheck upper;
    upper.detail = "P(sigma_max <= sqrt(m)+sqrt(n)+sqrt(log(1/delta)))";
    upper.param = delta;
    upper.threshold = root_m + root_n + shift;
    upper.expected = 1.0 - delta;
    upper.tolerance = slack;
    std::size_t hits = 0;
    for (double v : sig_max) {
      if (v <= upper.threshold) ++hits;
    }
    upper.empirical = static_cast<double>(hits) / static_cast<double>(samples);
    upper.pass = upper.empirical >= upper.expected - upper.tolerance;
    report.all_pass = report.all_pass && upper.pass;
    report.checks.push_back(std::move(upper));
  }
  return report;
}

ValidationReport validate_truncated_haar(Index n, Index r,
                                         const std::vector<double>& delta_grid,
                                         std::size_t samples, const Seed& seed,
                                         std::size_t workers) {
  if (n < 1) {
    throw ShapeError("validate_truncated_haar: n must be positive");
  }
  if (r < 0 || r >= n) {
    throw ShapeError("validate_truncated_haar: requires 0 <= r < n, got r=" +
                     std::to_string(r) + " n=" + std::to_string(n));
  }
  require_samples(samples);
  require_delta_grid(delta_grid);

  const Index corner = n - r;
  std::vector<double> sig_min(samples);
  parallel_for(samples, workers, [&](std::size_t i) {
    const DenseMatrix u = sample_haar_unitary(
        n, derive(seed, kHaarTag, static_cast<std::uint64_t>(i)));
    sig_min[i] = singular_values(u.topLeftCorner(corner, corner)).minCoeff();
  });

  ValidationReport report;
  report.law = "truncated_haar_corner_sigma_min";
  report.m = n;
  report.n = n;
  report.r = r;
  report.samples = samples;
  report.seed = seed;
  const double scale =
      r == 0 ? 0.0
             : 1.0 / std::sqrt(static_cast<double>(r) *
                               static_cast<double>(n - r));
  for (double delta : delta_grid) {
    LemmaCheck check;
    check.detail = "P(sigma_min(corner) >= sqrt(delta)/sqrt(r(n-r)))";
    check.param = delta;
    check.threshold = r == 0 ? 0.0 : std::sqrt(delta) * scale;
    check.expected = 1.0 - delta;
    check.tolerance = one_sided_slack(delta, samples);
    check.empirical = frequency_at_least(sig_min, check.threshold);
    check.pass = check.empirical >= check.expected - check.tolerance;
    report.all_pass = report.all_pass && check.pass;
    report.checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace sketchlab
