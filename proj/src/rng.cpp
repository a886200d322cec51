#include "sketchlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace sketchlab {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;  // 2^64 / golden ratio

// Box-Muller in polar form. The radius uses a (0,1] uniform so the log is
// finite; entry t consumes counters 2t and 2t+1.
Complex complex_gaussian_entry(const CounterRng& rng, std::uint64_t t) {
  const double u1 = rng.uniform_pos(2 * t);
  const double u2 = rng.uniform(2 * t + 1);
  const double radius = std::sqrt(-std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return Complex(radius * std::cos(angle), radius * std::sin(angle));
}

double real_gaussian_entry(const CounterRng& rng, std::uint64_t t) {
  const double u1 = rng.uniform_pos(2 * t);
  const double u2 = rng.uniform(2 * t + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

std::uint64_t hash_u64(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x243F6A8885A308D3ull;  // pi fractional bits
  for (std::uint64_t p : parts) {
    h = mix64(h ^ (p + kGamma + (h << 6) + (h >> 2)));
  }
  return h;
}

Seed derive(const Seed& base, std::uint64_t a, std::uint64_t b,
            std::uint64_t c, std::uint64_t d) {
  return Seed{base.master, hash_u64({base.stream, a, b, c, d})};
}

CounterRng::CounterRng(const Seed& seed)
    : key_(mix64(mix64(seed.master + kGamma) ^
                 mix64(seed.stream + 0x6A09E667F3BCC909ull))) {}

DenseMatrix sample_complex_gaussian(Index rows, Index cols, const Seed& seed) {
  if (rows < 0 || cols < 0) {
    throw ShapeError("sample_complex_gaussian: negative dimension");
  }
  const CounterRng rng(seed);
  DenseMatrix m(rows, cols);
  std::uint64_t t = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = complex_gaussian_entry(rng, t++);
    }
  }
  return m;
}

DenseMatrix sample_real_gaussian(Index rows, Index cols, const Seed& seed) {
  if (rows < 0 || cols < 0) {
    throw ShapeError("sample_real_gaussian: negative dimension");
  }
  const CounterRng rng(seed);
  DenseMatrix m(rows, cols);
  std::uint64_t t = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = Complex(real_gaussian_entry(rng, t++), 0.0);
    }
  }
  return m;
}

}  // namespace sketchlab
