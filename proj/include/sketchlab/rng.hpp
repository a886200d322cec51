#pragma once

#include <cstdint>
#include <initializer_list>

#include "sketchlab/types.hpp"

namespace sketchlab {

// A (master, stream) pair fully determines every sample drawn from it,
// independent of thread schedule. Substreams come from derive().
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;
};

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Order-dependent hash of a small integer tuple. Used for substream labels.
std::uint64_t hash_u64(std::initializer_list<std::uint64_t> parts);

// Same master, stream replaced by a hash of (stream, a, b, c, d).
Seed derive(const Seed& base, std::uint64_t a, std::uint64_t b = 0,
            std::uint64_t c = 0, std::uint64_t d = 0);

// Counter-based generator: draw i is a pure function of (seed, i), so any
// subset of a sample sequence can be produced in any order or thread.
class CounterRng {
 public:
  explicit CounterRng(const Seed& seed);

  std::uint64_t bits(std::uint64_t counter) const {
    // SplitMix64 stream rooted at the key; draw i finalizes key + (i+1)*gamma.
    return mix64(key_ + (counter + 1) * 0x9E3779B97F4A7C15ull);
  }

  // Uniform on (0, 1]; strictly positive, safe as a log() argument.
  double uniform_pos(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 1.0) * 0x1p-53;
  }

  // Uniform on [0, 1).
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1p-53;
  }

 private:
  std::uint64_t key_;
};

// rows x cols matrix of i.i.d. standard complex Gaussian entries
// Z = X + iY with X, Y independent N(0, 1/2), so E|Z|^2 = 1.
// Entry (i, j) depends only on the seed and on i*cols + j.
DenseMatrix sample_complex_gaussian(Index rows, Index cols, const Seed& seed);

// rows x cols matrix of i.i.d. real N(0, 1) entries (imaginary parts zero).
DenseMatrix sample_real_gaussian(Index rows, Index cols, const Seed& seed);

}  // namespace sketchlab
