#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sketchlab {

using Complex = std::complex<double>;
using Index = Eigen::Index;

// Dense complex matrix. Row-major storage of std::complex<double> gives the
// interleaved (re, im) float64 layout shared with the on-disk tensor format.
using DenseMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using RealVector = Eigen::VectorXd;

// Matrix or tensor dimensions that do not fit an operation's contract.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not produce a usable result (SVD non-convergence,
// singular matrix where an inverse is required, and the like).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed binary or text input. Carries the byte offset of the defect.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::uint64_t byte_offset)
      : std::runtime_error(what + " (byte offset " +
                           std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::uint64_t byte_offset() const { return byte_offset_; }

 private:
  std::uint64_t byte_offset_;
};

// Filesystem failure distinct from malformed content.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An experiment or CLI specification violates its documented contract.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sketchlab
