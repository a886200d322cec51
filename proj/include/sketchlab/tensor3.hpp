#pragma once

#include <utility>
#include <vector>

#include "sketchlab/types.hpp"

namespace sketchlab {

// Order-3 complex tensor stored as its list of frontal slices. Slice k of an
// n1 x n2 x n3 tensor is the n1 x n2 matrix of entries (:, :, k).
class Tensor3 {
 public:
  Tensor3() = default;

  explicit Tensor3(std::vector<DenseMatrix> slices)
      : slices_(std::move(slices)) {
    for (const DenseMatrix& s : slices_) {
      if (s.rows() != slices_.front().rows() ||
          s.cols() != slices_.front().cols()) {
        throw ShapeError("Tensor3: frontal slices must share one shape");
      }
    }
  }

  static Tensor3 zero(Index n1, Index n2, Index n3) {
    if (n1 < 0 || n2 < 0 || n3 < 1) {
      throw ShapeError("Tensor3::zero: invalid dimensions");
    }
    std::vector<DenseMatrix> s(static_cast<std::size_t>(n3),
                               DenseMatrix::Zero(n1, n2));
    return Tensor3(std::move(s));
  }

  Index n1() const { return slices_.empty() ? 0 : slices_.front().rows(); }
  Index n2() const { return slices_.empty() ? 0 : slices_.front().cols(); }
  Index n3() const { return static_cast<Index>(slices_.size()); }
  bool empty() const { return slices_.empty(); }

  DenseMatrix& slice(Index k) { return slices_.at(static_cast<std::size_t>(k)); }
  const DenseMatrix& slice(Index k) const {
    return slices_.at(static_cast<std::size_t>(k));
  }

  std::vector<DenseMatrix>& slices() { return slices_; }
  const std::vector<DenseMatrix>& slices() const { return slices_; }

 private:
  std::vector<DenseMatrix> slices_;
};

// Elementwise combinations; shapes must agree.
Tensor3 add(const Tensor3& a, const Tensor3& b);
Tensor3 subtract(const Tensor3& a, const Tensor3& b);
Tensor3 scale(const Tensor3& a, Complex factor);

}  // namespace sketchlab
