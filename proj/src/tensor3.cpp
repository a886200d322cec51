#include "sketchlab/tensor3.hpp"

#include <string>

namespace sketchlab {

namespace {

void check_same_shape(const Tensor3& a, const Tensor3& b, const char* who) {
  if (a.n1() != b.n1() || a.n2() != b.n2() || a.n3() != b.n3()) {
    throw ShapeError(std::string(who) + ": tensor shapes differ (" +
                     std::to_string(a.n1()) + "x" + std::to_string(a.n2()) +
                     "x" + std::to_string(a.n3()) + " vs " +
                     std::to_string(b.n1()) + "x" + std::to_string(b.n2()) +
                     "x" + std::to_string(b.n3()) + ")");
  }
}

}  // namespace

Tensor3 add(const Tensor3& a, const Tensor3& b) {
  check_same_shape(a, b, "add");
  std::vector<DenseMatrix> out;
  out.reserve(a.slices().size());
  for (Index k = 0; k < a.n3(); ++k) out.push_back(a.slice(k) + b.slice(k));
  return Tensor3(std::move(out));
}

Tensor3 subtract(const Tensor3& a, const Tensor3& b) {
  check_same_shape(a, b, "subtract");
  std::vector<DenseMatrix> out;
  out.reserve(a.slices().size());
  for (Index k = 0; k < a.n3(); ++k) out.push_back(a.slice(k) - b.slice(k));
  return Tensor3(std::move(out));
}

Tensor3 scale(const Tensor3& a, Complex factor) {
  std::vector<DenseMatrix> out;
  out.reserve(a.slices().size());
  for (Index k = 0; k < a.n3(); ++k) out.push_back(factor * a.slice(k));
  return Tensor3(std::move(out));
}

}  // namespace sketchlab
