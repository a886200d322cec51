#include "sketchlab/tensor_sketch.hpp"

#include <string>
#include <utility>

#include "sketchlab/tproduct.hpp"

namespace sketchlab {

namespace {

void check_noise(const Tensor3& noise, Index r, Index cols, Index n3,
                 const char* name) {
  if (noise.empty()) return;
  if (noise.n1() != r || noise.n2() != cols || noise.n3() != n3) {
    throw ShapeError(std::string("make_tensor_sketches: ") + name + " is " +
                     std::to_string(noise.n1()) + "x" +
                     std::to_string(noise.n2()) + "x" +
                     std::to_string(noise.n3()) + ", expected " +
                     std::to_string(r) + "x" + std::to_string(cols) + "x" +
                     std::to_string(n3));
  }
}

}  // namespace

Tensor3 embed_sketch(const DenseMatrix& s, Index n3) {
  if (n3 < 1) throw ShapeError("embed_sketch: n3 must be >= 1");
  Tensor3 t = Tensor3::zero(s.rows(), s.cols(), n3);
  t.slice(0) = s;
  return t;
}

TensorSketchPair make_tensor_sketches(const TensorSketchModel& model) {
  const Index n1 = model.x0.n1(), n2 = model.x0.n2(), n3 = model.x0.n3();
  const Index r = model.s.rows();
  if (model.x0.empty()) {
    throw ShapeError("make_tensor_sketches: empty target tensor");
  }
  if (model.s.cols() != n1) {
    throw ShapeError("make_tensor_sketches: s has " +
                     std::to_string(model.s.cols()) + " cols, expected " +
                     std::to_string(n1));
  }
  if (model.s_tilde.rows() != r || model.s_tilde.cols() != n2) {
    throw ShapeError("make_tensor_sketches: s_tilde is " +
                     std::to_string(model.s_tilde.rows()) + "x" +
                     std::to_string(model.s_tilde.cols()) + ", expected " +
                     std::to_string(r) + "x" + std::to_string(n2));
  }
  check_noise(model.z, r, n2, n3, "z");
  check_noise(model.z_tilde, r, n1, n3, "z_tilde");

  TensorSketchPair pair;
  pair.y = t_product_fft(embed_sketch(model.s, n3), model.x0);
  if (!model.z.empty()) pair.y = add(pair.y, model.z);
  pair.y_tilde =
      t_product_fft(embed_sketch(model.s_tilde, n3), conj_transpose(model.x0));
  if (!model.z_tilde.empty()) pair.y_tilde = add(pair.y_tilde, model.z_tilde);
  return pair;
}

TensorRecoveryResult recover_tensor_detailed(const Tensor3& y,
                                             const Tensor3& y_tilde,
                                             const DenseMatrix& s,
                                             double rel_tol) {
  if (y.empty() || y_tilde.empty()) {
    throw ShapeError("recover_tensor: empty sketch tensor");
  }
  if (y.n3() != y_tilde.n3()) {
    throw ShapeError("recover_tensor: y has n3 = " + std::to_string(y.n3()) +
                     " but y_tilde has n3 = " + std::to_string(y_tilde.n3()));
  }
  const Index n3 = y.n3();
  const Tensor3 yh = mode3_fft(y);
  const Tensor3 yth = mode3_fft(y_tilde);

  TensorRecoveryResult out;
  out.slice_full_rank.resize(static_cast<std::size_t>(n3), false);
  out.all_slices_full_rank = true;
  std::vector<DenseMatrix> xh;
  xh.reserve(static_cast<std::size_t>(n3));
  for (Index k = 0; k < n3; ++k) {
    try {
      RecoveryResult slice = recover_auto(yh.slice(k), yth.slice(k), s, rel_tol);
      out.slice_full_rank[static_cast<std::size_t>(k)] =
          slice.y_tilde_full_rank;
      out.all_slices_full_rank &= slice.y_tilde_full_rank;
      xh.push_back(std::move(slice.x));
    } catch (const ShapeError& e) {
      throw ShapeError("recover_tensor: slice " + std::to_string(k + 1) +
                       ": " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError("recover_tensor: slice " + std::to_string(k + 1) +
                           ": " + e.what());
    }
  }
  out.x = mode3_ifft(Tensor3(std::move(xh)));
  return out;
}

Tensor3 recover_tensor(const Tensor3& y, const Tensor3& y_tilde,
                       const DenseMatrix& s, double rel_tol) {
  return recover_tensor_detailed(y, y_tilde, s, rel_tol).x;
}

}  // namespace sketchlab
