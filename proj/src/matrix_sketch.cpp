#include "sketchlab/matrix_sketch.hpp"

#include <string>

namespace sketchlab {

namespace {

std::string dims(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

bool is_empty(const DenseMatrix& m) { return m.size() == 0; }

void check_model(const SketchModel& m) {
  const Index n1 = m.x0.rows(), n2 = m.x0.cols(), r = m.s.rows();
  if (m.s.cols() != n1) {
    throw ShapeError("make_sketches: s is " + dims(m.s) + ", expected r x " +
                     std::to_string(n1));
  }
  if (m.s_tilde.rows() != r || m.s_tilde.cols() != n2) {
    throw ShapeError("make_sketches: s_tilde is " + dims(m.s_tilde) +
                     ", expected " + std::to_string(r) + "x" +
                     std::to_string(n2));
  }
  if (!is_empty(m.z) && (m.z.rows() != r || m.z.cols() != n2)) {
    throw ShapeError("make_sketches: z is " + dims(m.z) + ", expected " +
                     std::to_string(r) + "x" + std::to_string(n2));
  }
  if (!is_empty(m.z_tilde) && (m.z_tilde.rows() != r || m.z_tilde.cols() != n1)) {
    throw ShapeError("make_sketches: z_tilde is " + dims(m.z_tilde) +
                     ", expected " + std::to_string(r) + "x" +
                     std::to_string(n1));
  }
}

void check_recovery_shapes(const DenseMatrix& y, const DenseMatrix& y_tilde,
                           const DenseMatrix& s, const char* who) {
  if (y.rows() != y_tilde.rows() || y.rows() != s.rows()) {
    throw ShapeError(std::string(who) + ": y, y_tilde, s must share r rows (" +
                     dims(y) + ", " + dims(y_tilde) + ", " + dims(s) + ")");
  }
  if (s.cols() != y_tilde.cols()) {
    throw ShapeError(std::string(who) + ": s has " + std::to_string(s.cols()) +
                     " cols but y_tilde has " + std::to_string(y_tilde.cols()));
  }
}

}  // namespace

SketchPair make_sketches(const SketchModel& model) {
  check_model(model);
  SketchPair p;
  p.y = model.s * model.x0;
  if (!is_empty(model.z)) p.y += model.z;
  p.y_tilde = model.s_tilde * model.x0.adjoint();
  if (!is_empty(model.z_tilde)) p.y_tilde += model.z_tilde;
  return p;
}

DenseMatrix recover_naive(const DenseMatrix& y, const DenseMatrix& y_tilde,
                          const DenseMatrix& s, double rel_tol) {
  check_recovery_shapes(y, y_tilde, s, "recover_naive");
  const DenseMatrix yt_adj = y_tilde.adjoint();            // n1 x r
  return yt_adj * pseudo_inverse(s * yt_adj, rel_tol) * y;  // n1 x n2
}

RecoveredFactors recover_qr_factored(const DenseMatrix& y,
                                     const DenseMatrix& y_tilde,
                                     const DenseMatrix& s, double rel_tol) {
  check_recovery_shapes(y, y_tilde, s, "recover_qr");
  const Index r = y_tilde.rows(), n1 = y_tilde.cols();
  if (r > n1) {
    throw ShapeError("recover_qr: r = " + std::to_string(r) + " exceeds n1 = " +
                     std::to_string(n1) + "; use recover_naive");
  }
  RecoveredFactors out;
  out.q = qr(y_tilde.adjoint()).q;                      // n1 x r
  out.w = pseudo_inverse(s * out.q, rel_tol) * y;       // r x n2
  out.y_tilde_full_rank = numerical_rank(y_tilde, rel_tol) == r;
  return out;
}

DenseMatrix recover_qr(const DenseMatrix& y, const DenseMatrix& y_tilde,
                       const DenseMatrix& s, double rel_tol) {
  return recover_qr_factored(y, y_tilde, s, rel_tol).materialize();
}

RecoveryResult recover_auto(const DenseMatrix& y, const DenseMatrix& y_tilde,
                            const DenseMatrix& s, double rel_tol) {
  RecoveryResult out;
  if (y_tilde.rows() <= y_tilde.cols()) {
    RecoveredFactors f = recover_qr_factored(y, y_tilde, s, rel_tol);
    out.x = f.materialize();
    out.y_tilde_full_rank = f.y_tilde_full_rank;
  } else {
    check_recovery_shapes(y, y_tilde, s, "recover_auto");
    out.x = recover_naive(y, y_tilde, s, rel_tol);
    out.y_tilde_full_rank =
        numerical_rank(y_tilde, rel_tol) == std::min(y_tilde.rows(), y_tilde.cols());
  }
  return out;
}

DenseMatrix noiseless_output(const DenseMatrix& x0, const DenseMatrix& s,
                             const DenseMatrix& s_tilde) {
  if (s.cols() != x0.rows()) {
    throw ShapeError("noiseless_output: s is " + dims(s) + " but x0 has " +
                     std::to_string(x0.rows()) + " rows");
  }
  if (s_tilde.cols() != x0.cols() || s_tilde.rows() != s.rows()) {
    throw ShapeError("noiseless_output: s_tilde is " + dims(s_tilde) +
                     ", expected " + std::to_string(s.rows()) + "x" +
                     std::to_string(x0.cols()));
  }
  const DenseMatrix right = s * x0;                     // r x n2
  const DenseMatrix core = x0 * s_tilde.adjoint();      // n1 x r
  return core * pseudo_inverse(s * core) * right;
}

double recovery_error(const DenseMatrix& x, const DenseMatrix& x0,
                      MatrixNorm norm) {
  if (x.rows() != x0.rows() || x.cols() != x0.cols()) {
    throw ShapeError("recovery_error: shapes differ (" + dims(x) + " vs " +
                     dims(x0) + ")");
  }
  const DenseMatrix diff = x - x0;
  switch (norm) {
    case MatrixNorm::kFrobenius:
      return diff.norm();
    case MatrixNorm::kSpectral:
      return spectral_norm(diff);
  }
  throw ValidationError("recovery_error: unknown norm");
}

}  // namespace sketchlab
