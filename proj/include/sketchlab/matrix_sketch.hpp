#pragma once

#include "sketchlab/linalg.hpp"
#include "sketchlab/types.hpp"

namespace sketchlab {

// Noisy double-sketch model
//   Y  = S X0 + Z,          S  is r x n1,  Y  is r x n2,
//   Yt = St X0^* + Zt,      St is r x n2,  Yt is r x n1.
// z / z_tilde may be left empty (0x0) to mean exactly zero noise.
struct SketchModel {
  DenseMatrix x0;       // n1 x n2 ground truth
  DenseMatrix s;        // r x n1
  DenseMatrix s_tilde;  // r x n2
  DenseMatrix z;        // r x n2 or empty
  DenseMatrix z_tilde;  // r x n1 or empty
};

struct SketchPair {
  DenseMatrix y;        // r x n2
  DenseMatrix y_tilde;  // r x n1
};

SketchPair make_sketches(const SketchModel& model);

// Direct pseudo-inverse formula X = Yt^* (S Yt^*)^+ Y.
DenseMatrix recover_naive(const DenseMatrix& y, const DenseMatrix& y_tilde,
                          const DenseMatrix& s, double rel_tol = 1e-12);

// QR-stabilized path: factor Yt^* = QR and return Q (S Q)^+ Y. Requires
// r <= n1 so the thin QR exists; callers with r > n1 use recover_naive.
DenseMatrix recover_qr(const DenseMatrix& y, const DenseMatrix& y_tilde,
                       const DenseMatrix& s, double rel_tol = 1e-12);

// Factored form of the QR path. The recovered matrix is q * w, and single
// entries can be read off as inner products without materializing it.
struct RecoveredFactors {
  DenseMatrix q;  // n1 x r
  DenseMatrix w;  // r x n2, equal to (S Q)^+ Y
  // True when y_tilde had full numerical rank r (the recovery theorem's
  // almost-sure hypothesis); reported, never enforced.
  bool y_tilde_full_rank = false;

  Complex entry(Index i, Index j) const { return q.row(i) * w.col(j); }
  DenseMatrix materialize() const { return q * w; }
};

RecoveredFactors recover_qr_factored(const DenseMatrix& y,
                                     const DenseMatrix& y_tilde,
                                     const DenseMatrix& s,
                                     double rel_tol = 1e-12);

// Default path: QR-stabilized whenever it applies (r <= n1), the naive
// formula otherwise. Carries the rank flag either way.
struct RecoveryResult {
  DenseMatrix x;
  bool y_tilde_full_rank = false;
};

RecoveryResult recover_auto(const DenseMatrix& y, const DenseMatrix& y_tilde,
                            const DenseMatrix& s, double rel_tol = 1e-12);

// Noiseless reference output X0 St^* (S X0 St^*)^+ S X0.
DenseMatrix noiseless_output(const DenseMatrix& x0, const DenseMatrix& s,
                             const DenseMatrix& s_tilde);

enum class MatrixNorm { kFrobenius, kSpectral };

double recovery_error(const DenseMatrix& x, const DenseMatrix& x0,
                      MatrixNorm norm = MatrixNorm::kFrobenius);

}  // namespace sketchlab
