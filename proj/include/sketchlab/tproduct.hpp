#pragma once

#include "sketchlab/tensor3.hpp"
#include "sketchlab/types.hpp"

namespace sketchlab {

// Frontal-slice stacking: slices laid on top of each other, n1*n3 x n2.
DenseMatrix unfold(const Tensor3& a);

// Inverse of unfold; m must be n1*n3 x n2.
Tensor3 fold(const DenseMatrix& m, Index n1, Index n2, Index n3);

// Block-circulant matrix (n1*n3 x n2*n3): block (i, j), 1-indexed, holds
// frontal slice ((i - j) mod n3) + 1.
DenseMatrix bcirc(const Tensor3& a);

// Conjugate-transpose every frontal slice, then reverse the order of slices
// 2..n3. Result is n2 x n1 x n3.
Tensor3 conj_transpose(const Tensor3& a);

// Identity element of the t-product: I_n as slice 1, zero slices after.
Tensor3 identity_tensor(Index n, Index n3);

// t-product by the definition, fold(bcirc(a) * unfold(b)). Quadratic in n3;
// kept as the reference oracle for the transform path.
Tensor3 t_product_ref(const Tensor3& a, const Tensor3& b);

// t-product through the mode-3 Fourier domain: transform, multiply matching
// frontal slices (scaled by sqrt(n3) to undo the unitary normalization),
// transform back.
Tensor3 t_product_fft(const Tensor3& a, const Tensor3& b);

// Unitary DFT along every tube a(i, j, :), and its exact inverse. Both
// preserve the Frobenius norm.
Tensor3 mode3_fft(const Tensor3& a);
Tensor3 mode3_ifft(const Tensor3& a);

// t-SVD factors m = u * s * v^H (t-products). u is n1 x n1 x n3 and
// v is n2 x n2 x n3, both unitary in the t-product sense; s is n1 x n2 x n3
// and f-diagonal, with every Fourier-domain slice real nonnegative
// nonincreasing diagonal.
struct TSVDFactors {
  Tensor3 u;
  Tensor3 s;
  Tensor3 v;
};

TSVDFactors t_svd(const Tensor3& m);

// Number of singular tubes with norm above rel_tol times the leading tube's
// norm; 0 for the zero tensor.
Index tubal_rank(const Tensor3& m, double rel_tol = 1e-12);

struct TruncatedTSVD {
  Tensor3 approx;      // best tubal-rank-k approximation
  double tail_energy;  // sum over discarded tubes of their squared norms,
                       // equal to |approx - m|_F^2
};

// Keep the k leading singular tubes, 0 <= k <= min(n1, n2).
TruncatedTSVD truncate_tsvd(const Tensor3& m, Index k);

// Entrywise root-sum-square.
double tensor_frobenius(const Tensor3& m);

}  // namespace sketchlab
