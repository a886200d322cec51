#pragma once

#include "sketchlab/rng.hpp"
#include "sketchlab/types.hpp"

namespace sketchlab {

// Thin SVD A = U diag(s) V^* with k = min(m, n) columns kept.
struct SvdResult {
  DenseMatrix u;                // m x k, orthonormal columns
  RealVector singular_values;   // length k, nonincreasing, nonnegative
  DenseMatrix vt;               // k x n, orthonormal rows (V^*)
};

struct QrResult {
  DenseMatrix q;  // m x k, orthonormal columns
  DenseMatrix r;  // k x k, upper triangular, real nonnegative diagonal
};

// Thin SVD. Throws NumericalError on non-finite input or if the underlying
// iteration fails to converge.
SvdResult svd(const DenseMatrix& a);

// Full SVD: u is m x m and vt is n x n (both unitary); singular_values keeps
// length min(m, n). For callers needing complete orthonormal bases.
SvdResult svd_full(const DenseMatrix& a);

// Singular values only (nonincreasing). Cheaper than svd() when the factors
// are not needed, e.g. for rank checks inside Monte Carlo loops.
RealVector singular_values(const DenseMatrix& a);

// Thin QR of an m x k matrix, m >= k. The factorization is normalized so
// that diag(R) is real and nonnegative; a zero column yields a zero R entry
// and some deterministic orthonormal completion in Q (for a 1x1 zero input,
// Q = [1], R = [0]).
QrResult qr(const DenseMatrix& a);

// Moore-Penrose pseudo-inverse via SVD. Singular values at or below
// rel_tol * sigma_max are treated as zero. The zero matrix maps to the zero
// matrix of transposed shape.
DenseMatrix pseudo_inverse(const DenseMatrix& a, double rel_tol = 1e-12);

// Smallest singular value exceeding rel_tol * sigma_max.
// Throws std::domain_error for an all-zero (or empty) matrix.
double sigma_min_nonzero(const DenseMatrix& a, double rel_tol = 1e-12);

// k-th largest singular value, 1-based; 0 when k exceeds min(m, n), so a
// rank-k matrix reports sigma_{k+1} = 0 even at full storage rank.
double sigma_k(const DenseMatrix& a, Index k);

// Largest singular value (0 for an empty matrix).
double spectral_norm(const DenseMatrix& a);

// Number of singular values exceeding rel_tol * sigma_max.
Index numerical_rank(const DenseMatrix& a, double rel_tol = 1e-12);

// Exact inverse of a square matrix through its SVD. Throws NumericalError
// when the matrix is numerically singular (sigma_min <= rel_tol * sigma_max).
DenseMatrix inverse(const DenseMatrix& a, double rel_tol = 1e-12);

// For an m x k matrix with linearly independent columns, an m x (m-k) matrix
// whose orthonormal columns span the orthogonal complement of the column
// space.
DenseMatrix orthonormal_complement(const DenseMatrix& a);

// Haar-distributed n x n unitary: QR of a standard complex Gaussian matrix
// with the R diagonal normalized to be real positive.
DenseMatrix sample_haar_unitary(Index n, const Seed& seed);

}  // namespace sketchlab
