#include "sketchlab/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace sketchlab {

namespace {

void require_finite(const DenseMatrix& a, const char* who) {
  if (!a.allFinite()) {
    throw NumericalError(std::string(who) + ": non-finite entries");
  }
}

Eigen::BDCSVD<DenseMatrix> run_svd(const DenseMatrix& a, unsigned options) {
  Eigen::BDCSVD<DenseMatrix> dec(a, options);
  if (dec.info() != Eigen::Success) {
    throw NumericalError("svd: iteration failed to converge");
  }
  return dec;
}

}  // namespace

SvdResult svd(const DenseMatrix& a) {
  require_finite(a, "svd");
  const Index k = std::min(a.rows(), a.cols());
  if (k == 0) {
    return SvdResult{DenseMatrix(a.rows(), 0), RealVector(0),
                     DenseMatrix(0, a.cols())};
  }
  auto dec = run_svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return SvdResult{dec.matrixU(), dec.singularValues(),
                   dec.matrixV().adjoint()};
}

SvdResult svd_full(const DenseMatrix& a) {
  require_finite(a, "svd_full");
  if (std::min(a.rows(), a.cols()) == 0) {
    return SvdResult{DenseMatrix::Identity(a.rows(), a.rows()), RealVector(0),
                     DenseMatrix::Identity(a.cols(), a.cols())};
  }
  auto dec = run_svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return SvdResult{dec.matrixU(), dec.singularValues(),
                   dec.matrixV().adjoint()};
}

RealVector singular_values(const DenseMatrix& a) {
  require_finite(a, "singular_values");
  if (std::min(a.rows(), a.cols()) == 0) return RealVector(0);
  return run_svd(a, 0).singularValues();
}

QrResult qr(const DenseMatrix& a) {
  if (a.rows() < a.cols()) {
    throw ShapeError("qr: need rows >= cols, got " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()));
  }
  require_finite(a, "qr");
  const Index m = a.rows(), k = a.cols();
  Eigen::HouseholderQR<DenseMatrix> dec(a);
  DenseMatrix q = dec.householderQ() * DenseMatrix::Identity(m, k);
  DenseMatrix r = dec.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  // Normalize column phases so diag(R) is real nonnegative; zero diagonal
  // entries (zero columns) keep phase 1.
  for (Index j = 0; j < k; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) {
      const Complex phase = d / std::abs(d);
      q.col(j) *= phase;
      r.row(j) *= std::conj(phase);
      r(j, j) = std::abs(d);  // clear the rounding residue in Im
    }
  }
  return QrResult{std::move(q), std::move(r)};
}

DenseMatrix pseudo_inverse(const DenseMatrix& a, double rel_tol) {
  if (rel_tol <= 0.0) {
    throw ValidationError("pseudo_inverse: rel_tol must be positive");
  }
  const SvdResult f = svd(a);
  if (f.singular_values.size() == 0) return DenseMatrix::Zero(a.cols(), a.rows());
  const double cutoff = rel_tol * f.singular_values(0);
  RealVector inv = f.singular_values;
  for (Index i = 0; i < inv.size(); ++i) {
    inv(i) = f.singular_values(i) > cutoff ? 1.0 / f.singular_values(i) : 0.0;
  }
  return f.vt.adjoint() * inv.asDiagonal() * f.u.adjoint();
}

double sigma_min_nonzero(const DenseMatrix& a, double rel_tol) {
  const RealVector s = singular_values(a);
  if (s.size() == 0 || s(0) <= 0.0) {
    throw std::domain_error("sigma_min_nonzero: all-zero matrix");
  }
  const double cutoff = rel_tol * s(0);
  double smallest = s(0);
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) smallest = s(i);
  }
  return smallest;
}

double sigma_k(const DenseMatrix& a, Index k) {
  if (k < 1) throw ShapeError("sigma_k: k must be >= 1");
  const RealVector s = singular_values(a);
  return k <= s.size() ? s(k - 1) : 0.0;
}

double spectral_norm(const DenseMatrix& a) {
  const RealVector s = singular_values(a);
  return s.size() == 0 ? 0.0 : s(0);
}

Index numerical_rank(const DenseMatrix& a, double rel_tol) {
  const RealVector s = singular_values(a);
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  const double cutoff = rel_tol * s(0);
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  return rank;
}

DenseMatrix inverse(const DenseMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) {
    throw ShapeError("inverse: matrix must be square");
  }
  const SvdResult f = svd(a);
  const Index n = a.rows();
  if (n == 0) return a;
  const double smax = f.singular_values(0);
  const double smin = f.singular_values(n - 1);
  if (smin <= rel_tol * smax) {
    throw NumericalError("inverse: matrix is numerically singular");
  }
  RealVector inv = f.singular_values.cwiseInverse();
  return f.vt.adjoint() * inv.asDiagonal() * f.u.adjoint();
}

DenseMatrix orthonormal_complement(const DenseMatrix& a) {
  const Index m = a.rows(), k = a.cols();
  if (k > m) throw ShapeError("orthonormal_complement: more columns than rows");
  require_finite(a, "orthonormal_complement");
  Eigen::HouseholderQR<DenseMatrix> dec(a);
  DenseMatrix full = dec.householderQ() * DenseMatrix::Identity(m, m);
  return full.rightCols(m - k);
}

DenseMatrix sample_haar_unitary(Index n, const Seed& seed) {
  if (n <= 0) throw ShapeError("sample_haar_unitary: n must be positive");
  return qr(sample_complex_gaussian(n, n, seed)).q;
}

}  // namespace sketchlab
