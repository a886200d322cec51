#include "sketchlab/tproduct.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sketchlab/linalg.hpp"

namespace sketchlab {

namespace {

void require_nonempty(const Tensor3& a, const char* who) {
  if (a.empty()) throw ShapeError(std::string(who) + ": empty tensor");
}

// Coefficients of the unitary length-n3 DFT (sign = -1) or its inverse
// (sign = +1), as a row-major n3 x n3 table.
std::vector<Complex> dft_table(Index n3, int sign) {
  const double root = 1.0 / std::sqrt(static_cast<double>(n3));
  std::vector<Complex> f(static_cast<std::size_t>(n3 * n3));
  for (Index l = 0; l < n3; ++l) {
    for (Index k = 0; k < n3; ++k) {
      // Reduce l*k mod n3 first so large indices do not lose angle accuracy.
      const double angle =
          sign * 2.0 * std::numbers::pi * static_cast<double>((l * k) % n3) /
          static_cast<double>(n3);
      f[static_cast<std::size_t>(l * n3 + k)] = std::polar(root, angle);
    }
  }
  return f;
}

Tensor3 mode3_transform(const Tensor3& a, int sign) {
  const Index n3 = a.n3();
  if (n3 <= 1) return a;  // the unitary DFT of a length-1 tube is the identity
  const std::vector<Complex> f = dft_table(n3, sign);
  std::vector<DenseMatrix> out;
  out.reserve(static_cast<std::size_t>(n3));
  for (Index l = 0; l < n3; ++l) {
    DenseMatrix acc = f[static_cast<std::size_t>(l * n3)] * a.slice(0);
    for (Index k = 1; k < n3; ++k) {
      acc += f[static_cast<std::size_t>(l * n3 + k)] * a.slice(k);
    }
    out.push_back(std::move(acc));
  }
  return Tensor3(std::move(out));
}

void check_product_shapes(const Tensor3& a, const Tensor3& b,
                          const char* who) {
  require_nonempty(a, who);
  require_nonempty(b, who);
  if (a.n2() != b.n1()) {
    throw ShapeError(std::string(who) + ": inner dimensions differ (" +
                     std::to_string(a.n2()) + " vs " +
                     std::to_string(b.n1()) + ")");
  }
  if (a.n3() != b.n3()) {
    throw ShapeError(std::string(who) + ": n3 differs (" +
                     std::to_string(a.n3()) + " vs " +
                     std::to_string(b.n3()) + ")");
  }
}

}  // namespace

DenseMatrix unfold(const Tensor3& a) {
  require_nonempty(a, "unfold");
  DenseMatrix m(a.n1() * a.n3(), a.n2());
  for (Index k = 0; k < a.n3(); ++k) {
    m.middleRows(k * a.n1(), a.n1()) = a.slice(k);
  }
  return m;
}

Tensor3 fold(const DenseMatrix& m, Index n1, Index n2, Index n3) {
  if (n1 < 0 || n2 < 0 || n3 < 1 || m.rows() != n1 * n3 || m.cols() != n2) {
    throw ShapeError("fold: matrix is " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", expected " +
                     std::to_string(n1 * n3) + "x" + std::to_string(n2));
  }
  std::vector<DenseMatrix> slices;
  slices.reserve(static_cast<std::size_t>(n3));
  for (Index k = 0; k < n3; ++k) {
    slices.push_back(m.middleRows(k * n1, n1));
  }
  return Tensor3(std::move(slices));
}

DenseMatrix bcirc(const Tensor3& a) {
  require_nonempty(a, "bcirc");
  const Index n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
  DenseMatrix m(n1 * n3, n2 * n3);
  for (Index i = 0; i < n3; ++i) {
    for (Index j = 0; j < n3; ++j) {
      m.block(i * n1, j * n2, n1, n2) = a.slice(((i - j) % n3 + n3) % n3);
    }
  }
  return m;
}

Tensor3 conj_transpose(const Tensor3& a) {
  require_nonempty(a, "conj_transpose");
  const Index n3 = a.n3();
  std::vector<DenseMatrix> out;
  out.reserve(static_cast<std::size_t>(n3));
  out.push_back(a.slice(0).adjoint());
  for (Index k = 1; k < n3; ++k) {
    out.push_back(a.slice(n3 - k).adjoint());
  }
  return Tensor3(std::move(out));
}

Tensor3 identity_tensor(Index n, Index n3) {
  if (n < 0 || n3 < 1) throw ShapeError("identity_tensor: invalid dimensions");
  Tensor3 t = Tensor3::zero(n, n, n3);
  t.slice(0) = DenseMatrix::Identity(n, n);
  return t;
}

Tensor3 t_product_ref(const Tensor3& a, const Tensor3& b) {
  check_product_shapes(a, b, "t_product_ref");
  return fold(bcirc(a) * unfold(b), a.n1(), b.n2(), a.n3());
}

Tensor3 t_product_fft(const Tensor3& a, const Tensor3& b) {
  check_product_shapes(a, b, "t_product_fft");
  const Index n3 = a.n3();
  const Tensor3 ah = mode3_fft(a);
  const Tensor3 bh = mode3_fft(b);
  // With the unitary transform, frontal slices of the product satisfy
  // fft(a*b)_k = sqrt(n3) * fft(a)_k * fft(b)_k.
  const double root_n3 = std::sqrt(static_cast<double>(n3));
  std::vector<DenseMatrix> ch;
  ch.reserve(static_cast<std::size_t>(n3));
  for (Index k = 0; k < n3; ++k) {
    ch.push_back(root_n3 * (ah.slice(k) * bh.slice(k)));
  }
  return mode3_ifft(Tensor3(std::move(ch)));
}

Tensor3 mode3_fft(const Tensor3& a) { return mode3_transform(a, -1); }

Tensor3 mode3_ifft(const Tensor3& a) { return mode3_transform(a, +1); }

TSVDFactors t_svd(const Tensor3& m) {
  require_nonempty(m, "t_svd");
  const Index n1 = m.n1(), n2 = m.n2(), n3 = m.n3();
  const Index kmin = std::min(n1, n2);
  const double root_n3 = std::sqrt(static_cast<double>(n3));
  const Tensor3 mh = mode3_fft(m);
  std::vector<DenseMatrix> uh, sh, vh;
  uh.reserve(static_cast<std::size_t>(n3));
  sh.reserve(static_cast<std::size_t>(n3));
  vh.reserve(static_cast<std::size_t>(n3));
  for (Index k = 0; k < n3; ++k) {
    SvdResult f = svd_full(mh.slice(k));
    DenseMatrix sigma = DenseMatrix::Zero(n1, n2);
    for (Index i = 0; i < kmin; ++i) sigma(i, i) = f.singular_values(i);
    // Scaling the unitary slices by 1/sqrt(n3) makes u and v unitary as
    // tensors while keeping the Fourier slices of s equal to the plain
    // slicewise singular values.
    uh.push_back(f.u / root_n3);
    sh.push_back(std::move(sigma));
    vh.push_back(f.vt.adjoint() / root_n3);
  }
  return TSVDFactors{mode3_ifft(Tensor3(std::move(uh))),
                     mode3_ifft(Tensor3(std::move(sh))),
                     mode3_ifft(Tensor3(std::move(vh)))};
}

Index tubal_rank(const Tensor3& m, double rel_tol) {
  if (m.empty() || std::min(m.n1(), m.n2()) == 0) return 0;
  const Index kmin = std::min(m.n1(), m.n2());
  const Tensor3 mh = mode3_fft(m);
  RealVector tube_sq = RealVector::Zero(kmin);
  for (Index k = 0; k < m.n3(); ++k) {
    const RealVector s = singular_values(mh.slice(k));
    tube_sq += s.cwiseProduct(s);
  }
  // Tube norms are nonincreasing (each slice's values are), so tube 1 leads.
  const double lead = std::sqrt(tube_sq(0));
  if (lead <= 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < kmin; ++i) {
    if (std::sqrt(tube_sq(i)) > rel_tol * lead) ++rank;
  }
  return rank;
}

TruncatedTSVD truncate_tsvd(const Tensor3& m, Index k) {
  require_nonempty(m, "truncate_tsvd");
  const Index kmin = std::min(m.n1(), m.n2());
  if (k < 0 || k > kmin) {
    throw ShapeError("truncate_tsvd: k = " + std::to_string(k) +
                     " outside [0, " + std::to_string(kmin) + "]");
  }
  const Tensor3 mh = mode3_fft(m);
  std::vector<DenseMatrix> ah;
  ah.reserve(static_cast<std::size_t>(m.n3()));
  double tail = 0.0;
  for (Index j = 0; j < m.n3(); ++j) {
    SvdResult f = svd(mh.slice(j));
    for (Index i = k; i < kmin; ++i) {
      tail += f.singular_values(i) * f.singular_values(i);
    }
    const Eigen::VectorXcd kept = f.singular_values.head(k).cast<Complex>();
    ah.push_back(f.u.leftCols(k) * kept.asDiagonal() * f.vt.topRows(k));
  }
  return TruncatedTSVD{mode3_ifft(Tensor3(std::move(ah))), tail};
}

double tensor_frobenius(const Tensor3& m) {
  double sq = 0.0;
  for (Index k = 0; k < m.n3(); ++k) sq += m.slice(k).squaredNorm();
  return std::sqrt(sq);
}

}  // namespace sketchlab
