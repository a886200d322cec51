#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "sketchlab/rng.hpp"
#include "sketchlab/tproduct.hpp"

using namespace sketchlab;

namespace {

Tensor3 random_tensor(Index n1, Index n2, Index n3, std::uint64_t stream) {
  return fold(sample_complex_gaussian(n1 * n3, n2, Seed{77, stream}), n1, n2, n3);
}

double rel_gap(const Tensor3& a, const Tensor3& b) {
  const double scale = std::max(tensor_frobenius(a), tensor_frobenius(b));
  const double gap = tensor_frobenius(subtract(a, b));
  return scale == 0.0 ? gap : gap / scale;
}

// Squared norms of the diagonal singular tubes, read off in the Fourier
// domain (the mode-3 transform is unitary, so tube energies are preserved).
std::vector<double> tube_energies(const Tensor3& s) {
  const Tensor3 hat = mode3_fft(s);
  const Index d = std::min(s.n1(), s.n2());
  std::vector<double> out(static_cast<std::size_t>(d), 0.0);
  for (Index j = 0; j < d; ++j)
    for (Index k = 0; k < s.n3(); ++k)
      out[static_cast<std::size_t>(j)] += std::norm(hat.slice(k)(j, j));
  return out;
}

}  // namespace

TEST_CASE("bcirc lays frontal slices out in circulant block order") {
  const Index n1 = 2, n2 = 3, n3 = 3;
  const Tensor3 a = random_tensor(n1, n2, n3, 1);
  const DenseMatrix c = bcirc(a);
  REQUIRE(c.rows() == n1 * n3);
  REQUIRE(c.cols() == n2 * n3);
  for (Index bi = 0; bi < n3; ++bi)
    for (Index bj = 0; bj < n3; ++bj) {
      const Index slice_idx = ((bi - bj) % n3 + n3) % n3;
      const DenseMatrix block = c.block(bi * n1, bj * n2, n1, n2);
      CHECK((block - a.slice(slice_idx)).norm() == 0.0);
    }

  const Tensor3 b = random_tensor(2, 2, 2, 2);
  const DenseMatrix c2 = bcirc(b);
  CHECK((c2.block(0, 0, 2, 2) - b.slice(0)).norm() == 0.0);
  CHECK((c2.block(0, 2, 2, 2) - b.slice(1)).norm() == 0.0);
  CHECK((c2.block(2, 0, 2, 2) - b.slice(1)).norm() == 0.0);
  CHECK((c2.block(2, 2, 2, 2) - b.slice(0)).norm() == 0.0);
}

TEST_CASE("fold and unfold are exact inverses") {
  const Tensor3 a = random_tensor(3, 4, 5, 3);
  const DenseMatrix u = unfold(a);
  REQUIRE(u.rows() == 15);
  REQUIRE(u.cols() == 4);
  for (Index k = 0; k < 5; ++k)
    CHECK((u.block(3 * k, 0, 3, 4) - a.slice(k)).norm() == 0.0);
  const Tensor3 back = fold(u, 3, 4, 5);
  CHECK(tensor_frobenius(subtract(back, a)) == 0.0);
  CHECK_THROWS_AS(fold(u, 4, 4, 5), ShapeError);
}

TEST_CASE("conjugate transpose is an involution and reverses products") {
  const Tensor3 a = random_tensor(3, 5, 4, 4);
  const Tensor3 at = conj_transpose(a);
  REQUIRE(at.n1() == 5);
  REQUIRE(at.n2() == 3);
  REQUIRE(at.n3() == 4);
  CHECK(tensor_frobenius(subtract(conj_transpose(at), a)) == 0.0);

  const Tensor3 b = random_tensor(5, 2, 4, 5);
  const Tensor3 lhs = conj_transpose(t_product_ref(a, b));
  const Tensor3 rhs = t_product_ref(conj_transpose(b), conj_transpose(a));
  CHECK(rel_gap(lhs, rhs) < 1e-12);
}

TEST_CASE("transform-domain product matches the block-circulant definition") {
  CounterRng rng(Seed{99, 0});
  std::uint64_t c = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const Index n1 = 1 + static_cast<Index>(rng.bits(c++) % 8);
    const Index n2 = 1 + static_cast<Index>(rng.bits(c++) % 8);
    const Index n3 = 1 + static_cast<Index>(rng.bits(c++) % 6);
    const Index inner = 1 + static_cast<Index>(rng.bits(c++) % 8);
    const Tensor3 a = random_tensor(n1, inner, n3, 100 + std::uint64_t(rep));
    const Tensor3 b = random_tensor(inner, n2, n3, 200 + std::uint64_t(rep));
    const Tensor3 ref = t_product_ref(a, b);
    const Tensor3 fast = t_product_fft(a, b);
    CAPTURE(n1);
    CAPTURE(n2);
    CAPTURE(n3);
    CAPTURE(inner);
    CHECK(rel_gap(ref, fast) < 1e-10);
  }
}

TEST_CASE("t-product rejects mismatched operands") {
  const Tensor3 a = random_tensor(3, 4, 2, 6);
  const Tensor3 b = random_tensor(5, 2, 2, 7);   // inner dimension 4 vs 5
  const Tensor3 c = random_tensor(4, 2, 3, 8);   // n3 2 vs 3
  CHECK_THROWS_AS(t_product_ref(a, b), ShapeError);
  CHECK_THROWS_AS(t_product_fft(a, b), ShapeError);
  CHECK_THROWS_AS(t_product_ref(a, c), ShapeError);
  CHECK_THROWS_AS(t_product_fft(a, c), ShapeError);
  CHECK_THROWS_AS(t_product_ref(Tensor3{}, a), ShapeError);
}

TEST_CASE("mode-3 transform is unitary") {
  const Tensor3 a = random_tensor(4, 3, 6, 9);
  const Tensor3 hat = mode3_fft(a);
  CHECK(std::abs(tensor_frobenius(hat) - tensor_frobenius(a)) <
        1e-12 * tensor_frobenius(a));
  CHECK(rel_gap(mode3_ifft(hat), a) < 1e-12);
  CHECK(rel_gap(mode3_fft(mode3_ifft(a)), a) < 1e-12);

  // A constant tube concentrates in the zero frequency with weight sqrt(n3).
  Tensor3 constant = Tensor3::zero(1, 1, 4);
  for (Index k = 0; k < 4; ++k) constant.slice(k)(0, 0) = Complex(2.5, -1.0);
  const Tensor3 chat = mode3_fft(constant);
  CHECK(std::abs(chat.slice(0)(0, 0) - 2.0 * Complex(2.5, -1.0)) < 1e-14);
  for (Index k = 1; k < 4; ++k) CHECK(std::abs(chat.slice(k)(0, 0)) < 1e-14);
}

TEST_CASE("t-product is associative and has the stacked identity as unit") {
  const Tensor3 a = random_tensor(3, 4, 3, 10);
  const Tensor3 b = random_tensor(4, 5, 3, 11);
  const Tensor3 c = random_tensor(5, 2, 3, 12);
  CHECK(rel_gap(t_product_fft(t_product_fft(a, b), c),
                t_product_fft(a, t_product_fft(b, c))) < 1e-9);

  const Tensor3 il = identity_tensor(3, 3);
  const Tensor3 ir = identity_tensor(4, 3);
  CHECK(rel_gap(t_product_fft(il, a), a) < 1e-12);
  CHECK(rel_gap(t_product_fft(a, ir), a) < 1e-12);
}

TEST_CASE("t-SVD factors reconstruct the tensor and meet their contract") {
  const Tensor3 m = random_tensor(6, 5, 4, 13);
  const TSVDFactors f = t_svd(m);
  REQUIRE(f.u.n1() == 6);
  REQUIRE(f.u.n2() == 6);
  REQUIRE(f.s.n1() == 6);
  REQUIRE(f.s.n2() == 5);
  REQUIRE(f.v.n1() == 5);
  REQUIRE(f.v.n2() == 5);

  const Tensor3 recon =
      t_product_fft(f.u, t_product_fft(f.s, conj_transpose(f.v)));
  CHECK(rel_gap(recon, m) < 1e-8);

  // Fourier-domain slices of s are real, nonnegative, nonincreasing diagonals.
  const Tensor3 shat = mode3_fft(f.s);
  for (Index k = 0; k < 4; ++k) {
    const DenseMatrix& sk = shat.slice(k);
    double prev = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < 6; ++i)
      for (Index j = 0; j < 5; ++j) {
        if (i != j) {
          CHECK(std::abs(sk(i, j)) < 1e-10);
        } else {
          CHECK(std::abs(sk(i, i).imag()) < 1e-10);
          CHECK(sk(i, i).real() >= -1e-12);
          CHECK(sk(i, i).real() <= prev + 1e-10);
          prev = sk(i, i).real();
        }
      }
  }

  const Tensor3 uhu = t_product_fft(conj_transpose(f.u), f.u);
  const Tensor3 vhv = t_product_fft(conj_transpose(f.v), f.v);
  CHECK(rel_gap(uhu, identity_tensor(6, 4)) < 1e-10);
  CHECK(rel_gap(vhv, identity_tensor(5, 4)) < 1e-10);
}

TEST_CASE("tubal rank counts the significant singular tubes") {
  CHECK(tubal_rank(Tensor3::zero(4, 5, 3)) == 0);
  CHECK(tubal_rank(identity_tensor(4, 3)) == 4);
  const Tensor3 left = random_tensor(20, 4, 3, 14);
  const Tensor3 right = random_tensor(4, 20, 3, 15);
  CHECK(tubal_rank(t_product_fft(left, right)) == 4);
}

TEST_CASE("truncation keeps the leading tubes and reports the tail energy") {
  const Tensor3 m = random_tensor(7, 6, 3, 16);
  const TSVDFactors f = t_svd(m);
  const std::vector<double> energies = tube_energies(f.s);

  const TruncatedTSVD full = truncate_tsvd(m, 6);
  CHECK(full.tail_energy < 1e-10);
  CHECK(rel_gap(full.approx, m) < 1e-8);

  const TruncatedTSVD none = truncate_tsvd(m, 0);
  CHECK(tensor_frobenius(none.approx) == 0.0);
  const double total = tensor_frobenius(m);
  CHECK(std::abs(none.tail_energy - total * total) < 1e-10 * total * total);

  for (Index k : {Index(2), Index(4)}) {
    const TruncatedTSVD cut = truncate_tsvd(m, k);
    double expected_tail = 0.0;
    for (std::size_t j = static_cast<std::size_t>(k); j < energies.size(); ++j)
      expected_tail += energies[j];
    CHECK(std::abs(cut.tail_energy - expected_tail) <
          1e-10 * std::max(1.0, expected_tail));
    const double gap = tensor_frobenius(subtract(cut.approx, m));
    CHECK(std::abs(gap * gap - cut.tail_energy) <
          1e-8 * std::max(1.0, cut.tail_energy));
    CHECK(tubal_rank(cut.approx) == k);
  }

  CHECK_THROWS_AS(truncate_tsvd(m, -1), ShapeError);
  CHECK_THROWS_AS(truncate_tsvd(m, 7), ShapeError);
}

TEST_CASE("rank-k truncation beats random rank-k competitors") {
  const Tensor3 m = random_tensor(8, 7, 3, 17);
  const Index k = 3;
  const double best = tensor_frobenius(subtract(truncate_tsvd(m, k).approx, m));
  for (std::uint64_t rep = 0; rep < 5; ++rep) {
    const Tensor3 competitor = t_product_fft(random_tensor(8, k, 3, 300 + rep),
                                             random_tensor(k, 7, 3, 400 + rep));
    const double err = tensor_frobenius(subtract(competitor, m));
    CHECK(best <= err + 1e-12);
  }
}

TEST_CASE("tensor Frobenius norm is the entrywise root-sum-square") {
  Tensor3 t = Tensor3::zero(1, 1, 1);
  t.slice(0)(0, 0) = Complex(3.0, 4.0);
  CHECK(tensor_frobenius(t) == doctest::Approx(5.0).epsilon(1e-15));

  const Tensor3 a = random_tensor(3, 4, 2, 18);
  double sq = 0.0;
  for (const DenseMatrix& s : a.slices()) sq += s.squaredNorm();
  CHECK(tensor_frobenius(a) == doctest::Approx(std::sqrt(sq)).epsilon(1e-14));
  CHECK(tensor_frobenius(Tensor3::zero(2, 2, 2)) == 0.0);
}
