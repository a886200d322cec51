#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sketchlab/rng.hpp"
#include "sketchlab/tensor_sketch.hpp"
#include "sketchlab/tproduct.hpp"

using namespace sketchlab;

namespace {

Tensor3 random_tensor(Index n1, Index n2, Index n3, std::uint64_t stream) {
  return fold(sample_complex_gaussian(n1 * n3, n2, Seed{88, stream}), n1, n2, n3);
}

Tensor3 low_tubal_rank(Index n1, Index n2, Index r0, Index n3,
                       std::uint64_t stream) {
  return t_product_fft(random_tensor(n1, r0, n3, stream),
                       random_tensor(r0, n2, n3, stream + 5000));
}

double rel_gap(const Tensor3& a, const Tensor3& b) {
  const double scale = std::max(tensor_frobenius(a), tensor_frobenius(b));
  const double gap = tensor_frobenius(subtract(a, b));
  return scale == 0.0 ? gap : gap / scale;
}

}  // namespace

TEST_CASE("embed_sketch puts the matrix in slice one and spreads it flat in Fourier") {
  const DenseMatrix s = sample_complex_gaussian(3, 5, Seed{1, 1});
  const Tensor3 t = embed_sketch(s, 4);
  REQUIRE(t.n1() == 3);
  REQUIRE(t.n2() == 5);
  REQUIRE(t.n3() == 4);
  CHECK((t.slice(0) - s).norm() == 0.0);
  for (Index k = 1; k < 4; ++k) CHECK(t.slice(k).norm() == 0.0);

  // The DFT of a delta at slice one is constant: every Fourier slice is
  // s / sqrt(n3), which is what makes the per-slice effective sketch equal s.
  const Tensor3 hat = mode3_fft(t);
  for (Index k = 0; k < 4; ++k)
    CHECK((hat.slice(k) - s / 2.0).norm() < 1e-13 * s.norm());

  CHECK_THROWS_AS(embed_sketch(s, 0), ShapeError);
}

TEST_CASE("tensor sketches obey the per-slice Fourier identity") {
  const Index n1 = 10, n2 = 8, n3 = 3, r = 4;
  TensorSketchModel m;
  m.x0 = random_tensor(n1, n2, n3, 11);
  m.s = sample_complex_gaussian(r, n1, Seed{2, 1});
  m.s_tilde = sample_complex_gaussian(r, n2, Seed{2, 2});
  m.z = scale(random_tensor(r, n2, n3, 12), Complex(0.05, 0.0));
  m.z_tilde = scale(random_tensor(r, n1, n3, 13), Complex(0.05, 0.0));
  const TensorSketchPair p = make_tensor_sketches(m);
  REQUIRE(p.y.n1() == r);
  REQUIRE(p.y.n2() == n2);
  REQUIRE(p.y.n3() == n3);
  REQUIRE(p.y_tilde.n1() == r);
  REQUIRE(p.y_tilde.n2() == n1);

  const Tensor3 yh = mode3_fft(p.y);
  const Tensor3 x0h = mode3_fft(m.x0);
  const Tensor3 zh = mode3_fft(m.z);
  const Tensor3 yth = mode3_fft(p.y_tilde);
  const Tensor3 x0th = mode3_fft(conj_transpose(m.x0));
  const Tensor3 zth = mode3_fft(m.z_tilde);
  for (Index k = 0; k < n3; ++k) {
    const DenseMatrix expect_y = m.s * x0h.slice(k) + zh.slice(k);
    CHECK((yh.slice(k) - expect_y).norm() < 1e-10 * expect_y.norm());
    const DenseMatrix expect_yt = m.s_tilde * x0th.slice(k) + zth.slice(k);
    CHECK((yth.slice(k) - expect_yt).norm() < 1e-10 * expect_yt.norm());
  }
}

TEST_CASE("a width-one tensor reduces to the matrix model") {
  for (std::uint64_t rep = 0; rep < 30; ++rep) {
    const Index n1 = 12, n2 = 9, r0 = 2, r = 5;
    TensorSketchModel tm;
    tm.x0 = low_tubal_rank(n1, n2, r0, 1, 100 + rep);
    tm.s = sample_complex_gaussian(r, n1, Seed{3, rep});
    tm.s_tilde = sample_complex_gaussian(r, n2, Seed{4, rep});
    tm.z = scale(random_tensor(r, n2, 1, 200 + rep), Complex(0.01, 0.0));
    tm.z_tilde = scale(random_tensor(r, n1, 1, 300 + rep), Complex(0.01, 0.0));

    SketchModel mm{tm.x0.slice(0), tm.s, tm.s_tilde, tm.z.slice(0),
                   tm.z_tilde.slice(0)};
    const TensorSketchPair tp = make_tensor_sketches(tm);
    const SketchPair mp = make_sketches(mm);
    CHECK((tp.y.slice(0) - mp.y).norm() < 1e-13 * mp.y.norm());
    CHECK((tp.y_tilde.slice(0) - mp.y_tilde).norm() <
          1e-13 * mp.y_tilde.norm());

    const TensorRecoveryResult tr =
        recover_tensor_detailed(tp.y, tp.y_tilde, tm.s);
    const RecoveryResult mr = recover_auto(mp.y, mp.y_tilde, mm.s);
    CHECK((tr.x.slice(0) - mr.x).norm() < 1e-10 * mr.x.norm());
    CHECK(tr.slice_full_rank.size() == 1);
    CHECK(tr.slice_full_rank[0] == mr.y_tilde_full_rank);
    CHECK(tr.all_slices_full_rank == mr.y_tilde_full_rank);
  }
}

TEST_CASE("noiseless tensor recovery is exact above the tubal rank") {
  const Index n = 20, r0 = 3, n3 = 4, r = 6;
  TensorSketchModel m;
  m.x0 = low_tubal_rank(n, n, r0, n3, 21);
  m.s = sample_complex_gaussian(r, n, Seed{5, 1});
  m.s_tilde = sample_complex_gaussian(r, n, Seed{5, 2});
  const TensorSketchPair p = make_tensor_sketches(m);
  const TensorRecoveryResult res = recover_tensor_detailed(p.y, p.y_tilde, m.s);
  CHECK(rel_gap(res.x, m.x0) < 1e-8);
  // Every Fourier slice of the second sketch has rank r0 < r: the flag must
  // report the deficiency while recovery stays exact.
  CHECK_FALSE(res.all_slices_full_rank);
  for (bool flag : res.slice_full_rank) CHECK_FALSE(flag);

  // A drop of noise restores full rank everywhere.
  TensorSketchModel noisy = m;
  noisy.z = scale(random_tensor(r, n, n3, 22), Complex(1e-3, 0.0));
  noisy.z_tilde = scale(random_tensor(r, n, n3, 23), Complex(1e-3, 0.0));
  const TensorSketchPair pn = make_tensor_sketches(noisy);
  const TensorRecoveryResult rn = recover_tensor_detailed(pn.y, pn.y_tilde, m.s);
  CHECK(rn.all_slices_full_rank);
  CHECK(rel_gap(rn.x, m.x0) < 1e-1);
}

TEST_CASE("tensor recovery equals slice-by-slice matrix recovery in Fourier") {
  const Index n1 = 14, n2 = 11, r0 = 2, n3 = 3, r = 5;
  TensorSketchModel m;
  m.x0 = low_tubal_rank(n1, n2, r0, n3, 31);
  m.s = sample_complex_gaussian(r, n1, Seed{6, 1});
  m.s_tilde = sample_complex_gaussian(r, n2, Seed{6, 2});
  m.z = scale(random_tensor(r, n2, n3, 32), Complex(0.02, 0.0));
  m.z_tilde = scale(random_tensor(r, n1, n3, 33), Complex(0.02, 0.0));
  const TensorSketchPair p = make_tensor_sketches(m);
  const Tensor3 x = recover_tensor(p.y, p.y_tilde, m.s);

  const Tensor3 yh = mode3_fft(p.y);
  const Tensor3 yth = mode3_fft(p.y_tilde);
  std::vector<DenseMatrix> xh_slices;
  for (Index k = 0; k < n3; ++k)
    xh_slices.push_back(recover_auto(yh.slice(k), yth.slice(k), m.s).x);
  const Tensor3 assembled = mode3_ifft(Tensor3(std::move(xh_slices)));
  CHECK(rel_gap(assembled, x) < 1e-10);

  // Parseval: the recovery error splits across Fourier slices.
  const Tensor3 xh = mode3_fft(x);
  const Tensor3 x0h = mode3_fft(m.x0);
  double slice_err_sq = 0.0;
  for (Index k = 0; k < n3; ++k)
    slice_err_sq += (xh.slice(k) - x0h.slice(k)).squaredNorm();
  const double total = tensor_frobenius(subtract(x, m.x0));
  CHECK(std::abs(slice_err_sq - total * total) <
        1e-9 * std::max(1.0, total * total));
}

TEST_CASE("real targets come back with negligible imaginary part") {
  const Index n = 16, r0 = 3, n3 = 4, r = 7;
  const Tensor3 a = fold(sample_real_gaussian(n * n3, r0, Seed{7, 1}), n, r0, n3);
  const Tensor3 b = fold(sample_real_gaussian(r0 * n3, n, Seed{7, 2}), r0, n, n3);
  const Tensor3 x0 = t_product_ref(a, b);  // stays exactly real
  for (const DenseMatrix& s : x0.slices()) CHECK(s.imag().norm() == 0.0);

  TensorSketchModel m;
  m.x0 = x0;
  m.s = sample_complex_gaussian(r, n, Seed{7, 3});
  m.s_tilde = sample_complex_gaussian(r, n, Seed{7, 4});
  const TensorSketchPair p = make_tensor_sketches(m);
  const Tensor3 x = recover_tensor(p.y, p.y_tilde, m.s);
  CHECK(rel_gap(x, x0) < 1e-8);
  double imag_sq = 0.0, total_sq = 0.0;
  for (const DenseMatrix& s : x.slices()) {
    imag_sq += s.imag().squaredNorm();
    total_sq += s.squaredNorm();
  }
  CHECK(std::sqrt(imag_sq) < 1e-10 * std::sqrt(total_sq));
}

TEST_CASE("tensor sketch shape mismatches are rejected") {
  TensorSketchModel good;
  good.x0 = random_tensor(6, 5, 2, 41);
  good.s = sample_complex_gaussian(3, 6, Seed{8, 1});
  good.s_tilde = sample_complex_gaussian(3, 5, Seed{8, 2});
  const TensorSketchPair p = make_tensor_sketches(good);

  TensorSketchModel bad = good;
  bad.x0 = Tensor3{};
  CHECK_THROWS_AS(make_tensor_sketches(bad), ShapeError);

  bad = good;
  bad.s = sample_complex_gaussian(3, 7, Seed{8, 3});
  CHECK_THROWS_AS(make_tensor_sketches(bad), ShapeError);

  bad = good;
  bad.s_tilde = sample_complex_gaussian(4, 5, Seed{8, 4});
  CHECK_THROWS_AS(make_tensor_sketches(bad), ShapeError);

  bad = good;
  bad.z = random_tensor(3, 5, 3, 42);  // n3 = 3 vs 2
  CHECK_THROWS_AS(make_tensor_sketches(bad), ShapeError);

  bad = good;
  bad.z_tilde = random_tensor(2, 6, 2, 43);  // r = 2 vs 3
  CHECK_THROWS_AS(make_tensor_sketches(bad), ShapeError);

  CHECK_THROWS_AS(recover_tensor(Tensor3{}, p.y_tilde, good.s), ShapeError);
  const Tensor3 yt_deep = random_tensor(3, 6, 3, 44);
  CHECK_THROWS_AS(recover_tensor(p.y, yt_deep, good.s), ShapeError);
  const DenseMatrix s_tall = sample_complex_gaussian(4, 6, Seed{8, 5});
  CHECK_THROWS_AS(recover_tensor(p.y, p.y_tilde, s_tall), ShapeError);
}
