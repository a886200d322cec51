#pragma once

#include <vector>

#include "sketchlab/matrix_sketch.hpp"
#include "sketchlab/tensor3.hpp"
#include "sketchlab/types.hpp"

namespace sketchlab {

// Tensor double-sketch model
//   Y  = S * X0 + Z,    Yt = St * X0^H + Zt   (t-products),
// where the sketching tensors are S (resp. St) embedded as frontal slice 1
// with zero slices after. z / z_tilde may be default-constructed (empty)
// to mean exactly zero noise.
struct TensorSketchModel {
  Tensor3 x0;           // n1 x n2 x n3 ground truth
  DenseMatrix s;        // r x n1
  DenseMatrix s_tilde;  // r x n2
  Tensor3 z;            // r x n2 x n3 or empty
  Tensor3 z_tilde;      // r x n1 x n3 or empty
};

struct TensorSketchPair {
  Tensor3 y;        // r x n2 x n3
  Tensor3 y_tilde;  // r x n1 x n3
};

// The sketching matrix as a tensor: slice 1 holds the matrix, slices 2..n3
// are zero.
Tensor3 embed_sketch(const DenseMatrix& s, Index n3);

TensorSketchPair make_tensor_sketches(const TensorSketchModel& model);

struct TensorRecoveryResult {
  Tensor3 x;
  // Per Fourier slice: did the transformed y_tilde slice have full rank r
  // (the recovery corollary's almost-sure hypothesis)? Reported, never
  // enforced.
  std::vector<bool> slice_full_rank;
  bool all_slices_full_rank = false;
};

// Recovery in the Fourier domain: transform both sketches along mode 3, run
// the matrix recovery slice by slice, transform the assembled result back.
//
// Under the unitary mode-3 DFT every transformed slice of y obeys
//   fft(y)_k = S * fft(x0)_k + fft(z)_k,
// because sqrt(n3) * fft(embed_sketch(S, n3))_k = S for every k. The
// effective per-slice sketch passed to the matrix recovery is therefore the
// original S itself, independent of the transform's normalization.
TensorRecoveryResult recover_tensor_detailed(const Tensor3& y,
                                             const Tensor3& y_tilde,
                                             const DenseMatrix& s,
                                             double rel_tol = 1e-12);

Tensor3 recover_tensor(const Tensor3& y, const Tensor3& y_tilde,
                       const DenseMatrix& s, double rel_tol = 1e-12);

}  // namespace sketchlab
