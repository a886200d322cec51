#pragma once

#include <string>
#include <vector>

#include "sketchlab/types.hpp"

namespace sketchlab {

// Parameter bundle for the closed-form error-bound evaluators. r_low plays
// the role of the true rank for the robust bounds and of the truncation rank
// for the approximation bounds; sigma_tail carries sigma_{r_low+1}(X0) for
// the matrix approximation bound and the tail Frobenius norm |E|_F for the
// tensor one. n3 is 1 for the matrix bounds.
struct BoundInput {
  Index n1 = 0;
  Index n2 = 0;
  Index n3 = 1;
  Index r = 0;
  Index r_low = 0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double epsilon = 0.0;
  double z_norm = 0.0;
  double z_tilde_norm = 0.0;
  double sigma_tail = 0.0;
};

struct BoundTerm {
  std::string name;
  double value;
};

// Every evaluator fills `value` with the printed formula evaluated at the
// inputs whenever that arithmetic is finite (NaN otherwise) and separately
// reports through `valid`/`reason` whether the statement's hypotheses hold.
// Hypothesis-violating inputs still get the arithmetic value: downstream
// consumers compare measured errors against it and surface the flag.
struct BoundOutput {
  double value = 0.0;
  double probability_floor = 0.0;
  bool valid = false;
  std::string reason;            // violated hypotheses; empty when valid
  std::vector<BoundTerm> terms;  // additive breakdown, sums to value
  std::string note;              // extra metadata, e.g. printed-text caveats
};

// Recovery error bound for r_low < r < n1 (Frobenius or spectral norm):
//   sqrt(r(n1-r)) |Zt| / (sqrt(d1) (sqrt(r)-sqrt(r0)-sqrt(log(1/d2))))
//   + sqrt(r) |Z| / sqrt(log(1/(1-eps))),
// with probability floor 1 - d1 - d2 - eps.
BoundOutput robust_bound(const BoundInput& in);

// Variant for r = r_low < n1:
//   r sqrt(n1-r) |Zt| / sqrt(d1 log(1/(1-d2))) + sqrt(r) |Z| / sqrt(log(1/(1-eps))).
BoundOutput robust_bound_r_equals_r0(const BoundInput& in);

// Variant for r = n1: sqrt(n1) |Z| / sqrt(log(1/(1-eps))), floor 1 - eps;
// z_tilde_norm has no effect.
BoundOutput robust_bound_r_equals_n1(const BoundInput& in);

// Spectral-norm approximation bound for a full-rank target truncated at
// r_low; sigma_tail = sigma_{r_low+1}(X0). Floor 1 - d1 - 3 d2 - eps.
BoundOutput lowrank_approx_bound(const BoundInput& in);

// Squared-Frobenius tensor recovery bound (slicewise union bound), floor
// 1 - (d1 + d2 + eps) n3.
BoundOutput tensor_robust_bound(const BoundInput& in);

// Squared-Frobenius tensor approximation bound; sigma_tail = |E|_F. The
// probability floor is reproduced exactly as printed, sign inconsistencies
// included; see the output's note field.
BoundOutput tensor_approx_bound(const BoundInput& in);

// Oblique projection P = V1 (V2p^H V1)^{-1} V2p^H for n x k inputs with
// orthonormal columns. Throws NumericalError when V2p^H V1 is singular.
DenseMatrix oblique_projection(const DenseMatrix& v1,
                               const DenseMatrix& v2_perp);

}  // namespace sketchlab
