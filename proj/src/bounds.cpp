#include "sketchlab/bounds.hpp"

#include <cmath>
#include <limits>

#include "sketchlab/linalg.hpp"

namespace sketchlab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double nsqrt(Index v) { return std::sqrt(static_cast<double>(v)); }

void check_structural(const BoundInput& in, const char* who) {
  if (in.n1 < 1 || in.n2 < 0 || in.n3 < 1 || in.r < 1 || in.r_low < 0) {
    throw ValidationError(std::string(who) +
                          ": need n1 >= 1, n3 >= 1, r >= 1, r_low >= 0");
  }
  if (!(in.z_norm >= 0.0) || !(in.z_tilde_norm >= 0.0) ||
      !(in.sigma_tail >= 0.0)) {
    throw ValidationError(std::string(who) +
                          ": norms and sigma_tail must be >= 0");
  }
  if (!std::isfinite(in.delta1) || !std::isfinite(in.delta2) ||
      !std::isfinite(in.epsilon)) {
    throw ValidationError(std::string(who) + ": probabilities must be finite");
  }
}

void append_reason(std::string& reason, const std::string& part) {
  if (!reason.empty()) reason += "; ";
  reason += part;
}

// Shared hypothesis checks. gap_rank is the rank appearing in the
// sqrt(r) - sqrt(gap_rank) margin; delta2_closed allows delta2 = 1.
std::string hypothesis_issues(const BoundInput& in, bool need_rank_gap,
                              bool delta2_closed) {
  std::string reason;
  if (in.delta1 <= 0.0) append_reason(reason, "delta1 must be > 0");
  if (in.epsilon <= 0.0 || in.epsilon >= 1.0) {
    append_reason(reason, "epsilon must lie in (0, 1)");
  }
  if (need_rank_gap) {
    if (!(in.r_low < in.r && in.r < in.n1)) {
      append_reason(reason, "need r_low < r < n1");
    }
    const double floor =
        std::exp(-std::pow(nsqrt(in.r) - nsqrt(in.r_low), 2.0));
    if (delta2_closed ? in.delta2 > 1.0 : in.delta2 >= 1.0) {
      append_reason(reason, delta2_closed ? "delta2 must be <= 1"
                                          : "delta2 must be < 1");
    }
    if (!(in.delta2 > floor)) {
      append_reason(reason,
                    "delta2 must exceed exp(-(sqrt(r)-sqrt(r_low))^2) = " +
                        std::to_string(floor));
    }
  }
  return reason;
}

double sum_terms(const std::vector<BoundTerm>& terms) {
  double total = 0.0;
  for (const BoundTerm& t : terms) {
    if (!std::isfinite(t.value)) return kNan;
    total += t.value;
  }
  return total;
}

}  // namespace

BoundOutput robust_bound(const BoundInput& in) {
  check_structural(in, "robust_bound");
  BoundOutput out;
  out.reason = hypothesis_issues(in, /*need_rank_gap=*/true,
                                 /*delta2_closed=*/false);
  out.valid = out.reason.empty();
  const double margin =
      nsqrt(in.r) - nsqrt(in.r_low) - std::sqrt(std::log(1.0 / in.delta2));
  out.terms = {
      {"z_tilde_term", std::sqrt(static_cast<double>(in.r * (in.n1 - in.r))) *
                           in.z_tilde_norm /
                           (std::sqrt(in.delta1) * margin)},
      {"z_term",
       nsqrt(in.r) * in.z_norm / std::sqrt(std::log(1.0 / (1.0 - in.epsilon)))},
  };
  out.value = sum_terms(out.terms);
  out.probability_floor = 1.0 - in.delta1 - in.delta2 - in.epsilon;
  return out;
}

BoundOutput robust_bound_r_equals_r0(const BoundInput& in) {
  check_structural(in, "robust_bound_r_equals_r0");
  BoundOutput out;
  out.reason = hypothesis_issues(in, /*need_rank_gap=*/false,
                                 /*delta2_closed=*/false);
  if (in.r != in.r_low) append_reason(out.reason, "variant requires r = r_low");
  if (!(in.r < in.n1)) append_reason(out.reason, "need r < n1");
  if (in.delta2 <= 0.0 || in.delta2 >= 1.0) {
    append_reason(out.reason, "delta2 must lie in (0, 1)");
  }
  out.valid = out.reason.empty();
  out.terms = {
      {"z_tilde_term",
       static_cast<double>(in.r) * nsqrt(in.n1 - in.r) * in.z_tilde_norm /
           std::sqrt(in.delta1 * std::log(1.0 / (1.0 - in.delta2)))},
      {"z_term",
       nsqrt(in.r) * in.z_norm / std::sqrt(std::log(1.0 / (1.0 - in.epsilon)))},
  };
  out.value = sum_terms(out.terms);
  out.probability_floor = 1.0 - in.delta1 - in.delta2 - in.epsilon;
  return out;
}

BoundOutput robust_bound_r_equals_n1(const BoundInput& in) {
  check_structural(in, "robust_bound_r_equals_n1");
  BoundOutput out;
  if (in.epsilon <= 0.0 || in.epsilon >= 1.0) {
    append_reason(out.reason, "epsilon must lie in (0, 1)");
  }
  if (in.r != in.n1) append_reason(out.reason, "variant requires r = n1");
  out.valid = out.reason.empty();
  out.terms = {
      {"z_term", nsqrt(in.n1) * in.z_norm /
                     std::sqrt(std::log(1.0 / (1.0 - in.epsilon)))},
  };
  out.value = sum_terms(out.terms);
  out.probability_floor = 1.0 - in.epsilon;
  out.note = "independent of z_tilde_norm";
  return out;
}

BoundOutput lowrank_approx_bound(const BoundInput& in) {
  check_structural(in, "lowrank_approx_bound");
  if (in.n2 < 1) throw ValidationError("lowrank_approx_bound: need n2 >= 1");
  BoundOutput out;
  out.reason = hypothesis_issues(in, /*need_rank_gap=*/true,
                                 /*delta2_closed=*/true);
  out.valid = out.reason.empty();
  const double log_d2 = std::log(1.0 / in.delta2);
  const double root_log_d2 = std::sqrt(log_d2);
  const double log_eps = std::log(1.0 / (1.0 - in.epsilon));
  const double margin = nsqrt(in.r) - nsqrt(in.r_low) - root_log_d2;
  const double cross = std::sqrt(static_cast<double>(in.r * (in.n1 - in.r)));
  const double t1 = cross * (nsqrt(in.r) + nsqrt(in.n2) + root_log_d2) /
                    (std::sqrt(in.delta1) * margin);
  const double t2 =
      nsqrt(in.r) * (nsqrt(in.r) + nsqrt(in.n1) + root_log_d2) /
      std::sqrt(log_eps);
  out.terms = {
      {"tail_term", in.sigma_tail * (t1 + t2 + 1.0)},
      {"z_tilde_term",
       cross * in.z_tilde_norm / (std::sqrt(in.delta1) * margin)},
      {"z_term", nsqrt(in.r) * in.z_norm / std::sqrt(log_eps)},
  };
  out.value = sum_terms(out.terms);
  out.probability_floor = 1.0 - in.delta1 - 3.0 * in.delta2 - in.epsilon;
  return out;
}

BoundOutput tensor_robust_bound(const BoundInput& in) {
  check_structural(in, "tensor_robust_bound");
  BoundOutput out;
  out.reason = hypothesis_issues(in, /*need_rank_gap=*/true,
                                 /*delta2_closed=*/false);
  out.valid = out.reason.empty();
  const double margin =
      nsqrt(in.r) - nsqrt(in.r_low) - std::sqrt(std::log(1.0 / in.delta2));
  out.terms = {
      {"z_tilde_term", 2.0 * static_cast<double>(in.r * (in.n1 - in.r)) *
                           in.z_tilde_norm * in.z_tilde_norm /
                           (in.delta1 * margin * margin)},
      {"z_term", 2.0 * static_cast<double>(in.r) * in.z_norm * in.z_norm /
                     std::log(1.0 / (1.0 - in.epsilon))},
  };
  out.value = sum_terms(out.terms);
  out.probability_floor =
      1.0 - (in.delta1 + in.delta2 + in.epsilon) * static_cast<double>(in.n3);
  out.note = "bound and input norms are squared Frobenius quantities";
  return out;
}

BoundOutput tensor_approx_bound(const BoundInput& in) {
  check_structural(in, "tensor_approx_bound");
  if (in.n2 < 1) throw ValidationError("tensor_approx_bound: need n2 >= 1");
  BoundOutput out;
  out.reason = hypothesis_issues(in, /*need_rank_gap=*/true,
                                 /*delta2_closed=*/true);
  out.valid = out.reason.empty();
  const double log_d2 = std::log(1.0 / in.delta2);
  const double root_log_d2 = std::sqrt(log_d2);
  const double log_eps = std::log(1.0 / (1.0 - in.epsilon));
  const double margin = nsqrt(in.r) - nsqrt(in.r_low) - root_log_d2;
  const double cross = std::sqrt(static_cast<double>(in.r * (in.n1 - in.r)));
  const double inner =
      4.0 * cross * (nsqrt(in.r) + nsqrt(in.n2) + root_log_d2) /
          (std::sqrt(in.delta1) * margin) +
      4.0 * nsqrt(in.r) * (nsqrt(in.r) + nsqrt(in.n1) + root_log_d2) /
          std::sqrt(log_eps) +
      1.0;
  out.terms = {
      {"tail_term", 2.0 * in.sigma_tail * in.sigma_tail * inner * inner},
      {"z_tilde_term", 8.0 * static_cast<double>(in.r * (in.n1 - in.r)) *
                           in.z_tilde_norm * in.z_tilde_norm /
                           (in.delta1 * margin * margin)},
      {"z_term", 8.0 * static_cast<double>(in.r) * in.z_norm * in.z_norm /
                     log_eps},
  };
  out.value = sum_terms(out.terms);
  out.probability_floor =
      1.0 - (in.delta1 - in.delta2 - in.epsilon) * static_cast<double>(in.n3) -
      2.0 * in.delta2;
  out.note =
      "bound and input norms are squared Frobenius quantities; the "
      "probability floor 1-(delta1-delta2-epsilon)*n3-2*delta2 is reproduced "
      "exactly as printed even though its signs conflict with the companion "
      "recovery bound's 1-(delta1+delta2+epsilon)*n3";
  return out;
}

DenseMatrix oblique_projection(const DenseMatrix& v1,
                               const DenseMatrix& v2_perp) {
  if (v1.rows() != v2_perp.rows() || v1.cols() != v2_perp.cols()) {
    throw ShapeError("oblique_projection: v1 and v2_perp must share shape");
  }
  if (v1.cols() > v1.rows()) {
    throw ShapeError("oblique_projection: more columns than rows");
  }
  if (v1.cols() == 0) {
    return DenseMatrix::Zero(v1.rows(), v1.rows());
  }
  const DenseMatrix gram = v2_perp.adjoint() * v1;  // k x k
  // Judge singularity against the scale of the inputs rather than of the
  // gram itself: for orthogonal subspaces the gram is pure rounding noise,
  // which a relative test on its own spectrum would happily invert.
  const double scale = singular_values(v1)(0) * singular_values(v2_perp)(0);
  const RealVector sv = singular_values(gram);
  if (sv(sv.size() - 1) <= 1e-12 * scale) {
    throw NumericalError(
        "oblique_projection: v2_perp^H v1 is numerically singular");
  }
  DenseMatrix gram_inv;
  try {
    gram_inv = inverse(gram);
  } catch (const NumericalError&) {
    throw NumericalError(
        "oblique_projection: v2_perp^H v1 is numerically singular");
  }
  return v1 * gram_inv * v2_perp.adjoint();
}

}  // namespace sketchlab
