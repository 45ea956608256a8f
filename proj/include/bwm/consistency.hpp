#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "bwm/pcs.hpp"

namespace bwm {

/// Supremum of eps* over all PCSs with n criteria and the given a_bw, under
/// Saaty-style bounds (1 <= a <= a_bw). For other scales the same closed form
/// is evaluated at the given a_bw.
template <typename Scalar>
Scalar consistency_index(Index n, Scalar a_bw) {
  if (n < 3) {
    throw Error(ErrorCode::UnsupportedN,
                "consistency index is defined for n >= 3, got n = " + std::to_string(n));
  }
  const Scalar a = a_bw;
  const Scalar nn = Scalar(n);
  const Scalar worst_side = a * (a - Scalar(1)) / (Scalar(2) * a * a + (Scalar(3) * nn - Scalar(4)) * a + Scalar(2));
  if (n == 3) return worst_side;
  const Scalar per_extra = std::min(a * a + a + Scalar(2), Scalar(1) + Scalar(3) * a);
  const Scalar mixed = (a * a - Scalar(1)) /
                       (Scalar(3) * a * a + Scalar(6) * a + Scalar(7) + (nn - Scalar(4)) * per_extra);
  return std::max(worst_side, mixed);
}

/// eps* / CI. Zero whenever eps* is (numerically) zero; empty when CI = 0
/// but eps* > 0.
template <typename Scalar>
std::optional<Scalar> consistency_ratio(Scalar epsilon_star, Scalar ci) {
  if (epsilon_star <= Scalar(kEtaTolerance)) return Scalar(0);
  if (ci <= Scalar(0)) return std::nullopt;
  return epsilon_star / ci;
}

/// The extremal PCSs attaining the CI bound, with c1 best and cn worst.
///   1: a_12 = a_2n = 1                      (BestSide pivot)
///   2: a_12 = a_2n = a_bw                   (WorstSide pivot)
///   3: a_12 = a_2n = 1, a_13 = a_3n = a_bw  (Mixed pivot, n >= 4)
/// Every other intermediate i has a_1i = a_bw, a_in = 1.
template <typename Scalar>
Pcs<Scalar> worst_case_pcs(Index n, Scalar a_bw, int variant, int scale_max = kSaatyScaleMax) {
  if (variant < 1 || variant > 3) {
    throw Error(ErrorCode::VariantUnavailable, "variant must be 1, 2 or 3");
  }
  const Index min_n = variant == 3 ? 4 : 3;
  if (n < min_n) {
    throw Error(ErrorCode::VariantUnavailable,
                "variant " + std::to_string(variant) + " needs n >= " + std::to_string(min_n));
  }
  Vector<Scalar> ab = Vector<Scalar>::Constant(n, a_bw);
  Vector<Scalar> aw = Vector<Scalar>::Ones(n);
  ab(0) = Scalar(1);
  aw(0) = a_bw;
  const Scalar second = variant == 2 ? a_bw : Scalar(1);
  ab(1) = second;
  aw(1) = second;
  if (variant == 3) {
    ab(2) = a_bw;
    aw(2) = a_bw;
  }
  return make_pcs<Scalar>(ab, aw, 0, n - 1, scale_max);
}

}  // namespace bwm
