#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "bwm/consistency.hpp"
#include "bwm/epsilon.hpp"
#include "bwm/pcs.hpp"

namespace bwm {

template <typename Scalar>
struct AnalyticalSolution {
  Vector<Scalar> weights;
  Scalar sigma = Scalar(0);
  Scalar epsilon_star = Scalar(0);
  Scalar eta = Scalar(0);
  Pivot pivot;
  Scalar ci = Scalar(0);
  std::optional<Scalar> cr;
};

/// Maximum absolute deviation of a normalized weight vector:
/// max{|w_b - a_bi w_i|, |w_i - a_iw w_w|, |w_b - a_bw w_w| : i in D}.
template <typename Scalar>
Scalar objective_value(const Pcs<Scalar>& pcs, const Vector<Scalar>& weights) {
  using std::abs;
  if (weights.size() != pcs.n()) {
    throw Error(ErrorCode::NotNormalized, "weight vector length does not match the PCS");
  }
  if ((weights.array() < Scalar(0)).any() || abs(weights.sum() - Scalar(1)) > Scalar(1e-9)) {
    throw Error(ErrorCode::NotNormalized, "weights must be nonnegative and sum to 1");
  }
  const Index b = pcs.best();
  const Index w = pcs.worst();
  Scalar dev = abs(weights(b) - pcs.a_bw() * weights(w));
  for (Index i : pcs.intermediate()) {
    dev = std::max(dev, abs(weights(b) - pcs.a_best(i) * weights(i)));
    dev = std::max(dev, abs(weights(i) - pcs.a_worst(i) * weights(w)));
  }
  return dev;
}

/// Numerator of the best-side ratio bound on non-pivot weights, in units
/// of w_w: a_bw (BestSide), a_bw + 2 eta (WorstSide),
/// a_bi0 a_i0w + (a_bi0 + 2) eta (Mixed).
template <typename Scalar>
Scalar ratio_bound_numerator(const Pcs<Scalar>& pcs, const Pivot& pivot, Scalar eta) {
  switch (pivot.kind) {
    case CaseKind::BestSide: return pcs.a_bw();
    case CaseKind::WorstSide: return pcs.a_bw() + Scalar(2) * eta;
    case CaseKind::Mixed: {
      const Scalar ab = pcs.a_best(pivot.first);
      return ab * pcs.a_worst(pivot.first) + (ab + Scalar(2)) * eta;
    }
    default: return pcs.a_bw();
  }
}

/// Scaled weight (w_i / w_w) of a non-pivot intermediate criterion:
/// min{a_iw + eta, ratio_bound_numerator / a_bi}.
template <typename Scalar>
Scalar free_weight_term(const Pcs<Scalar>& pcs, const Pivot& pivot, Scalar eta, Index i) {
  return std::min(pcs.a_worst(i) + eta, ratio_bound_numerator(pcs, pivot, eta) / pcs.a_best(i));
}

template <typename Scalar>
struct ClosedForm {
  Vector<Scalar> weights;
  Scalar sigma;
  Scalar epsilon_star;
};

/// Evaluates the closed-form optimum for the given pivot and eta. Callers
/// normally take both from compute_epsilons; any attaining pivot yields the
/// same weights.
template <typename Scalar>
ClosedForm<Scalar> closed_form(const Pcs<Scalar>& pcs, const Pivot& pivot, Scalar eta) {
  const Index n = pcs.n();
  const Index b = pcs.best();
  const Index w = pcs.worst();
  Vector<Scalar> scaled(n);  // w_i / w_w

  switch (pivot.kind) {
    case CaseKind::Consistent:
      scaled = pcs.others_to_worst();
      eta = Scalar(0);
      break;
    case CaseKind::Degenerate:
      scaled(b) = pcs.a_bw();
      scaled(w) = Scalar(1);
      eta = Scalar(0);
      break;
    case CaseKind::BestSide:
    case CaseKind::WorstSide:
    case CaseKind::Mixed: {
      const Index p = pivot.first;
      scaled(w) = Scalar(1);
      for (Index i : pcs.intermediate()) {
        if (!pivot.involves(i)) scaled(i) = free_weight_term(pcs, pivot, eta, i);
      }
      if (pivot.kind == CaseKind::BestSide) {
        scaled(b) = pcs.a_bw() - eta;
        scaled(p) = pcs.a_worst(p) + eta;
      } else if (pivot.kind == CaseKind::WorstSide) {
        scaled(b) = pcs.a_bw() + eta;
        scaled(p) = pcs.a_worst(p) - eta;
      } else {
        const Scalar ab = pcs.a_best(p);
        scaled(b) = ab * pcs.a_worst(p) + (ab + Scalar(1)) * eta;
        scaled(p) = pcs.a_worst(p) + eta;
        scaled(pivot.second) = pcs.a_worst(pivot.second) - eta;
      }
      break;
    }
  }

  const Scalar sigma = scaled.sum();
  return {scaled / sigma, sigma, eta / sigma};
}

/// Optimal weights of the linear minimax model in closed form, with CI/CR.
template <typename Scalar>
AnalyticalSolution<Scalar> solve_analytical(const Pcs<Scalar>& pcs, const EpsilonTable<Scalar>& table) {
  ClosedForm<Scalar> cf = closed_form(pcs, table.pivot, table.eta);
  AnalyticalSolution<Scalar> sol;
  sol.weights = std::move(cf.weights);
  sol.sigma = cf.sigma;
  sol.epsilon_star = cf.epsilon_star;
  sol.eta = table.eta;
  sol.pivot = table.pivot;
  sol.ci = pcs.n() >= 3 ? consistency_index(pcs.n(), pcs.a_bw()) : Scalar(0);
  sol.cr = consistency_ratio(sol.epsilon_star, sol.ci);
  return sol;
}

template <typename Scalar>
AnalyticalSolution<Scalar> solve_analytical(const Pcs<Scalar>& pcs) {
  return solve_analytical(pcs, compute_epsilons(pcs));
}

}  // namespace bwm
