#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bwm/pcs.hpp"

namespace bwm {

enum class CaseKind { Consistent, BestSide, WorstSide, Mixed, Degenerate };

constexpr std::string_view to_string(CaseKind kind) noexcept {
  switch (kind) {
    case CaseKind::Consistent: return "Consistent";
    case CaseKind::BestSide: return "BestSide";
    case CaseKind::WorstSide: return "WorstSide";
    case CaseKind::Mixed: return "Mixed";
    case CaseKind::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

/// Which deviation attains eta. `first` is i0 (BestSide, Mixed) or j0
/// (WorstSide); `second` is j0 for Mixed. Unused slots are -1.
struct Pivot {
  CaseKind kind = CaseKind::Consistent;
  Index first = -1;
  Index second = -1;

  static Pivot consistent() { return {CaseKind::Consistent, -1, -1}; }
  static Pivot degenerate() { return {CaseKind::Degenerate, -1, -1}; }
  static Pivot best_side(Index i0) { return {CaseKind::BestSide, i0, -1}; }
  static Pivot worst_side(Index j0) { return {CaseKind::WorstSide, j0, -1}; }
  static Pivot mixed(Index i0, Index j0) { return {CaseKind::Mixed, i0, j0}; }

  [[nodiscard]] bool has_pivot() const noexcept {
    return kind == CaseKind::BestSide || kind == CaseKind::WorstSide || kind == CaseKind::Mixed;
  }
  [[nodiscard]] bool involves(Index i) const noexcept { return i == first || i == second; }

  friend bool operator==(const Pivot&, const Pivot&) = default;
};

/// "BestSide(2)", "Mixed(2,3)", ... with 1-based criterion positions.
inline std::string to_string(const Pivot& p) {
  std::string s(to_string(p.kind));
  if (p.kind == CaseKind::BestSide || p.kind == CaseKind::WorstSide) {
    s += "(" + std::to_string(p.first + 1) + ")";
  } else if (p.kind == CaseKind::Mixed) {
    s += "(" + std::to_string(p.first + 1) + "," + std::to_string(p.second + 1) + ")";
  }
  return s;
}

template <typename Scalar>
struct SingleEpsilon {
  Index index;
  Scalar value;
};

template <typename Scalar>
struct PairEpsilon {
  Index i;  // in D1
  Index j;  // in D2
  Scalar value;
};

template <typename Scalar>
struct EpsilonTable {
  std::vector<Index> d1;  // a_bi * a_iw < a_bw
  std::vector<Index> d2;  // a_bi * a_iw > a_bw
  std::vector<Index> d3;  // a_bi * a_iw = a_bw
  std::vector<SingleEpsilon<Scalar>> eps_single;  // every i in D, ascending
  std::vector<PairEpsilon<Scalar>> eps_pair;      // D1 x D2, lexicographic
  Scalar eta = Scalar(0);
  Pivot pivot;
  /// Every pivot whose deviation lies within kEtaTolerance of eta, in
  /// tie-break order; `pivot` is the first entry.
  std::vector<Pivot> attaining;

  [[nodiscard]] Scalar single(Index i) const {
    for (const auto& e : eps_single)
      if (e.index == i) return e.value;
    return Scalar(0);
  }
};

/// |a_bi a_iw - a_bw| / (a_bi + 2)
template <typename Scalar>
Scalar epsilon_single(const Pcs<Scalar>& pcs, Index i) {
  using std::abs;
  return abs(pcs.a_best(i) * pcs.a_worst(i) - pcs.a_bw()) / (pcs.a_best(i) + Scalar(2));
}

/// |a_bi a_iw - a_bj a_jw| / (a_bi + a_bj + 2)
template <typename Scalar>
Scalar epsilon_pair(const Pcs<Scalar>& pcs, Index i, Index j) {
  using std::abs;
  return abs(pcs.a_best(i) * pcs.a_worst(i) - pcs.a_best(j) * pcs.a_worst(j)) /
         (pcs.a_best(i) + pcs.a_best(j) + Scalar(2));
}

/// Partitions D by the product test and computes eta. Pairs are only formed
/// across D1 x D2; all other pairs are dominated by their singles.
template <typename Scalar>
EpsilonTable<Scalar> compute_epsilons(const Pcs<Scalar>& pcs) {
  using std::abs;
  const Scalar tol(kEtaTolerance);
  EpsilonTable<Scalar> t;
  if (pcs.n() == 2) {
    t.pivot = Pivot::degenerate();
    t.attaining = {t.pivot};
    return t;
  }

  const Scalar a_bw = pcs.a_bw();
  for (Index i : pcs.intermediate()) {
    const Scalar diff = pcs.a_best(i) * pcs.a_worst(i) - a_bw;
    if (abs(diff) <= tol) {
      t.d3.push_back(i);
    } else if (diff < Scalar(0)) {
      t.d1.push_back(i);
    } else {
      t.d2.push_back(i);
    }
    t.eps_single.push_back({i, epsilon_single(pcs, i)});
  }
  for (Index i : t.d1)
    for (Index j : t.d2) t.eps_pair.push_back({i, j, epsilon_pair(pcs, i, j)});

  for (Index i : t.d1) t.eta = std::max(t.eta, t.single(i));
  for (Index j : t.d2) t.eta = std::max(t.eta, t.single(j));
  for (const auto& p : t.eps_pair) t.eta = std::max(t.eta, p.value);

  if (t.eta <= tol) {
    t.eta = Scalar(0);
    t.pivot = Pivot::consistent();
    t.attaining = {t.pivot};
    return t;
  }

  const auto attains = [&](Scalar v) { return abs(v - t.eta) <= tol; };
  for (Index i : t.d1)
    if (attains(t.single(i))) t.attaining.push_back(Pivot::best_side(i));
  for (Index j : t.d2)
    if (attains(t.single(j))) t.attaining.push_back(Pivot::worst_side(j));
  for (const auto& p : t.eps_pair)
    if (attains(p.value)) t.attaining.push_back(Pivot::mixed(p.i, p.j));
  t.pivot = t.attaining.front();
  return t;
}

}  // namespace bwm
