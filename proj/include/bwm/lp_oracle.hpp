#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <string_view>
#include <vector>

#include "bwm/pcs.hpp"

namespace bwm {

/// minimize objective' x  s.t.  a_ub x <= b_ub,  a_eq x = b_eq,  x >= 0.
template <typename Scalar>
struct LinearProgram {
  Index num_vars = 0;
  Vector<Scalar> objective;
  Matrix<Scalar> a_ub;
  Vector<Scalar> b_ub;
  Matrix<Scalar> a_eq;
  Vector<Scalar> b_eq;
};

enum class OracleStatus { Optimal, Infeasible, Unbounded, IterationLimit };

constexpr std::string_view to_string(OracleStatus s) noexcept {
  switch (s) {
    case OracleStatus::Optimal: return "Optimal";
    case OracleStatus::Infeasible: return "Infeasible";
    case OracleStatus::Unbounded: return "Unbounded";
    case OracleStatus::IterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

template <typename Scalar>
struct OracleResult {
  OracleStatus status = OracleStatus::IterationLimit;
  Scalar objective = std::numeric_limits<Scalar>::quiet_NaN();
  Vector<Scalar> solution;
  int iterations = 0;
};

struct SimplexOptions {
  int max_iterations = 10000;
  double pivot_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
};

/// The epsilon-form of the minimax model over x = (w_1..w_n, eps).
/// Row order: for each i in D ascending, +/-(w_b - a_bi w_i) - eps <= 0 then
/// +/-(w_i - a_iw w_w) - eps <= 0; the +/-(w_b - a_bw w_w) pair last.
template <typename Scalar>
LinearProgram<Scalar> build_lp(const Pcs<Scalar>& pcs) {
  const Index n = pcs.n();
  const Index b = pcs.best();
  const Index w = pcs.worst();
  const std::vector<Index> d = pcs.intermediate();
  const Index rows = 4 * static_cast<Index>(d.size()) + 2;

  LinearProgram<Scalar> lp;
  lp.num_vars = n + 1;
  lp.objective = Vector<Scalar>::Zero(n + 1);
  lp.objective(n) = Scalar(1);
  lp.a_ub = Matrix<Scalar>::Zero(rows, n + 1);
  lp.b_ub = Vector<Scalar>::Zero(rows);
  lp.a_eq = Matrix<Scalar>::Zero(1, n + 1);
  lp.a_eq.leftCols(n).setOnes();
  lp.b_eq = Vector<Scalar>::Ones(1);

  Index r = 0;
  const auto add_pair = [&](Index lhs, Index rhs, Scalar coef) {
    for (Scalar sign : {Scalar(1), Scalar(-1)}) {
      lp.a_ub(r, lhs) += sign;
      lp.a_ub(r, rhs) -= sign * coef;
      lp.a_ub(r, n) = Scalar(-1);
      ++r;
    }
  };
  for (Index i : d) {
    add_pair(b, i, pcs.a_best(i));
    add_pair(i, w, pcs.a_worst(i));
  }
  add_pair(b, w, pcs.a_bw());
  return lp;
}

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  Tableau(Index rows, Index cols) : t_(Matrix<Scalar>::Zero(rows + 1, cols + 1)), basis_(rows, -1) {}

  Matrix<Scalar>& data() { return t_; }
  std::vector<Index>& basis() { return basis_; }
  [[nodiscard]] Index rows() const { return t_.rows() - 1; }
  [[nodiscard]] Index rhs() const { return t_.cols() - 1; }
  auto objective() { return t_.row(t_.rows() - 1); }

  void pivot(Index r, Index c) {
    t_.row(r) /= t_(r, c);
    for (Index i = 0; i < t_.rows(); ++i) {
      if (i != r && t_(i, c) != Scalar(0)) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  /// Runs Bland-rule iterations over columns [0, allowed_cols).
  OracleStatus optimize(Index allowed_cols, const SimplexOptions& opt, int& iterations) {
    const Scalar tol(opt.pivot_tolerance);
    for (;;) {
      Index enter = -1;
      for (Index j = 0; j < allowed_cols; ++j) {
        if (t_(t_.rows() - 1, j) < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return OracleStatus::Optimal;
      if (iterations >= opt.max_iterations) return OracleStatus::IterationLimit;

      Index leave = -1;
      Scalar best_ratio = std::numeric_limits<Scalar>::infinity();
      for (Index i = 0; i < rows(); ++i) {
        const Scalar coef = t_(i, enter);
        if (coef <= tol) continue;
        const Scalar ratio = t_(i, rhs()) / coef;
        if (leave < 0 || ratio < best_ratio - tol) {
          leave = i;
          best_ratio = ratio;
          continue;
        }
        const bool tie = ratio <= best_ratio + tol &&
                         basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)];
        if (tie) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return OracleStatus::Unbounded;
      pivot(leave, enter);
      ++iterations;
    }
  }

 private:
  Matrix<Scalar> t_;
  std::vector<Index> basis_;
};

}  // namespace detail

/// Two-phase dense tableau simplex with Bland's anti-cycling rule.
template <typename Scalar>
OracleResult<Scalar> simplex_solve(const LinearProgram<Scalar>& lp, const SimplexOptions& opt = {}) {
  const Index nv = lp.num_vars;
  const Index m_ub = lp.a_ub.rows();
  const Index m_eq = lp.a_eq.rows();
  const Index m = m_ub + m_eq;

  Index n_art = m_eq;
  for (Index i = 0; i < m_ub; ++i)
    if (lp.b_ub(i) < Scalar(0)) ++n_art;

  // columns: [structural | slack | artificial | rhs]
  const Index slack0 = nv;
  const Index art0 = nv + m_ub;
  detail::Tableau<Scalar> tab(m, art0 + n_art);
  auto& t = tab.data();
  auto& basis = tab.basis();
  const Index rhs = tab.rhs();

  Index next_art = art0;
  for (Index i = 0; i < m; ++i) {
    const bool ub = i < m_ub;
    Scalar sign = Scalar(1);
    const Scalar b = ub ? lp.b_ub(i) : lp.b_eq(i - m_ub);
    if (b < Scalar(0)) sign = Scalar(-1);
    t.row(i).head(nv) = sign * (ub ? lp.a_ub.row(i) : lp.a_eq.row(i - m_ub));
    t(i, rhs) = sign * b;
    if (ub) t(i, slack0 + i) = sign;
    if (ub && sign > Scalar(0)) {
      basis[static_cast<std::size_t>(i)] = slack0 + i;
    } else {
      t(i, next_art) = Scalar(1);
      basis[static_cast<std::size_t>(i)] = next_art++;
    }
  }

  OracleResult<Scalar> result;
  int iterations = 0;

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    auto obj = tab.objective();
    obj.setZero();
    obj.segment(art0, n_art).setOnes();
    for (Index i = 0; i < m; ++i)
      if (basis[static_cast<std::size_t>(i)] >= art0) obj -= t.row(i);
    const OracleStatus s = tab.optimize(art0 + n_art, opt, iterations);
    result.iterations = iterations;
    if (s == OracleStatus::IterationLimit) {
      result.status = s;
      return result;
    }
    if (-tab.objective()(rhs) > Scalar(opt.feasibility_tolerance)) {
      result.status = OracleStatus::Infeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (Index i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] < art0) continue;
      for (Index j = 0; j < art0; ++j) {
        if (std::abs(t(i, j)) > Scalar(opt.pivot_tolerance)) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2 over structural and slack columns only.
  {
    auto obj = tab.objective();
    obj.setZero();
    obj.head(nv) = lp.objective.transpose();
    for (Index i = 0; i < m; ++i) {
      const Index bi = basis[static_cast<std::size_t>(i)];
      if (bi < nv && lp.objective(bi) != Scalar(0)) obj -= lp.objective(bi) * t.row(i);
    }
  }
  result.status = tab.optimize(art0, opt, iterations);
  result.iterations = iterations;
  if (result.status != OracleStatus::Optimal) return result;

  result.solution = Vector<Scalar>::Zero(nv);
  for (Index i = 0; i < m; ++i) {
    const Index bi = basis[static_cast<std::size_t>(i)];
    if (bi < nv) result.solution(bi) = t(i, rhs);
  }
  result.objective = lp.objective.dot(result.solution);
  return result;
}

/// Largest violation of any row of the program at x (0 when feasible).
template <typename Scalar>
Scalar max_violation(const LinearProgram<Scalar>& lp, const Vector<Scalar>& x) {
  Scalar v(0);
  if (lp.a_ub.rows() > 0) v = std::max(v, (lp.a_ub * x - lp.b_ub).maxCoeff());
  if (lp.a_eq.rows() > 0) v = std::max(v, (lp.a_eq * x - lp.b_eq).cwiseAbs().maxCoeff());
  v = std::max(v, -x.minCoeff());
  return v;
}

}  // namespace bwm
