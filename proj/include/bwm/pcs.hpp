#pragma once

#include <Eigen/Core>

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bwm/error.hpp"

namespace bwm {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Saaty's 1-9 scale.
inline constexpr int kSaatyScaleMax = 9;

/// Absolute tolerance for every comparison against products and eta.
inline constexpr double kEtaTolerance = 1e-12;

/// Unvalidated, PCS-shaped input. Indices are 0-based.
template <typename Scalar>
struct RawPcs {
  std::vector<std::string> criteria;
  Index best = 0;
  Index worst = 0;
  Vector<Scalar> best_to_others;
  Vector<Scalar> others_to_worst;
  int scale_max = kSaatyScaleMax;
};

struct Warning {
  std::string field;
  std::string message;
};

template <typename Scalar>
class Pcs;

template <typename Scalar>
struct ValidatedPcs;

template <typename Scalar>
ValidatedPcs<Scalar> validate_pcs(RawPcs<Scalar> raw);

/// A pairwise comparison system that satisfies every structural invariant.
/// Only `validate_pcs` constructs one.
template <typename Scalar>
class Pcs {
 public:
  [[nodiscard]] Index n() const noexcept { return best_to_others_.size(); }
  [[nodiscard]] Index best() const noexcept { return best_; }
  [[nodiscard]] Index worst() const noexcept { return worst_; }
  [[nodiscard]] int scale_max() const noexcept { return scale_max_; }
  [[nodiscard]] const std::vector<std::string>& criteria() const noexcept { return criteria_; }
  [[nodiscard]] const std::string& label(Index i) const { return criteria_[static_cast<std::size_t>(i)]; }

  /// a_{bi}
  [[nodiscard]] Scalar a_best(Index i) const { return best_to_others_(i); }
  /// a_{iw}
  [[nodiscard]] Scalar a_worst(Index i) const { return others_to_worst_(i); }
  /// a_{bw}
  [[nodiscard]] Scalar a_bw() const { return best_to_others_(worst_); }

  [[nodiscard]] const Vector<Scalar>& best_to_others() const noexcept { return best_to_others_; }
  [[nodiscard]] const Vector<Scalar>& others_to_worst() const noexcept { return others_to_worst_; }

  /// The set D of intermediate criteria, ascending.
  [[nodiscard]] std::vector<Index> intermediate() const {
    std::vector<Index> d;
    d.reserve(static_cast<std::size_t>(n()));
    for (Index i = 0; i < n(); ++i) {
      if (i != best_ && i != worst_) d.push_back(i);
    }
    return d;
  }

  [[nodiscard]] RawPcs<Scalar> raw() const {
    return {criteria_, best_, worst_, best_to_others_, others_to_worst_, scale_max_};
  }

  friend bool operator==(const Pcs& a, const Pcs& b) {
    return a.criteria_ == b.criteria_ && a.best_ == b.best_ && a.worst_ == b.worst_ &&
           a.scale_max_ == b.scale_max_ && a.best_to_others_ == b.best_to_others_ &&
           a.others_to_worst_ == b.others_to_worst_;
  }

 private:
  friend ValidatedPcs<Scalar> validate_pcs<Scalar>(RawPcs<Scalar> raw);
  Pcs() = default;

  std::vector<std::string> criteria_;
  Index best_ = 0;
  Index worst_ = 0;
  Vector<Scalar> best_to_others_;
  Vector<Scalar> others_to_worst_;
  int scale_max_ = kSaatyScaleMax;
};

template <typename Scalar>
struct ValidatedPcs {
  Pcs<Scalar> pcs;
  std::vector<Warning> warnings;
};

namespace detail {

inline std::string field_path(std::string_view vector, const std::string& label) {
  std::string path(vector);
  path += '.';
  path += label;
  return path;
}

template <typename Scalar>
std::string format_value(Scalar v) {
  std::ostringstream os;
  os << static_cast<double>(v);
  return os.str();
}

}  // namespace detail

/// Checks the structural PCS invariants. Throws bwm::Error on a hard
/// violation; ordinal-dominance violations are returned as warnings.
template <typename Scalar>
ValidatedPcs<Scalar> validate_pcs(RawPcs<Scalar> raw) {
  using detail::field_path;
  using detail::format_value;
  const Index n = raw.best_to_others.size();

  if (raw.criteria.empty()) {
    raw.criteria.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) raw.criteria.push_back("c" + std::to_string(i + 1));
  }
  if (n < 2) {
    throw Error(ErrorCode::TooFewCriteria,
                "a PCS needs at least 2 criteria, got " + std::to_string(n), {"criteria"});
  }
  if (raw.others_to_worst.size() != n || static_cast<Index>(raw.criteria.size()) != n) {
    throw Error(ErrorCode::SizeMismatch,
                "criteria, best_to_others and others_to_worst must have the same length");
  }
  if (raw.best < 0 || raw.best >= n) {
    throw Error(ErrorCode::IndexOutOfRange, "best index out of range", {"best"});
  }
  if (raw.worst < 0 || raw.worst >= n) {
    throw Error(ErrorCode::IndexOutOfRange, "worst index out of range", {"worst"});
  }
  if (raw.best == raw.worst) {
    throw Error(ErrorCode::BestEqualsWorst,
                "best and worst criterion are both '" + raw.criteria[static_cast<std::size_t>(raw.best)] + "'",
                {"best", "worst"});
  }
  {
    std::set<std::string> seen;
    for (const auto& label : raw.criteria) {
      if (!seen.insert(label).second) {
        throw Error(ErrorCode::DuplicateLabels, "duplicate criterion label '" + label + "'", {"criteria"});
      }
    }
  }
  if (raw.scale_max < 1) {
    throw Error(ErrorCode::OutOfScale, "scale_max must be at least 1", {"scale_max"});
  }

  const auto label = [&](Index i) -> const std::string& { return raw.criteria[static_cast<std::size_t>(i)]; };
  const auto check_scale = [&](const Vector<Scalar>& v, std::string_view name) {
    for (Index i = 0; i < n; ++i) {
      const Scalar x = v(i);
      if (!std::isfinite(static_cast<double>(x)) || x < Scalar(1) || x > Scalar(raw.scale_max)) {
        throw Error(ErrorCode::OutOfScale,
                    std::string(name) + "[" + label(i) + "] = " + format_value(x) +
                        " is outside [1, " + std::to_string(raw.scale_max) + "]",
                    {field_path(name, label(i))});
      }
    }
  };
  check_scale(raw.best_to_others, "best_to_others");
  check_scale(raw.others_to_worst, "others_to_worst");

  const Index b = raw.best;
  const Index w = raw.worst;
  if (raw.best_to_others(b) != Scalar(1)) {
    throw Error(ErrorCode::DiagonalNotOne, "best_to_others[" + label(b) + "] must be 1",
                {field_path("best_to_others", label(b))});
  }
  if (raw.others_to_worst(w) != Scalar(1)) {
    throw Error(ErrorCode::DiagonalNotOne, "others_to_worst[" + label(w) + "] must be 1",
                {field_path("others_to_worst", label(w))});
  }
  if (raw.best_to_others(w) != raw.others_to_worst(b)) {
    throw Error(ErrorCode::BwMismatch,
                "best_to_others[" + label(w) + "] = " + format_value(raw.best_to_others(w)) +
                    " differs from others_to_worst[" + label(b) + "] = " +
                    format_value(raw.others_to_worst(b)) + "; both encode a_bw",
                {field_path("best_to_others", label(w)), field_path("others_to_worst", label(b))});
  }

  std::vector<Warning> warnings;
  const Scalar a_bw = raw.best_to_others(w);
  for (Index i = 0; i < n; ++i) {
    if (raw.best_to_others(i) > a_bw) {
      warnings.push_back({field_path("best_to_others", label(i)),
                              "a_b(" + label(i) + ") = " + format_value(raw.best_to_others(i)) +
                                  " exceeds a_bw = " + format_value(a_bw)});
    }
    if (raw.others_to_worst(i) > a_bw) {
      warnings.push_back({field_path("others_to_worst", label(i)),
                              "a_w(" + label(i) + ") = " + format_value(raw.others_to_worst(i)) +
                                  " exceeds a_bw = " + format_value(a_bw)});
    }
  }

  Pcs<Scalar> pcs;
  pcs.criteria_ = std::move(raw.criteria);
  pcs.best_ = b;
  pcs.worst_ = w;
  pcs.best_to_others_ = std::move(raw.best_to_others);
  pcs.others_to_worst_ = std::move(raw.others_to_worst);
  pcs.scale_max_ = raw.scale_max;
  return {std::move(pcs), std::move(warnings)};
}

/// Builds and validates a PCS with labels c1..cn, discarding warnings.
template <typename Scalar>
Pcs<Scalar> make_pcs(const Vector<Scalar>& best_to_others, const Vector<Scalar>& others_to_worst,
                     Index best, Index worst, int scale_max = kSaatyScaleMax) {
  return validate_pcs<Scalar>({{}, best, worst, best_to_others, others_to_worst, scale_max}).pcs;
}

inline Pcs<double> make_pcs(std::initializer_list<double> best_to_others,
                            std::initializer_list<double> others_to_worst, Index best, Index worst,
                            int scale_max = kSaatyScaleMax) {
  Vector<double> ab(static_cast<Index>(best_to_others.size()));
  Vector<double> aw(static_cast<Index>(others_to_worst.size()));
  Index k = 0;
  for (double v : best_to_others) ab(k++) = v;
  k = 0;
  for (double v : others_to_worst) aw(k++) = v;
  return make_pcs<double>(ab, aw, best, worst, scale_max);
}

}  // namespace bwm
