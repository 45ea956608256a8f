#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bwm/epsilon.hpp"
#include "bwm/pcs.hpp"

namespace bwm {

/// Precomputed weights keyed by label.
using WeightMap = std::map<std::string, double>;

/// One input block: either comparisons to solve or weights to pass through.
using BlockInput = std::variant<WeightMap, Pcs<double>>;

struct GroupStudy {
  std::vector<std::string> categories;
  std::map<std::string, std::vector<std::string>> drivers;  // category -> ordered drivers
  std::vector<std::string> experts;
  std::map<std::string, BlockInput> category_input;                         // expert -> block
  std::map<std::string, std::map<std::string, BlockInput>> driver_input;  // expert -> category -> block
};

struct BlockReport {
  std::string expert;
  std::string block;  // "categories" or a category label
  double epsilon_star = 0.0;
  std::optional<double> cr;
  Pivot pivot;
};

struct AggregationResult {
  std::vector<std::string> categories;
  std::vector<std::string> experts;
  std::vector<std::string> drivers;  // flattened in category order
  std::vector<Index> driver_category;
  Matrix<double> category_weights;  // expert x category
  Matrix<double> local_weights;     // expert x driver
  Matrix<double> global_weights;    // expert x driver
  Vector<double> final_weights;
  std::vector<Index> ranking;  // driver indices, most critical first
  std::vector<BlockReport> per_block_cr;
};

inline constexpr double kWeightSumTolerance = 1e-3;

/// Indices sorted by descending weight; ties keep input order.
std::vector<Index> rank(const Vector<double>& weights);

AggregationResult solve_study(const GroupStudy& study);

}  // namespace bwm
