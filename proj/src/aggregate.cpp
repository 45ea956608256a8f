#include "bwm/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "bwm/solver.hpp"

namespace bwm {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

/// Weights of `block` in the order of `labels`.
Vector<double> block_weights(const BlockInput& block, const std::vector<std::string>& labels,
                             const std::string& path, const std::string& expert, const std::string& name,
                             std::vector<BlockReport>& reports) {
  const auto n = static_cast<Index>(labels.size());
  const std::set<std::string> expected(labels.begin(), labels.end());
  Vector<double> w(n);

  if (const auto* pcs = std::get_if<Pcs<double>>(&block)) {
    const std::set<std::string> got(pcs->criteria().begin(), pcs->criteria().end());
    if (got != expected) {
      throw Error(ErrorCode::LabelMismatch,
                  path + ": PCS criteria must be exactly {" + join(labels) + "}", {path + ".criteria"});
    }
    const auto sol = solve_analytical(*pcs);
    for (Index k = 0; k < n; ++k) {
      const auto& crit = pcs->criteria();
      const auto pos = std::find(crit.begin(), crit.end(), labels[static_cast<std::size_t>(k)]) - crit.begin();
      w(k) = sol.weights(pos);
    }
    reports.push_back({expert, name, sol.epsilon_star, sol.cr, sol.pivot});
    return w;
  }

  const auto& map = std::get<WeightMap>(block);
  std::set<std::string> got;
  for (const auto& [k, v] : map) got.insert(k);
  if (got != expected) {
    throw Error(ErrorCode::LabelMismatch, path + ": weights must cover exactly {" + join(labels) + "}",
                {path});
  }
  double sum = 0.0;
  for (Index k = 0; k < n; ++k) {
    const auto& label = labels[static_cast<std::size_t>(k)];
    const double v = map.at(label);
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::InvalidWeights, path + "." + label + ": weight must be nonnegative",
                  {path + "." + label});
    }
    w(k) = v;
    sum += v;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw Error(ErrorCode::InvalidWeights,
                path + ": weights sum to " + detail::format_value(sum) + ", expected 1", {path});
  }
  return w;
}

}  // namespace

std::vector<Index> rank(const Vector<double>& weights) {
  std::vector<Index> idx(static_cast<std::size_t>(weights.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) { return weights(a) > weights(b); });
  return idx;
}

AggregationResult solve_study(const GroupStudy& study) {
  if (study.experts.empty()) throw Error(ErrorCode::MissingBlock, "study has no experts", {"experts"});
  if (study.categories.empty())
    throw Error(ErrorCode::MissingBlock, "study has no categories", {"categories"});

  AggregationResult r;
  r.categories = study.categories;
  r.experts = study.experts;
  std::set<std::string> seen;
  for (std::size_t c = 0; c < study.categories.size(); ++c) {
    const auto& cat = study.categories[c];
    const auto it = study.drivers.find(cat);
    if (it == study.drivers.end() || it->second.empty()) {
      throw Error(ErrorCode::MissingBlock, "category " + cat + " lists no drivers", {"drivers." + cat});
    }
    for (const auto& d : it->second) {
      if (!seen.insert(d).second)
        throw Error(ErrorCode::DuplicateLabels, "driver " + d + " appears twice", {"drivers." + cat});
      r.drivers.push_back(d);
      r.driver_category.push_back(static_cast<Index>(c));
    }
  }

  const auto ne = static_cast<Index>(study.experts.size());
  const auto nc = static_cast<Index>(study.categories.size());
  const auto nd = static_cast<Index>(r.drivers.size());
  r.category_weights.resize(ne, nc);
  r.local_weights.resize(ne, nd);

  for (Index e = 0; e < ne; ++e) {
    const auto& expert = study.experts[static_cast<std::size_t>(e)];
    const std::string cpath = "category_input." + expert;
    const auto cit = study.category_input.find(expert);
    if (cit == study.category_input.end())
      throw Error(ErrorCode::MissingBlock, "no category block for expert " + expert, {cpath});
    r.category_weights.row(e) =
        block_weights(cit->second, study.categories, cpath, expert, "categories", r.per_block_cr).transpose();

    const auto dit = study.driver_input.find(expert);
    Index col = 0;
    for (const auto& cat : study.categories) {
      const auto& labels = study.drivers.at(cat);
      const std::string dpath = "driver_input." + expert + "." + cat;
      if (dit == study.driver_input.end() || !dit->second.count(cat))
        throw Error(ErrorCode::MissingBlock, "no driver block for expert " + expert + ", category " + cat,
                    {dpath});
      const auto w = block_weights(dit->second.at(cat), labels, dpath, expert, cat, r.per_block_cr);
      r.local_weights.block(e, col, 1, w.size()) = w.transpose();
      col += w.size();
    }
  }

  r.global_weights.resize(ne, nd);
  for (Index d = 0; d < nd; ++d) {
    r.global_weights.col(d) =
        r.category_weights.col(r.driver_category[static_cast<std::size_t>(d)]).cwiseProduct(r.local_weights.col(d));
  }
  r.final_weights = r.global_weights.colwise().mean().transpose();
  r.ranking = rank(r.final_weights);
  return r;
}

}  // namespace bwm
