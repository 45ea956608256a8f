#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bwm/aggregate.hpp"
#include "bwm/solver.hpp"
#include "case_study_tables.hpp"
#include "examples.hpp"

using namespace bwm;
using namespace bwm::testing;

namespace {

ErrorCode code_of(const GroupStudy& s) {
  try {
    solve_study(s);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::OracleFailure;
}

}  // namespace

TEST_CASE("rank") {
  Vector<double> w(2);
  w << 0.3, 0.7;
  CHECK(rank(w) == std::vector<Index>{1, 0});
  CHECK(rank(Vector<double>::Constant(4, 0.25)) == std::vector<Index>{0, 1, 2, 3});
  Vector<double> t(4);
  t << 0.2, 0.4, 0.2, 0.2;
  CHECK(rank(t) == std::vector<Index>{1, 0, 2, 3});
}

TEST_CASE("case study reproduces the reference tables") {
  const auto r = solve_study(case_study());
  REQUIRE(r.drivers.size() == 18);
  double max_global = 0, max_final = 0;
  for (std::size_t d = 0; d < 18; ++d) {
    const auto& row = kDriverRows[d];
    CHECK(r.drivers[d] == row.label);
    for (Index e = 0; e < 5; ++e) {
      max_global = std::max(max_global,
                            std::abs(r.global_weights(e, static_cast<Index>(d)) - row.global[static_cast<std::size_t>(e)]));
    }
    max_final = std::max(max_final, std::abs(r.final_weights(static_cast<Index>(d)) - row.final_weight));
  }
  CHECK(max_global <= 1e-3);
  CHECK(max_final <= 5e-4);

  std::vector<std::string> ranked;
  for (Index i : r.ranking) ranked.push_back(r.drivers[static_cast<std::size_t>(i)]);
  const std::vector<std::string> expected{"c31", "c21", "c35", "c24", "c23", "c34", "c33", "c32", "c22",
                                          "c26", "c36", "c25", "c11", "c12", "c15", "c13", "c14", "c16"};
  CHECK(ranked == expected);
  for (std::size_t k = 0; k < 18; ++k) {
    const auto d = static_cast<std::size_t>(r.ranking[k]);
    CHECK(kDriverRows[d].rank == static_cast<int>(k + 1));
  }

  CHECK(std::abs(r.global_weights(0, 12) - 0.3507) < 1e-4);
  CHECK(std::abs(r.final_weights(12) - 0.1409) < 1e-4);
  CHECK(std::abs(r.final_weights(5) - 0.0095) < 1e-4);
  CHECK(std::abs(r.final_weights.sum() - 1.0) <= 5e-3);
  CHECK(r.per_block_cr.empty());
}

TEST_CASE("aggregation identities") {
  const auto r = solve_study(case_study());
  for (Index e = 0; e < 5; ++e) {
    for (Index d = 0; d < 18; ++d) {
      const Index c = r.driver_category[static_cast<std::size_t>(d)];
      CHECK(r.global_weights(e, d) == r.category_weights(e, c) * r.local_weights(e, d));
    }
  }
  for (Index d = 0; d < 18; ++d) {
    CHECK(std::abs(r.final_weights(d) - r.global_weights.col(d).sum() / 5) <= 1e-15);
  }
}

TEST_CASE("relabeling experts changes nothing") {
  auto s = case_study();
  const auto base = solve_study(s);
  std::reverse(s.experts.begin(), s.experts.end());
  const auto rev = solve_study(s);
  CHECK((base.final_weights - rev.final_weights).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(base.ranking == rev.ranking);

  // rename E1 <-> E5 everywhere
  auto t = case_study();
  std::swap(t.category_input["E1"], t.category_input["E5"]);
  std::swap(t.driver_input["E1"], t.driver_input["E5"]);
  const auto swapped = solve_study(t);
  CHECK((base.final_weights - swapped.final_weights).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(base.ranking == swapped.ranking);
}

TEST_CASE("single expert passes weights through") {
  GroupStudy s;
  s.categories = {"A", "B"};
  s.drivers = {{"A", {"a1", "a2"}}, {"B", {"b1"}}};
  s.experts = {"X"};
  s.category_input["X"] = WeightMap{{"A", 0.25}, {"B", 0.75}};
  s.driver_input["X"]["A"] = WeightMap{{"a1", 0.5}, {"a2", 0.5}};
  s.driver_input["X"]["B"] = WeightMap{{"b1", 1.0}};
  const auto r = solve_study(s);
  CHECK(r.final_weights(0) == 0.125);
  CHECK(r.final_weights(1) == 0.125);
  CHECK(r.final_weights(2) == 0.75);
  CHECK(r.global_weights.row(0).transpose() == r.final_weights);
  CHECK(std::abs(r.final_weights.sum() - 1.0) <= 1e-12);
  CHECK(r.ranking == std::vector<Index>{2, 0, 1});
}

TEST_CASE("PCS blocks are solved and report their CR") {
  GroupStudy s;
  s.categories = {"c1", "c2", "c3", "c4", "c5"};
  for (const auto& c : s.categories) s.drivers[c] = {c + "x", c + "y"};
  s.experts = {"E1", "E2"};
  for (const auto& e : s.experts) {
    s.category_input[e] = example1();
    for (const auto& c : s.categories) {
      auto raw = make_pcs({1, 3}, {3, 1}, 0, 1).raw();
      raw.criteria = {c + "x", c + "y"};
      s.driver_input[e][c] = validate_pcs(raw).pcs;
    }
  }
  const auto r = solve_study(s);
  const auto ex1 = solve_analytical(example1());
  for (Index c = 0; c < 5; ++c) CHECK(r.category_weights(0, c) == ex1.weights(c));
  CHECK(r.local_weights(1, 0) == doctest::Approx(0.75));
  CHECK(r.per_block_cr.size() == 12);
  const auto& cat_block = r.per_block_cr.front();
  CHECK(cat_block.block == "categories");
  REQUIRE(cat_block.cr.has_value());
  CHECK(std::abs(*cat_block.cr - 0.2246) < 2e-3);
  CHECK(cat_block.pivot == ex1.pivot);
  double sum = r.final_weights.sum();
  CHECK(std::abs(sum - 1.0) <= 1e-12);
}

TEST_CASE("PCS block criteria may come in any order") {
  GroupStudy s;
  s.categories = {"A", "B"};
  s.drivers = {{"A", {"a1", "a2", "a3"}}, {"B", {"b1"}}};
  s.experts = {"X"};
  s.category_input["X"] = WeightMap{{"A", 0.5}, {"B", 0.5}};
  auto raw = make_pcs({1, 2, 4}, {4, 2, 1}, 0, 2).raw();
  raw.criteria = {"a3", "a1", "a2"};
  s.driver_input["X"]["A"] = validate_pcs(raw).pcs;
  s.driver_input["X"]["B"] = WeightMap{{"b1", 1.0}};
  const auto r = solve_study(s);
  CHECK(r.local_weights(0, 2) == doctest::Approx(4.0 / 7));
  CHECK(r.local_weights(0, 0) == doctest::Approx(2.0 / 7));
  CHECK(r.local_weights(0, 1) == doctest::Approx(1.0 / 7));
}

TEST_CASE("study errors") {
  SUBCASE("missing category block") {
    auto s = case_study();
    s.category_input.erase("E3");
    CHECK(code_of(s) == ErrorCode::MissingBlock);
  }
  SUBCASE("missing driver block") {
    auto s = case_study();
    s.driver_input["E2"].erase("c2");
    CHECK(code_of(s) == ErrorCode::MissingBlock);
  }
  SUBCASE("badly normalized") {
    auto s = case_study();
    std::get<WeightMap>(s.category_input["E1"])["c1"] = 0.2;
    CHECK(code_of(s) == ErrorCode::InvalidWeights);
  }
  SUBCASE("negative") {
    auto s = case_study();
    auto& m = std::get<WeightMap>(s.category_input["E1"]);
    m["c1"] = -0.1;
    m["c3"] += 0.2111;
    CHECK(code_of(s) == ErrorCode::InvalidWeights);
  }
  SUBCASE("label mismatch") {
    auto s = case_study();
    auto& m = std::get<WeightMap>(s.driver_input["E1"]["c1"]);
    m["c19"] = m["c16"];
    m.erase("c16");
    CHECK(code_of(s) == ErrorCode::LabelMismatch);
  }
  SUBCASE("no experts") {
    auto s = case_study();
    s.experts.clear();
    CHECK(code_of(s) == ErrorCode::MissingBlock);
  }
  SUBCASE("duplicate driver") {
    auto s = case_study();
    s.drivers["c2"][0] = "c11";
    CHECK(code_of(s) == ErrorCode::DuplicateLabels);
  }
}
