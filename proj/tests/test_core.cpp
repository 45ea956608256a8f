#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bwm/lp_oracle.hpp"
#include "bwm/solver.hpp"
#include "ci_table.hpp"
#include "examples.hpp"

using namespace bwm;
using namespace bwm::testing;
using doctest::Approx;

namespace {

Vector<double> vec(std::initializer_list<double> xs) {
  Vector<double> v(static_cast<Index>(xs.size()));
  Index k = 0;
  for (double x : xs) v(k++) = x;
  return v;
}

void check_weights(const Vector<double>& got, std::initializer_list<double> expected, double tol) {
  REQUIRE(got.size() == static_cast<Index>(expected.size()));
  Index k = 0;
  for (double e : expected) {
    CHECK(std::abs(got(k) - e) <= tol);
    ++k;
  }
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected bwm::Error");
  return ErrorCode::OracleFailure;
}

}  // namespace

TEST_SUITE("validate_pcs") {
  TEST_CASE("worked example is accepted") {
    const auto v = validate_pcs<double>({{}, 0, 4, vec({1, 2, 3, 4, 7}), vec({7, 2, 3, 2, 1}), 9});
    CHECK(v.pcs.n() == 5);
    CHECK(v.pcs.a_bw() == 7);
    CHECK(v.warnings.empty());
    CHECK(v.pcs.label(2) == "c3");
  }

  TEST_CASE("shared a_bw entry must agree") {
    try {
      validate_pcs<double>({{}, 0, 1, vec({1, 2}), vec({3, 1}), 9});
      FAIL("accepted a contradictory PCS");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BwMismatch);
      REQUIRE(e.fields().size() == 2);
      CHECK(e.fields()[0] == "best_to_others.c2");
      CHECK(e.fields()[1] == "others_to_worst.c1");
    }
  }

  TEST_CASE("all-equal preferences are accepted and consistent") {
    const auto pcs = make_pcs({1, 1, 1}, {1, 1, 1}, 0, 2);
    const auto t = compute_epsilons(pcs);
    CHECK(t.pivot.kind == CaseKind::Consistent);
    CHECK(t.eta == 0.0);
  }

  TEST_CASE("structural rejections") {
    CHECK(code_of([] { make_pcs({1, 2, 3}, {3, 2, 1}, 1, 1); }) == ErrorCode::BestEqualsWorst);
    CHECK(code_of([] { make_pcs({2, 2, 3}, {3, 2, 1}, 0, 2); }) == ErrorCode::DiagonalNotOne);
    CHECK(code_of([] { make_pcs({1, 2, 3}, {3, 2, 2}, 0, 2); }) == ErrorCode::DiagonalNotOne);
    CHECK(code_of([] { make_pcs({1, 2, 10}, {10, 2, 1}, 0, 2); }) == ErrorCode::OutOfScale);
    CHECK(code_of([] { make_pcs({1, 0.5, 3}, {3, 2, 1}, 0, 2); }) == ErrorCode::OutOfScale);
    CHECK(code_of([] { make_pcs({1}, {1}, 0, 0); }) == ErrorCode::TooFewCriteria);
    CHECK(code_of([] {
            validate_pcs<double>({{"a", "b", "a"}, 0, 2, vec({1, 2, 3}), vec({3, 2, 1}), 9});
          }) == ErrorCode::DuplicateLabels);
    CHECK(code_of([] { validate_pcs<double>({{}, 0, 2, vec({1, 2, 3}), vec({3, 1}), 9}); }) ==
          ErrorCode::SizeMismatch);
  }

  TEST_CASE("dominance violations warn without rejecting") {
    const auto v = validate_pcs<double>({{}, 0, 2, vec({1, 5, 3}), vec({3, 4, 1}), 9});
    REQUIRE(v.warnings.size() == 2);
    CHECK(v.warnings[0].field == "best_to_others.c2");
    CHECK(v.warnings[1].field == "others_to_worst.c2");
  }

  TEST_CASE("real-valued comparisons are accepted by the solver") {
    const auto pcs = make_pcs({1, 2.5, 6.5}, {6.5, 1.5, 1}, 0, 2);
    const auto sol = solve_analytical(pcs);
    CHECK(sol.weights.sum() == Approx(1.0));
  }
}

TEST_SUITE("compute_epsilons") {
  TEST_CASE("example 1") {
    const auto t = compute_epsilons(example1());
    CHECK(t.d1 == std::vector<Index>{1});
    CHECK(t.d2 == std::vector<Index>{2, 3});
    CHECK(t.d3.empty());
    CHECK(t.single(1) == Approx(0.75));
    CHECK(t.single(2) == Approx(0.4));
    CHECK(std::abs(t.single(3) - 0.1667) < 1e-4);
    REQUIRE(t.eps_pair.size() == 2);
    CHECK(std::abs(t.eps_pair[0].value - 0.7143) < 1e-4);
    CHECK(t.eps_pair[1].value == Approx(0.5));
    CHECK(t.eta == Approx(0.75));
    CHECK(t.pivot == Pivot::best_side(1));
    CHECK(to_string(t.pivot) == "BestSide(2)");
  }

  TEST_CASE("example 3 has a mixed pivot") {
    const auto t = compute_epsilons(example3());
    CHECK(std::abs(t.eta - 2.5714) < 1e-4);
    CHECK(t.eta == Approx(18.0 / 7.0));
    CHECK(t.pivot == Pivot::mixed(1, 2));
    CHECK(to_string(t.pivot) == "Mixed(2,3)");
    CHECK(t.single(2) == Approx(2.5));
    CHECK(t.single(5) == Approx(0.5));  // |4*2 - 5| / 6
  }

  TEST_CASE("products equal to a_bw put everything in D3") {
    const auto t = compute_epsilons(consistent_example());
    CHECK(t.d3 == std::vector<Index>{1, 2});
    CHECK(t.d1.empty());
    CHECK(t.d2.empty());
    CHECK(t.eta == 0.0);
    CHECK(t.pivot.kind == CaseKind::Consistent);
  }

  TEST_CASE("two criteria are degenerate") {
    const auto t = compute_epsilons(make_pcs({1, 3}, {3, 1}, 0, 1));
    CHECK(t.pivot.kind == CaseKind::Degenerate);
    CHECK(t.eta == 0.0);
  }

  TEST_CASE("pivot ties break singles before pairs") {
    // eps_2 = eps_{2,3} = 1, eps_3 = 1/3
    const auto pcs = make_pcs({1, 1, 1, 4}, {4, 1, 5, 1}, 0, 3);
    const auto t = compute_epsilons(pcs);
    CHECK(t.single(1) == Approx(1.0));
    CHECK(t.eps_pair.at(0).value == Approx(1.0));
    CHECK(t.pivot == Pivot::best_side(1));
    REQUIRE(t.attaining.size() == 2);
    CHECK(t.attaining[1] == Pivot::mixed(1, 2));
    const auto a = closed_form(pcs, t.attaining[0], t.eta);
    const auto b = closed_form(pcs, t.attaining[1], t.eta);
    CHECK((a.weights - b.weights).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_SUITE("objective_value") {
  TEST_CASE("example 1 at its optimum") {
    const auto pcs = example1();
    CHECK(std::abs(objective_value(pcs, solve_analytical(pcs).weights) - 0.0533) < 1e-4);
  }

  TEST_CASE("consistent PCS at exact weights is zero") {
    const auto pcs = consistent_example();
    const Vector<double> w = pcs.others_to_worst() / pcs.others_to_worst().sum();
    CHECK(objective_value(pcs, w) == Approx(0.0).epsilon(1e-15));
  }

  TEST_CASE("spreadsheet weights for example 5 are suboptimal") {
    const auto pcs = example5();
    Vector<double> w = vec({0.4706, 0.1176, 0.2353, 0.0588, 0.1176});
    w /= w.sum();  // the listed values are 4-decimal roundings summing to 0.9999
    CHECK(objective_value(pcs, w) > 0.1796);
  }

  TEST_CASE("rejects unnormalized weights") {
    const auto pcs = example1();
    CHECK(code_of([&] { objective_value(pcs, vec({0.5, 0.5, 0.5, 0.0, 0.0})); }) == ErrorCode::NotNormalized);
    CHECK(code_of([&] { objective_value(pcs, vec({1.2, -0.2, 0, 0, 0})); }) == ErrorCode::NotNormalized);
  }
}

TEST_SUITE("solve_analytical") {
  TEST_CASE("example 1") {
    const auto sol = solve_analytical(example1());
    check_weights(sol.weights, {0.4438, 0.1953, 0.1657, 0.1243, 0.0710}, 1e-4);
    CHECK(std::abs(sol.sigma - 14.0833) < 1e-4);
    CHECK(std::abs(sol.epsilon_star - 0.0533) < 1e-4);
    REQUIRE(sol.cr.has_value());
    CHECK(std::abs(*sol.cr - 0.2246) < 2e-3);
  }

  TEST_CASE("example 2") {
    const auto sol = solve_analytical(example2());
    check_weights(sol.weights, {0.4323, 0.1213, 0.1617, 0.2425, 0.0422}, 1e-4);
    CHECK(std::abs(sol.epsilon_star - 0.0527) < 1e-4);
    CHECK(sol.pivot == Pivot::worst_side(3));
  }

  TEST_CASE("example 3") {
    const auto sol = solve_analytical(example3());
    check_weights(sol.weights, {0.2783, 0.1781, 0.0946, 0.1262, 0.1892, 0.0946, 0.0390}, 1e-4);
    CHECK(std::abs(sol.epsilon_star - 0.1002) < 1e-4);
    CHECK(std::abs(sol.sigma - 25.6667) < 1e-3);
    CHECK(sol.pivot == Pivot::mixed(1, 2));
  }

  TEST_CASE("example 4") {
    const auto sol = solve_analytical(example4());
    check_weights(sol.weights, {0.6182, 0.1455, 0.1727, 0.0636}, 1e-4);
    CHECK(std::abs(sol.epsilon_star - 0.1091) < 1e-4);
  }

  TEST_CASE("consistent PCS reproduces exact weights") {
    const auto pcs = consistent_example();
    const auto sol = solve_analytical(pcs);
    const Vector<double> expected = vec({8, 4, 2, 1}) / 15.0;
    CHECK((sol.weights - expected).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(sol.epsilon_star == 0.0);
    CHECK(sol.cr.value() == 0.0);
    // best-to-others form of the exact weights
    const Vector<double> inv = pcs.best_to_others().cwiseInverse();
    const Vector<double> alt = inv / inv.sum();
    CHECK((sol.weights - alt).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("two criteria") {
    const auto sol = solve_analytical(make_pcs({1, 4}, {4, 1}, 0, 1));
    CHECK(sol.pivot.kind == CaseKind::Degenerate);
    CHECK(sol.weights(0) == Approx(0.8));
    CHECK(sol.weights(1) == Approx(0.2));
    CHECK(sol.epsilon_star == 0.0);
    CHECK(sol.ci == 0.0);
    CHECK(sol.cr.value() == 0.0);
  }

  TEST_CASE("best and worst need not be first and last") {
    // Example 1 with criteria reversed.
    const auto pcs = make_pcs({7, 4, 3, 2, 1}, {1, 2, 3, 2, 7}, 4, 0);
    const auto sol = solve_analytical(pcs);
    check_weights(sol.weights, {0.0710, 0.1243, 0.1657, 0.1953, 0.4438}, 1e-4);
    CHECK(sol.pivot == Pivot::best_side(3));
  }

  TEST_CASE("long double instantiation agrees with double") {
    const auto pd = example3();
    const auto pl = make_pcs<long double>(pd.best_to_others().cast<long double>(),
                                          pd.others_to_worst().cast<long double>(), 0, 6);
    const auto sd = solve_analytical(pd);
    const auto sl = solve_analytical(pl);
    CHECK((sd.weights.cast<long double>() - sl.weights).cwiseAbs().maxCoeff() < 1e-14L);
    CHECK(std::abs(static_cast<long double>(sd.epsilon_star) - sl.epsilon_star) < 1e-14L);
  }

  TEST_CASE("CR undefined when a_bw = 1 and the PCS is inconsistent") {
    const auto pcs = make_pcs({1, 2, 1}, {1, 3, 1}, 0, 2);
    const auto sol = solve_analytical(pcs);
    CHECK(sol.epsilon_star > 0.0);
    CHECK(sol.ci == 0.0);
    CHECK_FALSE(sol.cr.has_value());
  }
}

TEST_SUITE("consistency") {
  TEST_CASE("reference CI values") {
    CHECK(std::abs(consistency_index<double>(5, 7) - 0.2373) < 5e-5);
    CHECK(std::abs(consistency_index<double>(10, 9) - 0.1809) < 5e-5);
    CHECK(std::abs(consistency_index<double>(3, 2) - 0.1) < 5e-5);
    CHECK(std::abs(consistency_index<double>(4, 2) - 0.0968) < 5e-5);
  }

  TEST_CASE("full reference grid") {
    for (Index n = 3; n <= 10; ++n) {
      for (int a = 2; a <= 9; ++a) {
        CAPTURE(n);
        CAPTURE(a);
        CHECK(std::abs(consistency_index<double>(n, a) - kCiTable[n - 3][a - 2]) <= 5e-5);
      }
    }
  }

  TEST_CASE("a_bw = 1 gives zero for any n") {
    for (Index n = 3; n <= 20; ++n) CHECK(consistency_index<double>(n, 1) == 0.0);
  }

  TEST_CASE("n < 3 is unsupported") {
    CHECK(code_of([] { consistency_index<double>(2, 5); }) == ErrorCode::UnsupportedN);
  }

  TEST_CASE("consistency ratio") {
    CHECK(std::abs(consistency_ratio(0.0533, 0.2373).value() - 0.2246) < 2e-3);
    CHECK(std::abs(consistency_ratio(0.1796, 0.2143).value() - 0.8381) < 2e-3);
    CHECK(consistency_ratio(0.0, 0.3).value() == 0.0);
    CHECK(consistency_ratio(0.0, 0.0).value() == 0.0);
    CHECK_FALSE(consistency_ratio(0.1, 0.0).has_value());
  }

  TEST_CASE("worst-case constructions") {
    const auto v2 = worst_case_pcs<double>(3, 2, 2);
    CHECK(solve_analytical(v2).epsilon_star == Approx(0.1));

    const auto v49 = worst_case_pcs<double>(4, 9, 2);
    CHECK(std::abs(solve_analytical(v49).epsilon_star - 0.3051) < 5e-5);

    const auto v1 = worst_case_pcs<double>(5, 7, 1);
    const double analytical = solve_analytical(v1).epsilon_star;
    const auto oracle = simplex_solve(build_lp(v1));
    REQUIRE(oracle.status == OracleStatus::Optimal);
    CHECK(analytical == Approx(6.0 / 33.0).epsilon(1e-12));
    CHECK(std::abs(oracle.objective - analytical) < 1e-9);

    const auto v3 = worst_case_pcs<double>(4, 2, 3);
    CHECK(compute_epsilons(v3).pivot.kind == CaseKind::Mixed);
    CHECK(std::abs(solve_analytical(v3).epsilon_star - 0.0968) < 5e-5);
  }

  TEST_CASE("variant availability") {
    CHECK(code_of([] { worst_case_pcs<double>(3, 5, 3); }) == ErrorCode::VariantUnavailable);
    CHECK(code_of([] { worst_case_pcs<double>(2, 5, 1); }) == ErrorCode::VariantUnavailable);
    CHECK(code_of([] { worst_case_pcs<double>(5, 5, 4); }) == ErrorCode::VariantUnavailable);
  }
}
