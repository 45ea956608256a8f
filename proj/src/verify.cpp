#include "bwm/verify.hpp"

#include <string>

namespace bwm {

VerificationReport verify(const Pcs<double>& pcs, double tolerance) {
  using Clock = std::chrono::steady_clock;
  VerificationReport report;
  report.tolerance = tolerance;

  const auto t0 = Clock::now();
  const AnalyticalSolution<double> sol = solve_analytical(pcs);
  const auto t1 = Clock::now();
  const OracleResult<double> oracle = simplex_solve(build_lp(pcs));
  const auto t2 = Clock::now();

  report.analytical_time = t1 - t0;
  report.simplex_time = t2 - t1;
  report.oracle_status = oracle.status;
  report.oracle_iterations = oracle.iterations;
  if (oracle.status != OracleStatus::Optimal) {
    throw Error(ErrorCode::OracleFailure,
                "simplex oracle ended with status " + std::string(to_string(oracle.status)));
  }

  const Index n = pcs.n();
  report.epsilon_analytical = sol.epsilon_star;
  report.epsilon_simplex = oracle.objective;
  report.weights_analytical = sol.weights;
  report.weights_simplex = oracle.solution.head(n);
  report.delta_epsilon = std::abs(sol.epsilon_star - oracle.objective);
  report.max_weight_delta = (sol.weights - report.weights_simplex).cwiseAbs().maxCoeff();
  report.pass = report.delta_epsilon <= tolerance && report.max_weight_delta <= tolerance;
  return report;
}

}  // namespace bwm
