#pragma once

#include <chrono>

#include "bwm/lp_oracle.hpp"
#include "bwm/solver.hpp"

namespace bwm {

struct VerificationReport {
  double epsilon_analytical = 0.0;
  double epsilon_simplex = 0.0;
  double delta_epsilon = 0.0;
  double max_weight_delta = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  OracleStatus oracle_status = OracleStatus::IterationLimit;
  int oracle_iterations = 0;
  std::chrono::nanoseconds analytical_time{0};
  std::chrono::nanoseconds simplex_time{0};
  Vector<double> weights_analytical;
  Vector<double> weights_simplex;
};

/// Solves `pcs` in closed form and with the simplex oracle and compares.
/// Throws OracleFailure if the oracle does not reach an optimum.
VerificationReport verify(const Pcs<double>& pcs, double tolerance);

}  // namespace bwm
