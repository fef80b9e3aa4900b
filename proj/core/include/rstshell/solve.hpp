#pragma once

#include "rstshell/assembly.hpp"

#include <string>

namespace rst {

struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveReport {
  int n_dof = 0;
  double residual_inf = 0.0;  ///< explicit post-check ||K d - F||_inf
  double wall_seconds = 0.0;
  bool used_indefinite_path = false;
};

struct Solution {
  Eigen::VectorXd full;         ///< expanded to all DOFs, fixed entries zero
  Eigen::VectorXd multipliers;  ///< empty without constraints
  SolveReport report;
};

/// Direct sparse solve of the reduced system. SPD path (LDL^T with
/// fill-reducing ordering) without multipliers, sparse LU for the
/// multiplier-augmented saddle system. Throws SolveError on singular
/// factorization (naming the first zero-pivot DOF when identifiable) or when
/// the residual check ||K d - F||_inf <= 1e-9 max(1, ||F||_inf) fails.
Solution solve_linear(const GlobalSystem& sys);

}  // namespace rst
