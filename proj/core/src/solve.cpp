#include "rstshell/solve.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <chrono>
#include <cmath>

namespace rst {

Solution solve_linear(const GlobalSystem& sys) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = static_cast<int>(sys.K.rows());
  Eigen::VectorXd x(n);

  Solution sol;
  sol.report.n_dof = n;
  sol.report.used_indefinite_path = sys.n_multipliers > 0;

  if (n > 0) {
    if (sys.n_multipliers == 0) {
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
      ldlt.compute(sys.K);
      if (ldlt.info() != Eigen::Success) {
        throw SolveError("solve_linear: LDL^T factorization failed (singular system)");
      }
      const auto& D = ldlt.vectorD();
      for (int i = 0; i < D.size(); ++i) {
        if (!(D[i] > 0.0)) {
          const int permuted = ldlt.permutationPinv().indices()[i];
          const int full = sys.free_to_full.empty() ? permuted : sys.free_to_full[permuted];
          throw SolveError("solve_linear: nonpositive pivot at reduced index " +
                           std::to_string(i) + " (DOF " + std::to_string(full) + ")");
        }
      }
      x = ldlt.solve(sys.F);
    } else {
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.analyzePattern(sys.K);
      lu.factorize(sys.K);
      if (lu.info() != Eigen::Success) {
        throw SolveError("solve_linear: LU factorization of the saddle system failed: " +
                         lu.lastErrorMessage());
      }
      x = lu.solve(sys.F);
    }
  }

  const double fnorm = (n > 0) ? sys.F.lpNorm<Eigen::Infinity>() : 0.0;
  const double res = (n > 0) ? (sys.K * x - sys.F).lpNorm<Eigen::Infinity>() : 0.0;
  sol.report.residual_inf = res;
  if (res > 1e-9 * std::max(1.0, fnorm)) {
    throw SolveError("solve_linear: residual check failed, |r|_inf = " + std::to_string(res));
  }

  sol.full = Eigen::VectorXd::Zero(sys.n_full);
  for (int i = 0; i < sys.n_free; ++i) sol.full[sys.free_to_full[i]] = x[i];
  sol.multipliers = x.tail(sys.n_multipliers);

  const auto t1 = std::chrono::steady_clock::now();
  sol.report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return sol;
}

}  // namespace rst
