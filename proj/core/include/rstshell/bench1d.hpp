#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace rst {

enum class BcCase { kFreeSliding = 1, kClamped = 2, kSimplySupported = 3 };
enum class ArcTheory { kRst, kCst };

/// Plane-strain arc model of the pressurized semi-cylinder (rescaled units).
struct ArcProblem {
  double R = 10.0;  ///< rescaled radius, > 1
  double nu = 0.3;
  double p = 1.0;  ///< rescaled inner-face pressure
  BcCase bc = BcCase::kFreeSliding;
  ArcTheory theory = ArcTheory::kRst;

  double W() const;        ///< arc length pi*R
  double sigma() const { return nu / (1.0 - nu); }
  void validate() const;
};

/// Sampled solution of the six-component first-order system on a uniform
/// grid. RST components: (u2, psi2, u, gamma, rho, phi); CST components:
/// (u, u2, gamma, v, rho, vartheta).
struct BvpSolution {
  ArcProblem problem;
  Eigen::VectorXd x;               ///< strictly increasing grid on [0, W]
  Eigen::MatrixXd y;               ///< 6 x n state samples
  Eigen::MatrixXd yp;              ///< 6 x n derivatives (A y + g)

  int index(const char* name) const;  ///< component index by label
  double value(const char* name, int i) const { return y(index(name), i); }

  /// Cubic Hermite interpolation of one component at arbitrary x2.
  double eval(int comp, double x2) const;

  /// u2, psi2, u for RST; u2, psi2 (= -v + u2/R), u for CST.
  void displacement(double x2, double& u2, double& psi2, double& u) const;

  /// Constitutive n, m, q at x2 (CST: q = m').
  void resultants(double x2, double& n, double& m, double& q) const;

  /// True mean normal displacement: u + (sigma/60) rho for RST, u for CST.
  double true_u(double x2) const;
};

/// Case-1 closed form: u = p R^2 / (2(1+sigma)) (1 - (1-sigma)/(2R)),
/// gamma = u / R, u2 = psi2 = 0.
struct Case1Solution {
  double u = 0.0;
  double gamma = 0.0;
};
Case1Solution case1_analytic(double R, double nu, double p);

/// Radial displacement of the pressurized thick-walled ring (plane strain,
/// rescaled), zeta = xi / R in (-1/(2R), 1/(2R)).
double lame_radial(double R, double nu, double p, double zeta);
/// Thickness average <w_r> via Gauss quadrature of lame_radial over xi.
double lame_average(double R, double nu, double p);
/// Lame hoop and shear stress at radius r (inner pressure p, radii R -/+ 1/2).
void lame_stresses(double R, double p, double r, double& sigma_rr, double& sigma_tt);

/// Printed 1D-CST Case-1 closed form (mean displacements).
void cst_case1_closed_form(double R, double nu, double p, double x2, double& u, double& u2);

/// Solves the two-point boundary value problem with 4th-order (Lobatto IIIA)
/// collocation on a uniform grid of n_points >= 32 nodes.
BvpSolution solve_arc(const ArcProblem& problem, int n_points);

/// System matrix/inhomogeneity of the first-order form y' = A y + g.
void arc_system(const ArcProblem& problem, Eigen::Matrix<double, 6, 6>& A,
                Eigen::Matrix<double, 6, 1>& g);

/// Sampled total resultants (n - sigma p / 2, m - sigma p / 10, q), the
/// combinations comparable with the 3D integral characteristics (N, -M, Q).
struct ArcResultants {
  Eigen::VectorXd x;
  Eigen::VectorXd N, negM, Q;
};
ArcResultants arc_resultants(const BvpSolution& sol);

}  // namespace rst
