#pragma once

#include "rstshell/discretization.hpp"
#include "rstshell/shellcore.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace rst {

/// Per-element quadrature data: basis values/derivatives, geometry, and
/// quadrature weight (gauss weight x parametric cell measure x sqrt(a)).
struct ElementContext {
  int element = -1;
  std::vector<int> nodes;
  struct QuadPoint {
    Vector2d param;
    double weight = 0.0;
    ShellDiscretization::Shape shape;
    SurfacePoint geom;
  };
  std::vector<QuadPoint> qps;

  int nn() const { return static_cast<int>(nodes.size()); }
  int ndof() const { return 5 * nn(); }
};

ElementContext build_element_context(const ShellDiscretization& disc, int e);

/// Discrete strain-variation operators at a quadrature point, 2D Voigt
/// layout (11, 22, 2*12) with the factor-2 shear on the strain side.
///
/// Element DOF vector: [u-block: 3 Cartesian components per node,
/// node-major | psi-block: 2 chart components per node, node-major].
/// Signs follow the internal-force convention
///   f_u   =  Bn^T vec(n) + Bm_u^T vec(m) + Bq_u^T q,
///   f_psi = -Bm_psi^T vec(m) + Bq_psi^T q,
/// i.e. delta rho = Bm_u du - Bm_psi dpsi.
struct BMatrices {
  Eigen::MatrixXd Bn;       ///< 3 x 3nn
  Eigen::MatrixXd Bm_u;     ///< 3 x 3nn
  Eigen::MatrixXd Bm_psi;   ///< 3 x 2nn
  Eigen::MatrixXd Bq_u;     ///< 2 x 3nn
  Eigen::MatrixXd Bq_psi;   ///< 2 x 2nn
  // rows used by the load vector
  Eigen::RowVectorXd Nu_n;  ///< delta u (normal component), 3nn
  Eigen::MatrixXd Nu_t;     ///< delta u_alpha, 2 x 3nn
  Eigen::MatrixXd Npsi;     ///< delta psi_alpha, 2 x 2nn
};

/// Requires second-derivative (t_{a,b}) geometry data in the context.
BMatrices build_b_matrices(const ElementContext& ctx, int qp);

/// Stacks the B operators into the 8 x ndof measure-variation matrix
/// (gamma, rho, phi in Voigt order) against the full element DOF vector.
Eigen::MatrixXd measure_operator(const BMatrices& b);

/// 8x8 Hessian of the energy density w.r.t. the Voigt measure vector.
Eigen::Matrix<double, 8, 8> constitutive_matrix(const SurfacePoint& g, const Material& mat);

/// Chart-component field state interpolated from element DOFs at a qp.
PointState point_state_at(const ElementContext& ctx, int qp, const Eigen::VectorXd& d_elem);

Eigen::MatrixXd element_stiffness(const ElementContext& ctx, const Material& mat);
Eigen::VectorXd element_internal_force(const ElementContext& ctx, const Material& mat,
                                       const Eigen::VectorXd& d_elem);
Eigen::VectorXd element_load(const ElementContext& ctx, const LoadSet& loads,
                             const Material& mat);

/// Gathers the element DOF vector from the full 5-per-node global vector.
Eigen::VectorXd gather_element_dofs(const ElementContext& ctx, const Eigen::VectorXd& d_full);

/// Homogeneous linear multipoint constraint sum_i c_i d_i = 0 (full DOF ids),
/// appended to the system via a Lagrange multiplier.
struct LinearConstraint {
  std::vector<std::pair<int, double>> terms;
};

/// Reduced symmetric system with optional multiplier border.
struct GlobalSystem {
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd F;
  int n_full = 0;
  int n_free = 0;
  int n_multipliers = 0;
  std::vector<int> full_to_free;  ///< -1 for eliminated (fixed) DOFs
  std::vector<int> free_to_full;
};

/// Deterministic assembly: element kernels are computed in parallel chunks,
/// then scattered serially in element order, so K and F are bitwise
/// independent of the thread count.
GlobalSystem assemble(const ShellDiscretization& disc, const Material& mat,
                      const LoadSet& loads, const std::vector<char>& fixed_dof,
                      const std::vector<LinearConstraint>& constraints, int n_threads);

/// Global DOF id helpers: 5 per node, (ux, uy, uz, psi1, psi2).
inline int dof_u(int node, int comp) { return 5 * node + comp; }
inline int dof_psi(int node, int comp) { return 5 * node + 3 + comp; }

}  // namespace rst
