#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace rst {

/// Open (clamped) knot vector with degree p >= 1: first and last knots
/// repeated p+1 times, interior multiplicities at most p.
struct KnotVector {
  std::vector<double> knots;
  int degree = 1;

  KnotVector() = default;
  KnotVector(std::vector<double> k, int p);

  double front() const { return knots.front(); }
  double back() const { return knots.back(); }
  int num_basis() const { return static_cast<int>(knots.size()) - degree - 1; }

  /// Distinct interior breakpoints define the elements (nonzero spans).
  std::vector<double> breakpoints() const;
  int num_elements() const { return static_cast<int>(breakpoints().size()) - 1; }

  /// Largest interior knot multiplicity (0 when there are none).
  int max_interior_multiplicity() const;

  /// Index i with knots[i] <= xi < knots[i+1] (last span at xi = back()).
  int find_span(double xi) const;

  /// Uniform open knot vector on [a, b] with n_elems equal spans.
  static KnotVector uniform(int p, double a, double b, int n_elems);
};

/// Nonzero B-spline basis functions and their first two derivatives at xi.
struct BasisValues1d {
  int first = 0;  ///< index of the first nonzero function
  std::vector<double> v, d1, d2;  ///< each of size degree+1
};

/// Cox-de-Boor evaluation with derivatives up to order 2.
/// Throws std::domain_error when xi lies outside the knot range.
BasisValues1d basis_eval(const KnotVector& kv, double xi);

/// Per-element Bezier extraction operators C (rows: spline functions
/// supported on the element, cols: Bernstein functions of degree p).
std::vector<Eigen::MatrixXd> bezier_extract(const KnotVector& kv);

/// Bernstein basis of degree p on [0,1], with derivatives.
void bernstein(int p, double t, double* v, double* d1, double* d2);

/// Rational curve in homogeneous form: control points P_i with weights w_i.
struct NurbsCurve {
  KnotVector kv;
  std::vector<Eigen::Vector3d> pts;
  std::vector<double> w;

  Eigen::Vector3d point(double xi) const;
};

/// Knot insertion (Boehm); evaluated geometry is unchanged.
/// Throws std::invalid_argument when an insertion lies outside the knot span.
NurbsCurve insert_knots(const NurbsCurve& c, const std::vector<double>& insertions);

/// Degree elevation by one; evaluated geometry is unchanged.
NurbsCurve degree_elevate(const NurbsCurve& c);

/// Tensor-product NURBS surface patch.
struct SplinePatch {
  KnotVector ku, kv;
  int nu = 0, nv = 0;                 ///< control grid dimensions
  std::vector<Eigen::Vector3d> ctrl;  ///< row-major: index i*nv + j
  std::vector<double> w;              ///< matching weights, all > 0

  void validate() const;

  struct SurfEval {
    Eigen::Vector3d S, S1, S2, S11, S12, S22;
  };
  /// Rational point and derivatives to order 2 (quotient rule).
  SurfEval eval(double xi, double eta) const;

  struct ShapeEval {
    int iu0 = 0, iv0 = 0;  ///< first nonzero function index per direction
    int count_u = 0, count_v = 0;
    // Row-major over (iu, iv) local pairs, size count_u*count_v.
    std::vector<double> R, R1, R2, R11, R12, R22;
  };
  /// Rational shape functions for field interpolation, derivatives w.r.t.
  /// the patch parameters.
  ShapeEval shapes(double xi, double eta) const;
};

/// Exact semi-cylinder patch: single rational cubic 180-degree arc
/// (weights 1, 1/3, 1/3, 1) tensored with a cubic axial direction.
/// Circle lies in the (e2, e3) plane per the cylinder chart orientation.
SplinePatch make_cylinder_patch(double radius, double length);

/// Uniform h-refinement: splits every nonzero span in both directions
/// `levels` times via knot insertion (geometry preserved exactly).
SplinePatch refine_patch_uniform(const SplinePatch& p, int levels);

/// Inserts knots into one direction (0 = u, 1 = v) of a patch.
SplinePatch patch_insert_knots(const SplinePatch& p, int dir,
                               const std::vector<double>& insertions);

/// Nodal Lagrange basis of degree 1 or 2 on [-1, 1] (equally spaced nodes).
void lagrange1d(int degree, double xi, double* v, double* d1, double* d2);

/// Gauss-Legendre rule with n points on [-1, 1]; nodes ascending.
struct GaussRule {
  std::vector<double> x, w;
};
GaussRule gauss_legendre(int n);

}  // namespace rst
