#pragma once

#include "rstshell/geometry.hpp"
#include "rstshell/splines.hpp"

#include <memory>
#include <vector>

namespace rst {

/// Scalar 2D basis over a structured element partition, plus the geometry it
/// carries. Local element coordinates live in [0,1]^2; derivative outputs are
/// w.r.t. the global parametric (chart) coordinates.
class ShellDiscretization {
 public:
  struct Shape {
    Eigen::VectorXd N;
    Eigen::Matrix<double, Eigen::Dynamic, 2> dN;
    Eigen::Matrix<double, Eigen::Dynamic, 3> d2N;  ///< columns: 11, 12, 22
  };

  virtual ~ShellDiscretization() = default;

  virtual int n_elements() const = 0;
  virtual int n_nodes() const = 0;
  virtual int funcs_per_element() const = 0;
  virtual const std::vector<int>& element_nodes(int e) const = 0;

  virtual Shape shapes(int e, const Vector2d& local) const = 0;

  /// Geometry used for assembly at a local point of element e.
  virtual SurfacePoint geometry(int e, const Vector2d& local) const = 0;

  /// Geometry used for output/error projection (exact chart when available).
  virtual SurfacePoint reference_geometry(int e, const Vector2d& local) const {
    return geometry(e, local);
  }

  virtual Vector2d param_of(int e, const Vector2d& local) const = 0;
  virtual Vector2d param_cell_size(int e) const = 0;
  virtual int quad_points_1d() const = 0;

  /// Rescaled arc-length circumferential coordinate of a local point
  /// (the x2 the 1D benchmarks are parameterized by).
  virtual double arc_coord(int e, const Vector2d& local) const = 0;

  /// Locates the element and local coordinate of a global parametric point.
  virtual void locate(const Vector2d& param, int& e, Vector2d& local) const = 0;

  /// Node ids on an edge of the parameter rectangle:
  /// 0: param1 = min, 1: param1 = max, 2: param2 = min, 3: param2 = max.
  virtual std::vector<int> edge_nodes(int edge) const = 0;
};

enum class GeometryMode {
  kAnalytic,      ///< exact chart geometry at quadrature points
  kInterpolated,  ///< isoparametric: geometry interpolated with the basis
};

/// Tensor-product Lagrange elements (degree 1 = Q4, degree 2 = Q9) on the
/// chart's rectangular parameter domain.
class LagrangeShellDisc final : public ShellDiscretization {
 public:
  LagrangeShellDisc(std::shared_ptr<const Parametrization> chart, int degree, int nx,
                    int ny, GeometryMode mode);

  int n_elements() const override { return nx_ * ny_; }
  int n_nodes() const override { return npx_ * npy_; }
  int funcs_per_element() const override { return (degree_ + 1) * (degree_ + 1); }
  const std::vector<int>& element_nodes(int e) const override { return conn_[e]; }
  Shape shapes(int e, const Vector2d& local) const override;
  SurfacePoint geometry(int e, const Vector2d& local) const override;
  SurfacePoint reference_geometry(int e, const Vector2d& local) const override;
  Vector2d param_of(int e, const Vector2d& local) const override;
  Vector2d param_cell_size(int e) const override { return Vector2d(hx_, hy_); }
  int quad_points_1d() const override { return degree_ + 1; }
  double arc_coord(int e, const Vector2d& local) const override;
  void locate(const Vector2d& param, int& e, Vector2d& local) const override;
  std::vector<int> edge_nodes(int edge) const override;

  int degree() const { return degree_; }
  GeometryMode mode() const { return mode_; }

 private:
  std::shared_ptr<const Parametrization> chart_;
  int degree_, nx_, ny_, npx_, npy_;
  double x0_, y0_, hx_, hy_;
  GeometryMode mode_;
  std::vector<std::vector<int>> conn_;
  std::vector<Vector3d> node_pos_;  ///< chart positions (isoparametric mode)
};

/// NURBS patch discretization; the geometry is the patch itself, which
/// represents the cylinder exactly.
class NurbsShellDisc final : public ShellDiscretization {
 public:
  /// arc_radius: rescaled cylinder radius used to convert positions into the
  /// arc-length circumferential coordinate; pass 0 for non-cylindrical use.
  NurbsShellDisc(SplinePatch patch, double arc_radius);

  int n_elements() const override { return neu_ * nev_; }
  int n_nodes() const override { return patch_.nu * patch_.nv; }
  int funcs_per_element() const override {
    return (patch_.ku.degree + 1) * (patch_.kv.degree + 1);
  }
  const std::vector<int>& element_nodes(int e) const override { return conn_[e]; }
  Shape shapes(int e, const Vector2d& local) const override;
  SurfacePoint geometry(int e, const Vector2d& local) const override;
  Vector2d param_of(int e, const Vector2d& local) const override;
  Vector2d param_cell_size(int e) const override;
  int quad_points_1d() const override { return std::max(patch_.ku.degree, patch_.kv.degree) + 1; }
  double arc_coord(int e, const Vector2d& local) const override;
  void locate(const Vector2d& param, int& e, Vector2d& local) const override;
  std::vector<int> edge_nodes(int edge) const override;

  const SplinePatch& patch() const { return patch_; }
  /// Finds the parameter eta whose surface point sits at circumferential
  /// arc coordinate x2 (monotone bisection on the exact angle).
  double param_from_arc(double x2) const;

 private:
  SplinePatch patch_;
  double radius_;
  int neu_, nev_;
  std::vector<double> bu_, bv_;  ///< breakpoints
  std::vector<std::vector<int>> conn_;
};

}  // namespace rst
