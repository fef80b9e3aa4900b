#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <stdexcept>

namespace rst {

using Eigen::Matrix2d;
using Eigen::Vector2d;
using Eigen::Vector3d;

/// Full differential-geometric state of a mid-surface point, in rescaled
/// units (lengths divided by the shell thickness, second fundamental form
/// multiplied by it). Everything downstream -- strain measures, energy
/// densities, B-matrices -- consumes this struct.
struct SurfacePoint {
  Vector3d position;
  Vector3d t1, t2;   ///< tangents r_{,1}, r_{,2}
  Vector3d n;        ///< unit normal
  Vector3d r11, r12, r22;  ///< second derivatives of the chart map

  Matrix2d a;        ///< metric a_{ab} = t_a . t_b
  Matrix2d a_inv;
  double sqrt_a = 0.0;

  Matrix2d b;        ///< second fundamental form b_{ab} = r_{,ab} . n
  Matrix2d b_mixed;  ///< b^l_a = a^{lm} b_{ma}, stored (l, a)
  Matrix2d b_dev;    ///< deviator b'^l_a = b^l_a - H d^l_a (mixed indices)
  double H = 0.0;    ///< mean curvature, tr(b_mixed)/2
  double K = 0.0;    ///< Gaussian curvature, det(b)/det(a)

  /// christoffel[l][a][b] = Gamma^l_{ab}; symmetric in (a, b).
  double christoffel[2][2][2] = {};

  /// Second derivative of the chart by symmetric index pair (0,0),(0,1),(1,1).
  const Vector3d& second_deriv(int alpha, int beta) const {
    if (alpha == 0 && beta == 0) return r11;
    if (alpha == 1 && beta == 1) return r22;
    return r12;
  }
};

/// Builds a SurfacePoint from the chart value and its first/second
/// derivatives at a parametric point. Throws std::domain_error when the
/// tangents are (numerically) parallel.
SurfacePoint surface_point_from_derivatives(const Vector3d& pos,
                                            const Vector3d& d1, const Vector3d& d2,
                                            const Vector3d& d11, const Vector3d& d12,
                                            const Vector3d& d22);

/// A C^2 parametric chart of the mid-surface, rescaled coordinates.
class Parametrization {
 public:
  virtual ~Parametrization() = default;

  /// Chart value and analytic derivatives at x.
  virtual void eval(const Vector2d& x, Vector3d& pos, Vector3d& d1, Vector3d& d2,
                    Vector3d& d11, Vector3d& d12, Vector3d& d22) const = 0;

  virtual bool contains(const Vector2d& x) const = 0;
  virtual Vector2d domain_min() const = 0;
  virtual Vector2d domain_max() const = 0;
};

/// Semi-cylinder of rescaled radius R: r(x) = (-x1, R cos(x2/R), R sin(x2/R)),
/// x1 in [0, L], x2 in [0, pi R]. Metric is the identity, Christoffel symbols
/// vanish, b22 = -1/R.
class CylinderChart final : public Parametrization {
 public:
  CylinderChart(double radius, double length);

  void eval(const Vector2d& x, Vector3d& pos, Vector3d& d1, Vector3d& d2,
            Vector3d& d11, Vector3d& d12, Vector3d& d22) const override;
  bool contains(const Vector2d& x) const override;
  Vector2d domain_min() const override { return Vector2d::Zero(); }
  Vector2d domain_max() const override;

  double radius() const { return radius_; }
  double length() const { return length_; }
  double circumference() const;  ///< W = pi R

 private:
  double radius_;
  double length_;
};

/// Flat rectangle [0, Lx] x [0, Ly] in the (e1, e2) plane.
class FlatRectangleChart final : public Parametrization {
 public:
  FlatRectangleChart(double lx, double ly);

  void eval(const Vector2d& x, Vector3d& pos, Vector3d& d1, Vector3d& d2,
            Vector3d& d11, Vector3d& d12, Vector3d& d22) const override;
  bool contains(const Vector2d& x) const override;
  Vector2d domain_min() const override { return Vector2d::Zero(); }
  Vector2d domain_max() const override { return Vector2d(lx_, ly_); }

 private:
  double lx_, ly_;
};

/// User-supplied chart: callbacks for the map and its first and second
/// derivatives on a rectangular parameter box. No symbolic differentiation is
/// attempted; the caller owns correctness of the derivatives.
class UserChart final : public Parametrization {
 public:
  using MapFn = std::function<Vector3d(const Vector2d&)>;

  UserChart(MapFn value, MapFn d1, MapFn d2, MapFn d11, MapFn d12, MapFn d22,
            Vector2d lo, Vector2d hi);

  void eval(const Vector2d& x, Vector3d& pos, Vector3d& d1, Vector3d& d2,
            Vector3d& d11, Vector3d& d12, Vector3d& d22) const override;
  bool contains(const Vector2d& x) const override;
  Vector2d domain_min() const override { return lo_; }
  Vector2d domain_max() const override { return hi_; }

 private:
  MapFn value_, d1_, d2_, d11_, d12_, d22_;
  Vector2d lo_, hi_;
};

/// Evaluates the full geometric state at a chart point.
/// Throws std::domain_error if x lies outside the chart domain or the chart
/// is degenerate there.
SurfacePoint evaluate_geometry(const Parametrization& chart, const Vector2d& x);

/// Rescaling of the second fundamental form, b_bar = h * b_physical.
/// The metric is unchanged by the thickness rescaling.
Matrix2d rescale_second_form(const Matrix2d& b_physical, double h);

}  // namespace rst
