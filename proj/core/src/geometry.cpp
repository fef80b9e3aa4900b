#include "rstshell/geometry.hpp"

#include <cmath>
#include <numbers>

namespace rst {

namespace {
constexpr double kDegenerateTol = 1e-10;
}

SurfacePoint surface_point_from_derivatives(const Vector3d& pos,
                                            const Vector3d& d1, const Vector3d& d2,
                                            const Vector3d& d11, const Vector3d& d12,
                                            const Vector3d& d22) {
  SurfacePoint sp;
  sp.position = pos;
  sp.t1 = d1;
  sp.t2 = d2;
  sp.r11 = d11;
  sp.r12 = d12;
  sp.r22 = d22;

  const Vector3d cross = d1.cross(d2);
  const double cross_norm = cross.norm();
  if (cross_norm < kDegenerateTol) {
    throw std::domain_error("degenerate chart: |t1 x t2| below tolerance");
  }
  sp.n = cross / cross_norm;

  sp.a(0, 0) = d1.dot(d1);
  sp.a(0, 1) = sp.a(1, 0) = d1.dot(d2);
  sp.a(1, 1) = d2.dot(d2);
  const double det_a = sp.a(0, 0) * sp.a(1, 1) - sp.a(0, 1) * sp.a(1, 0);
  sp.sqrt_a = std::sqrt(det_a);
  sp.a_inv(0, 0) = sp.a(1, 1) / det_a;
  sp.a_inv(1, 1) = sp.a(0, 0) / det_a;
  sp.a_inv(0, 1) = sp.a_inv(1, 0) = -sp.a(0, 1) / det_a;

  sp.b(0, 0) = d11.dot(sp.n);
  sp.b(0, 1) = sp.b(1, 0) = d12.dot(sp.n);
  sp.b(1, 1) = d22.dot(sp.n);

  sp.b_mixed = sp.a_inv * sp.b;
  sp.H = 0.5 * sp.b_mixed.trace();
  sp.K = sp.b.determinant() / det_a;
  sp.b_dev = sp.b_mixed - sp.H * Matrix2d::Identity();

  // Gamma^l_{ab} = a^{lm} (t_m . r_{,ab}); equivalent to the metric-derivative
  // formula for any immersed surface.
  for (int al = 0; al < 2; ++al) {
    for (int be = al; be < 2; ++be) {
      const Vector3d& rab = sp.second_deriv(al, be);
      const double c1 = d1.dot(rab);
      const double c2 = d2.dot(rab);
      for (int lm = 0; lm < 2; ++lm) {
        const double g = sp.a_inv(lm, 0) * c1 + sp.a_inv(lm, 1) * c2;
        sp.christoffel[lm][al][be] = g;
        sp.christoffel[lm][be][al] = g;
      }
    }
  }
  return sp;
}

CylinderChart::CylinderChart(double radius, double length)
    : radius_(radius), length_(length) {
  if (radius <= 0.0 || length <= 0.0) {
    throw std::invalid_argument("cylinder chart requires positive radius and length");
  }
}

double CylinderChart::circumference() const { return std::numbers::pi * radius_; }

Vector2d CylinderChart::domain_max() const { return Vector2d(length_, circumference()); }

void CylinderChart::eval(const Vector2d& x, Vector3d& pos, Vector3d& d1, Vector3d& d2,
                         Vector3d& d11, Vector3d& d12, Vector3d& d22) const {
  const double th = x[1] / radius_;
  const double c = std::cos(th);
  const double s = std::sin(th);
  pos = Vector3d(-x[0], radius_ * c, radius_ * s);
  d1 = Vector3d(-1.0, 0.0, 0.0);
  d2 = Vector3d(0.0, -s, c);
  d11 = Vector3d::Zero();
  d12 = Vector3d::Zero();
  d22 = Vector3d(0.0, -c / radius_, -s / radius_);
}

bool CylinderChart::contains(const Vector2d& x) const {
  const double w = circumference();
  return x[0] >= 0.0 && x[0] <= length_ && x[1] >= 0.0 && x[1] <= w;
}

FlatRectangleChart::FlatRectangleChart(double lx, double ly) : lx_(lx), ly_(ly) {
  if (lx <= 0.0 || ly <= 0.0) {
    throw std::invalid_argument("flat chart requires positive side lengths");
  }
}

void FlatRectangleChart::eval(const Vector2d& x, Vector3d& pos, Vector3d& d1, Vector3d& d2,
                              Vector3d& d11, Vector3d& d12, Vector3d& d22) const {
  pos = Vector3d(x[0], x[1], 0.0);
  d1 = Vector3d(1.0, 0.0, 0.0);
  d2 = Vector3d(0.0, 1.0, 0.0);
  d11 = Vector3d::Zero();
  d12 = Vector3d::Zero();
  d22 = Vector3d::Zero();
}

bool FlatRectangleChart::contains(const Vector2d& x) const {
  return x[0] >= 0.0 && x[0] <= lx_ && x[1] >= 0.0 && x[1] <= ly_;
}

UserChart::UserChart(MapFn value, MapFn d1, MapFn d2, MapFn d11, MapFn d12, MapFn d22,
                     Vector2d lo, Vector2d hi)
    : value_(std::move(value)),
      d1_(std::move(d1)),
      d2_(std::move(d2)),
      d11_(std::move(d11)),
      d12_(std::move(d12)),
      d22_(std::move(d22)),
      lo_(lo),
      hi_(hi) {}

void UserChart::eval(const Vector2d& x, Vector3d& pos, Vector3d& d1, Vector3d& d2,
                     Vector3d& d11, Vector3d& d12, Vector3d& d22) const {
  pos = value_(x);
  d1 = d1_(x);
  d2 = d2_(x);
  d11 = d11_(x);
  d12 = d12_(x);
  d22 = d22_(x);
}

bool UserChart::contains(const Vector2d& x) const {
  return x[0] >= lo_[0] && x[0] <= hi_[0] && x[1] >= lo_[1] && x[1] <= hi_[1];
}

SurfacePoint evaluate_geometry(const Parametrization& chart, const Vector2d& x) {
  if (!chart.contains(x)) {
    throw std::domain_error("evaluate_geometry: point outside chart domain");
  }
  Vector3d pos, d1, d2, d11, d12, d22;
  chart.eval(x, pos, d1, d2, d11, d12, d22);
  return surface_point_from_derivatives(pos, d1, d2, d11, d12, d22);
}

Matrix2d rescale_second_form(const Matrix2d& b_physical, double h) {
  if (h <= 0.0) {
    throw std::invalid_argument("rescale_second_form: thickness must be positive");
  }
  return h * b_physical;
}

}  // namespace rst
