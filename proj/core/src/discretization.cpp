#include "rstshell/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rst {

LagrangeShellDisc::LagrangeShellDisc(std::shared_ptr<const Parametrization> chart,
                                     int degree, int nx, int ny, GeometryMode mode)
    : chart_(std::move(chart)), degree_(degree), nx_(nx), ny_(ny), mode_(mode) {
  if (degree != 1 && degree != 2) {
    throw std::invalid_argument("lagrange discretization: degree must be 1 or 2");
  }
  if (nx < 1 || ny < 1) throw std::invalid_argument("lagrange discretization: empty mesh");
  const Vector2d lo = chart_->domain_min();
  const Vector2d hi = chart_->domain_max();
  x0_ = lo[0];
  y0_ = lo[1];
  hx_ = (hi[0] - lo[0]) / nx;
  hy_ = (hi[1] - lo[1]) / ny;
  npx_ = nx * degree + 1;
  npy_ = ny * degree + 1;

  node_pos_.resize(n_nodes());
  for (int i = 0; i < npx_; ++i) {
    for (int j = 0; j < npy_; ++j) {
      const Vector2d xp(x0_ + hx_ * i / degree, y0_ + hy_ * j / degree);
      Vector3d pos, d1, d2, d11, d12, d22;
      chart_->eval(xp, pos, d1, d2, d11, d12, d22);
      node_pos_[i * npy_ + j] = pos;
    }
  }
  conn_.resize(n_elements());
  for (int ex = 0; ex < nx; ++ex) {
    for (int ey = 0; ey < ny; ++ey) {
      auto& c = conn_[ex * ny + ey];
      c.reserve(funcs_per_element());
      for (int i = 0; i <= degree; ++i) {
        for (int j = 0; j <= degree; ++j) {
          c.push_back((ex * degree + i) * npy_ + (ey * degree + j));
        }
      }
    }
  }
}

LagrangeShellDisc::Shape LagrangeShellDisc::shapes(int e, const Vector2d& local) const {
  const int nn = funcs_per_element();
  Shape s;
  s.N.resize(nn);
  s.dN.resize(nn, 2);
  s.d2N.resize(nn, 3);
  double vx[3], dx[3], ddx[3], vy[3], dy[3], ddy[3];
  lagrange1d(degree_, 2.0 * local[0] - 1.0, vx, dx, ddx);
  lagrange1d(degree_, 2.0 * local[1] - 1.0, vy, dy, ddy);
  const double sx = 2.0 / hx_, sy = 2.0 / hy_;
  int k = 0;
  for (int i = 0; i <= degree_; ++i) {
    for (int j = 0; j <= degree_; ++j, ++k) {
      s.N[k] = vx[i] * vy[j];
      s.dN(k, 0) = dx[i] * vy[j] * sx;
      s.dN(k, 1) = vx[i] * dy[j] * sy;
      s.d2N(k, 0) = ddx[i] * vy[j] * sx * sx;
      s.d2N(k, 1) = dx[i] * dy[j] * sx * sy;
      s.d2N(k, 2) = vx[i] * ddy[j] * sy * sy;
    }
  }
  return s;
}

Vector2d LagrangeShellDisc::param_of(int e, const Vector2d& local) const {
  const int ex = e / ny_, ey = e % ny_;
  return Vector2d(x0_ + (ex + local[0]) * hx_, y0_ + (ey + local[1]) * hy_);
}

SurfacePoint LagrangeShellDisc::reference_geometry(int e, const Vector2d& local) const {
  return evaluate_geometry(*chart_, param_of(e, local));
}

SurfacePoint LagrangeShellDisc::geometry(int e, const Vector2d& local) const {
  if (mode_ == GeometryMode::kAnalytic) return reference_geometry(e, local);
  const Shape s = shapes(e, local);
  const auto& c = conn_[e];
  Vector3d pos = Vector3d::Zero(), d1 = Vector3d::Zero(), d2 = Vector3d::Zero();
  Vector3d d11 = Vector3d::Zero(), d12 = Vector3d::Zero(), d22 = Vector3d::Zero();
  for (int k = 0; k < s.N.size(); ++k) {
    const Vector3d& X = node_pos_[c[k]];
    pos += s.N[k] * X;
    d1 += s.dN(k, 0) * X;
    d2 += s.dN(k, 1) * X;
    d11 += s.d2N(k, 0) * X;
    d12 += s.d2N(k, 1) * X;
    d22 += s.d2N(k, 2) * X;
  }
  return surface_point_from_derivatives(pos, d1, d2, d11, d12, d22);
}

double LagrangeShellDisc::arc_coord(int e, const Vector2d& local) const {
  return param_of(e, local)[1];
}

void LagrangeShellDisc::locate(const Vector2d& param, int& e, Vector2d& local) const {
  const double fx = (param[0] - x0_) / hx_;
  const double fy = (param[1] - y0_) / hy_;
  const int ex = std::clamp(static_cast<int>(std::floor(fx)), 0, nx_ - 1);
  const int ey = std::clamp(static_cast<int>(std::floor(fy)), 0, ny_ - 1);
  e = ex * ny_ + ey;
  local = Vector2d(fx - ex, fy - ey);
}

std::vector<int> LagrangeShellDisc::edge_nodes(int edge) const {
  std::vector<int> out;
  switch (edge) {
    case 0:
      for (int j = 0; j < npy_; ++j) out.push_back(j);
      break;
    case 1:
      for (int j = 0; j < npy_; ++j) out.push_back((npx_ - 1) * npy_ + j);
      break;
    case 2:
      for (int i = 0; i < npx_; ++i) out.push_back(i * npy_);
      break;
    case 3:
      for (int i = 0; i < npx_; ++i) out.push_back(i * npy_ + npy_ - 1);
      break;
    default:
      throw std::invalid_argument("edge_nodes: edge must be 0..3");
  }
  return out;
}

NurbsShellDisc::NurbsShellDisc(SplinePatch patch, double arc_radius)
    : patch_(std::move(patch)), radius_(arc_radius) {
  patch_.validate();
  bu_ = patch_.ku.breakpoints();
  bv_ = patch_.kv.breakpoints();
  neu_ = static_cast<int>(bu_.size()) - 1;
  nev_ = static_cast<int>(bv_.size()) - 1;
  conn_.resize(n_elements());
  for (int eu = 0; eu < neu_; ++eu) {
    const int su = patch_.ku.find_span(0.5 * (bu_[eu] + bu_[eu + 1]));
    for (int ev = 0; ev < nev_; ++ev) {
      const int sv = patch_.kv.find_span(0.5 * (bv_[ev] + bv_[ev + 1]));
      auto& c = conn_[eu * nev_ + ev];
      for (int i = 0; i <= patch_.ku.degree; ++i) {
        for (int j = 0; j <= patch_.kv.degree; ++j) {
          c.push_back((su - patch_.ku.degree + i) * patch_.nv + (sv - patch_.kv.degree + j));
        }
      }
    }
  }
}

Vector2d NurbsShellDisc::param_of(int e, const Vector2d& local) const {
  const int eu = e / nev_, ev = e % nev_;
  return Vector2d(bu_[eu] + local[0] * (bu_[eu + 1] - bu_[eu]),
                  bv_[ev] + local[1] * (bv_[ev + 1] - bv_[ev]));
}

Vector2d NurbsShellDisc::param_cell_size(int e) const {
  const int eu = e / nev_, ev = e % nev_;
  return Vector2d(bu_[eu + 1] - bu_[eu], bv_[ev + 1] - bv_[ev]);
}

NurbsShellDisc::Shape NurbsShellDisc::shapes(int e, const Vector2d& local) const {
  const Vector2d xi = param_of(e, local);
  const auto se = patch_.shapes(xi[0], xi[1]);
  const int nn = se.count_u * se.count_v;
  Shape s;
  s.N.resize(nn);
  s.dN.resize(nn, 2);
  s.d2N.resize(nn, 3);
  for (int k = 0; k < nn; ++k) {
    s.N[k] = se.R[k];
    s.dN(k, 0) = se.R1[k];
    s.dN(k, 1) = se.R2[k];
    s.d2N(k, 0) = se.R11[k];
    s.d2N(k, 1) = se.R12[k];
    s.d2N(k, 2) = se.R22[k];
  }
  return s;
}

SurfacePoint NurbsShellDisc::geometry(int e, const Vector2d& local) const {
  const Vector2d xi = param_of(e, local);
  const auto ev = patch_.eval(xi[0], xi[1]);
  return surface_point_from_derivatives(ev.S, ev.S1, ev.S2, ev.S11, ev.S12, ev.S22);
}

double NurbsShellDisc::arc_coord(int e, const Vector2d& local) const {
  const Vector2d xi = param_of(e, local);
  const auto ev = patch_.eval(xi[0], xi[1]);
  const double theta = std::atan2(ev.S[2], ev.S[1]);
  return radius_ * theta;
}

void NurbsShellDisc::locate(const Vector2d& param, int& e, Vector2d& local) const {
  auto find_cell = [](const std::vector<double>& b, double x, double& frac) {
    const int n = static_cast<int>(b.size()) - 1;
    int c = 0;
    while (c + 1 < n && x >= b[c + 1]) ++c;
    frac = (x - b[c]) / (b[c + 1] - b[c]);
    return c;
  };
  double fu = 0.0, fv = 0.0;
  const int eu = find_cell(bu_, param[0], fu);
  const int ev = find_cell(bv_, param[1], fv);
  e = eu * nev_ + ev;
  local = Vector2d(std::clamp(fu, 0.0, 1.0), std::clamp(fv, 0.0, 1.0));
}

std::vector<int> NurbsShellDisc::edge_nodes(int edge) const {
  std::vector<int> out;
  switch (edge) {
    case 0:
      for (int j = 0; j < patch_.nv; ++j) out.push_back(j);
      break;
    case 1:
      for (int j = 0; j < patch_.nv; ++j) out.push_back((patch_.nu - 1) * patch_.nv + j);
      break;
    case 2:
      for (int i = 0; i < patch_.nu; ++i) out.push_back(i * patch_.nv);
      break;
    case 3:
      for (int i = 0; i < patch_.nu; ++i) out.push_back(i * patch_.nv + patch_.nv - 1);
      break;
    default:
      throw std::invalid_argument("edge_nodes: edge must be 0..3");
  }
  return out;
}

double NurbsShellDisc::param_from_arc(double x2) const {
  const double target = x2 / radius_;  // angle
  double lo = 0.0, hi = 1.0;
  auto angle_at = [&](double eta) {
    const auto ev = patch_.eval(0.0, eta);
    return std::atan2(ev.S[2], ev.S[1]);
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (angle_at(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rst
