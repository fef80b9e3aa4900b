#pragma once

#include "rstshell/geometry.hpp"

namespace rst {

/// Isotropic material in rescaled form. The shear modulus and the thickness
/// are scaled out of the functional, so only Poisson's ratio survives;
/// sigma = nu / (1 - nu) is the coefficient appearing throughout the
/// rescaled energy.
struct Material {
  double nu = 0.3;

  explicit Material(double poisson) : nu(poisson) {
    if (!(nu > -1.0 && nu < 0.5)) {
      throw std::invalid_argument("material: Poisson ratio must lie in (-1, 0.5)");
    }
  }
  double sigma() const { return nu / (1.0 - nu); }
};

/// Extension, bending and shear-rotation measures at a point (rescaled).
struct StrainMeasureSet {
  Matrix2d gamma = Matrix2d::Zero();  ///< covariant, symmetric
  Matrix2d rho = Matrix2d::Zero();    ///< covariant, symmetric
  Vector2d phi = Vector2d::Zero();    ///< covariant shear rotation
};

/// Membrane force, bending moment and shear force (rescaled, per unit
/// mu*h; contravariant components, dual to the covariant measures).
struct StressResultantSet {
  Matrix2d n = Matrix2d::Zero();
  Matrix2d m = Matrix2d::Zero();
  Vector2d q = Vector2d::Zero();
};

/// Rescaled face loads: f/g are the sum/difference of the normal tractions
/// on the two faces, f_t/g_t the covariant tangential components. All
/// entries carry the h/mu scaling applied at configuration time.
struct LoadSet {
  double f = 0.0, g = 0.0;
  Vector2d f_t = Vector2d::Zero();
  Vector2d g_t = Vector2d::Zero();
};

/// Local field state in chart components used to form the measures:
/// values of (u_alpha, u, psi_alpha) and their first chart partials.
struct PointState {
  Vector2d u_t = Vector2d::Zero();     ///< u_alpha
  double u = 0.0;                      ///< normal displacement
  Vector2d psi = Vector2d::Zero();     ///< psi_alpha
  Matrix2d du_t = Matrix2d::Zero();    ///< du_t(a,b) = u_{a,b}
  Vector2d du = Vector2d::Zero();      ///< u_{,a}
  Matrix2d dpsi = Matrix2d::Zero();    ///< dpsi(a,b) = psi_{a,b}
};

/// gamma_{ab} = u_{(a;b)} - b_{ab} u,
/// rho_{ab}   = -psi_{(a;b)} + b^l_{(a} varpi_{b)l},
/// phi_a      = u_{,a} + u_l b^l_a + psi_a.
StrainMeasureSet strain_measures(const PointState& s, const SurfacePoint& g);

/// Rescaled energy density Phi = Phi_cl + Phi_gc + Phi_sc.
double energy_density(const StrainMeasureSet& s, const SurfacePoint& g, const Material& mat);

/// n = dPhi/dgamma, m = dPhi/drho, q = dPhi/dphi (contravariant), including
/// all deviator/mean-curvature couplings of the geometric correction.
StressResultantSet stress_resultants(const StrainMeasureSet& s, const SurfacePoint& g,
                                     const Material& mat);

/// Rescaled external work density, all terms: the (f - Hg) normal and
/// (f^a - Hg^a) tangential loads, the g^a gradient coupling, the
/// sigma-coupled gamma- and rho-trace terms and the g^a phi term.
/// Covariant divergences of the (constant) tangential loads are formed from
/// the Christoffel symbols of the chart.
double external_work_density(const PointState& s, const SurfacePoint& g,
                             const LoadSet& loads, const Material& mat);

/// a^{ab} T_{ab} for a covariant symmetric tensor.
inline double trace_mixed(const Matrix2d& a_inv, const Matrix2d& cov) {
  return (a_inv * cov).trace();
}

}  // namespace rst
