#include "rstshell/shellcore.hpp"

namespace rst {

namespace {

// Covariant divergence of a constant covariant vector field: with v_a
// constant, v^l_{;l} = a^{lm} v_{m;l} = -a^{lm} Gamma^k_{ml} v_k.
double constant_field_divergence(const Vector2d& v_cov, const SurfacePoint& g) {
  double div = 0.0;
  for (int l = 0; l < 2; ++l) {
    for (int m = 0; m < 2; ++m) {
      for (int k = 0; k < 2; ++k) {
        div -= g.a_inv(l, m) * g.christoffel[k][m][l] * v_cov[k];
      }
    }
  }
  return div;
}

}  // namespace

StrainMeasureSet strain_measures(const PointState& s, const SurfacePoint& g) {
  StrainMeasureSet out;

  // covariant derivatives u_{a;b} = u_{a,b} - Gamma^l_{ab} u_l
  Matrix2d ucov, pcov;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      double gu = 0.0, gp = 0.0;
      for (int l = 0; l < 2; ++l) {
        gu += g.christoffel[l][a][b] * s.u_t[l];
        gp += g.christoffel[l][a][b] * s.psi[l];
      }
      ucov(a, b) = s.du_t(a, b) - gu;
      pcov(a, b) = s.dpsi(a, b) - gp;
    }
  }

  out.gamma = 0.5 * (ucov + ucov.transpose()) - g.b * s.u;

  // varpi_{ab} = (u_{b,a} - u_{a,b}) / 2 (plain partials)
  Matrix2d varpi = 0.5 * (s.du_t.transpose() - s.du_t);
  // T_{ab} = b^l_a varpi_{bl} = (varpi * b_mixed)^T evaluated entrywise
  Matrix2d bw;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      double acc = 0.0;
      for (int l = 0; l < 2; ++l) acc += g.b_mixed(l, a) * varpi(b, l);
      bw(a, b) = acc;
    }
  }
  out.rho = -0.5 * (pcov + pcov.transpose()) + 0.5 * (bw + bw.transpose());

  for (int a = 0; a < 2; ++a) {
    double coup = 0.0;
    for (int l = 0; l < 2; ++l) coup += s.u_t[l] * g.b_mixed(l, a);
    out.phi[a] = s.du[a] + coup + s.psi[a];
  }
  return out;
}

double energy_density(const StrainMeasureSet& s, const SurfacePoint& g, const Material& mat) {
  const double sig = mat.sigma();
  const Matrix2d& ai = g.a_inv;
  const Matrix2d gamma_up = ai * s.gamma * ai;  // gamma^{ab}
  const Matrix2d rho_up = ai * s.rho * ai;
  const double tr_g = (ai * s.gamma).trace();
  const double tr_r = (ai * s.rho).trace();

  const double phi_cl = sig * tr_g * tr_g + (s.gamma * gamma_up).trace() +
                        (sig * tr_r * tr_r + (s.rho * rho_up).trace()) / 12.0;

  // rho^{ab} b'^l_a gamma_{bl} = tr(rho_up * gamma * b_dev)
  const double t1 = (rho_up * s.gamma * g.b_dev).trace();
  const double t2 = sig * (rho_up * g.b).trace() * tr_g;
  const Matrix2d b_up = ai * g.b * ai;
  const double t3 = 0.6 * sig * tr_r * (b_up * s.gamma).trace();
  const double t4 = sig * (1.2 * sig - 1.0) * tr_r * g.H * tr_g;
  const double phi_gc = -(t1 + t2 + t3 + t4) / 3.0;

  const double phi_sc = (5.0 / 12.0) * s.phi.dot(ai * s.phi);

  return phi_cl + phi_gc + phi_sc;
}

StressResultantSet stress_resultants(const StrainMeasureSet& s, const SurfacePoint& g,
                                     const Material& mat) {
  const double sig = mat.sigma();
  const Matrix2d& ai = g.a_inv;
  const Matrix2d gamma_up = ai * s.gamma * ai;
  const Matrix2d rho_up = ai * s.rho * ai;
  const double tr_g = (ai * s.gamma).trace();
  const double tr_r = (ai * s.rho).trace();
  const Matrix2d b_up = ai * g.b * ai;

  // rho^{(a l} b'^{b)}_l: (rho_up * b_dev^T) symmetrized; b_dev(l, a) = b'^l_a.
  const Matrix2d rb = rho_up * g.b_dev.transpose();
  const Matrix2d rb_sym = 0.5 * (rb + rb.transpose());
  const Matrix2d gb = gamma_up * g.b_dev.transpose();
  const Matrix2d gb_sym = 0.5 * (gb + gb.transpose());

  StressResultantSet out;
  out.n = 2.0 * (sig * tr_g * ai + gamma_up) -
          (rb_sym + sig * ((rho_up * g.b).trace() + (1.2 * sig - 1.0) * g.H * tr_r) * ai +
           0.6 * sig * tr_r * b_up) /
              3.0;
  out.m = (sig * tr_r * ai + rho_up) / 6.0 -
          (gb_sym + sig * (0.6 * (gamma_up * g.b).trace() + (1.2 * sig - 1.0) * g.H * tr_g) * ai +
           sig * tr_g * b_up) /
              3.0;
  out.q = (5.0 / 6.0) * (ai * s.phi);
  return out;
}

double external_work_density(const PointState& s, const SurfacePoint& g,
                             const LoadSet& loads, const Material& mat) {
  const double sig = mat.sigma();
  const Matrix2d& ai = g.a_inv;
  const StrainMeasureSet meas = strain_measures(s, g);

  const double f_div = constant_field_divergence(loads.f_t, g);
  const double g_div = constant_field_divergence(loads.g_t, g);

  // (f^a - H g^a) u_a + (f - H g) u
  const Vector2d fg_up = ai * (loads.f_t - g.H * loads.g_t);
  double work = fg_up.dot(s.u_t) + (loads.f - g.H * loads.g) * s.u;

  // (1/2) g^a (u_{,a} + u_l b^l_a)
  Vector2d grad_u = s.du;
  for (int a = 0; a < 2; ++a) {
    for (int l = 0; l < 2; ++l) grad_u[a] += s.u_t[l] * g.b_mixed(l, a);
  }
  const Vector2d g_up = ai * loads.g_t;
  work += 0.5 * g_up.dot(grad_u);

  const double tr_g = (ai * meas.gamma).trace();
  const double tr_r = (ai * meas.rho).trace();
  work -= 0.5 * sig * (loads.g + f_div / 6.0) * tr_g;
  work += 0.1 * sig * (loads.f + g_div / 12.0) * tr_r;

  // (1/12) g^a phi_a
  work += g_up.dot(meas.phi) / 12.0;
  return work;
}

}  // namespace rst
