#include "rstshell/assembly.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace rst {

ElementContext build_element_context(const ShellDiscretization& disc, int e) {
  ElementContext ctx;
  ctx.element = e;
  ctx.nodes = disc.element_nodes(e);
  const int nq = disc.quad_points_1d();
  const GaussRule gr = gauss_legendre(nq);
  const Vector2d cell = disc.param_cell_size(e);
  ctx.qps.reserve(nq * nq);
  for (int i = 0; i < nq; ++i) {
    for (int j = 0; j < nq; ++j) {
      ElementContext::QuadPoint qp;
      const Vector2d local(0.5 * (gr.x[i] + 1.0), 0.5 * (gr.x[j] + 1.0));
      qp.param = disc.param_of(e, local);
      qp.shape = disc.shapes(e, local);
      qp.geom = disc.geometry(e, local);
      if (qp.geom.sqrt_a <= 0.0) {
        throw std::domain_error("element context: nonpositive surface jacobian");
      }
      qp.weight = 0.25 * gr.w[i] * gr.w[j] * cell[0] * cell[1] * qp.geom.sqrt_a;
      ctx.qps.push_back(std::move(qp));
    }
  }
  return ctx;
}

BMatrices build_b_matrices(const ElementContext& ctx, int qp) {
  const auto& q = ctx.qps[qp];
  const SurfacePoint& g = q.geom;
  const auto& sh = q.shape;
  const int nn = ctx.nn();

  BMatrices B;
  B.Bn.setZero(3, 3 * nn);
  B.Bm_u.setZero(3, 3 * nn);
  B.Bm_psi.setZero(3, 2 * nn);
  B.Bq_u.setZero(2, 3 * nn);
  B.Bq_psi.setZero(2, 2 * nn);
  B.Nu_n.setZero(3 * nn);
  B.Nu_t.setZero(2, 3 * nn);
  B.Npsi.setZero(2, 2 * nn);

  const Vector3d t[2] = {g.t1, g.t2};

  for (int a = 0; a < nn; ++a) {
    const double N = sh.N[a];
    const double N1 = sh.dN(a, 0), N2 = sh.dN(a, 1);
    const double Nd[2] = {N1, N2};
    for (int k = 0; k < 3; ++k) {
      const int col = 3 * a + k;
      const double c1[2] = {t[0][k], t[1][k]};
      const double cn = g.n[k];

      B.Nu_n[col] = cn * N;
      B.Nu_t(0, col) = c1[0] * N;
      B.Nu_t(1, col) = c1[1] * N;

      // delta u_{al;be} = (t_{al,be}.e_k) N + (t_al.e_k) N_{,be}
      //                   - Gamma^l_{al be} (t_l.e_k) N
      double ducov[2][2];
      for (int al = 0; al < 2; ++al) {
        for (int be = 0; be < 2; ++be) {
          double v = g.second_deriv(al, be)[k] * N + c1[al] * Nd[be];
          for (int l = 0; l < 2; ++l) v -= g.christoffel[l][al][be] * c1[l] * N;
          ducov[al][be] = v;
        }
      }
      // delta gamma
      const double dg11 = ducov[0][0] - g.b(0, 0) * cn * N;
      const double dg22 = ducov[1][1] - g.b(1, 1) * cn * N;
      const double dg12 = 0.5 * (ducov[0][1] + ducov[1][0]) - g.b(0, 1) * cn * N;
      B.Bn(0, col) = dg11;
      B.Bn(1, col) = dg22;
      B.Bn(2, col) = 2.0 * dg12;

      // delta varpi_{al be} = (c1_be N_{,al} - c1_al N_{,be}) / 2
      double dw[2][2];
      for (int al = 0; al < 2; ++al) {
        for (int be = 0; be < 2; ++be) {
          dw[al][be] = 0.5 * (c1[be] * Nd[al] - c1[al] * Nd[be]);
        }
      }
      // delta rho (u part) = b^l_(al varpi_be)l
      double dr[2][2] = {{0, 0}, {0, 0}};
      for (int al = 0; al < 2; ++al) {
        for (int be = 0; be < 2; ++be) {
          double v = 0.0;
          for (int l = 0; l < 2; ++l) {
            v += 0.5 * (g.b_mixed(l, al) * dw[be][l] + g.b_mixed(l, be) * dw[al][l]);
          }
          dr[al][be] = v;
        }
      }
      B.Bm_u(0, col) = dr[0][0];
      B.Bm_u(1, col) = dr[1][1];
      B.Bm_u(2, col) = dr[0][1] + dr[1][0];

      // delta phi (u part) = (n.e_k) N_{,al}; the Weingarten terms cancel
      B.Bq_u(0, col) = cn * N1;
      B.Bq_u(1, col) = cn * N2;
    }

    for (int j = 0; j < 2; ++j) {
      const int col = 2 * a + j;
      B.Npsi(j, col) = N;
      // delta psi_{al;be} = delta_{al j} N_{,be} - Gamma^j_{al be} N
      double dp[2][2];
      for (int al = 0; al < 2; ++al) {
        for (int be = 0; be < 2; ++be) {
          dp[al][be] = (al == j ? Nd[be] : 0.0) - g.christoffel[j][al][be] * N;
        }
      }
      // Bm_psi holds +psi_{(al;be)}; the minus sign is applied at use sites.
      B.Bm_psi(0, col) = dp[0][0];
      B.Bm_psi(1, col) = dp[1][1];
      B.Bm_psi(2, col) = dp[0][1] + dp[1][0];
      B.Bq_psi(j, col) = N;
    }
  }
  return B;
}

Eigen::MatrixXd measure_operator(const BMatrices& b) {
  const int nu = static_cast<int>(b.Bn.cols());
  const int np = static_cast<int>(b.Bm_psi.cols());
  Eigen::MatrixXd M(8, nu + np);
  M.setZero();
  M.block(0, 0, 3, nu) = b.Bn;
  M.block(3, 0, 3, nu) = b.Bm_u;
  M.block(3, nu, 3, np) = -b.Bm_psi;
  M.block(6, 0, 2, nu) = b.Bq_u;
  M.block(6, nu, 2, np) = b.Bq_psi;
  return M;
}

Eigen::Matrix<double, 8, 8> constitutive_matrix(const SurfacePoint& g, const Material& mat) {
  Eigen::Matrix<double, 8, 8> Q;
  for (int j = 0; j < 8; ++j) {
    StrainMeasureSet s;
    Eigen::Matrix<double, 8, 1> sv = Eigen::Matrix<double, 8, 1>::Zero();
    sv[j] = 1.0;
    s.gamma << sv[0], 0.5 * sv[2], 0.5 * sv[2], sv[1];
    s.rho << sv[3], 0.5 * sv[5], 0.5 * sv[5], sv[4];
    s.phi << sv[6], sv[7];
    const StressResultantSet r = stress_resultants(s, g, mat);
    Q(0, j) = r.n(0, 0);
    Q(1, j) = r.n(1, 1);
    Q(2, j) = r.n(0, 1);
    Q(3, j) = r.m(0, 0);
    Q(4, j) = r.m(1, 1);
    Q(5, j) = r.m(0, 1);
    Q(6, j) = r.q[0];
    Q(7, j) = r.q[1];
  }
  return Q;
}

PointState point_state_at(const ElementContext& ctx, int qp, const Eigen::VectorXd& d_elem) {
  const auto& q = ctx.qps[qp];
  const SurfacePoint& g = q.geom;
  const auto& sh = q.shape;
  const int nn = ctx.nn();

  Vector3d u3 = Vector3d::Zero();
  Vector3d du3[2] = {Vector3d::Zero(), Vector3d::Zero()};
  PointState st;
  for (int a = 0; a < nn; ++a) {
    const Vector3d ua(d_elem[3 * a], d_elem[3 * a + 1], d_elem[3 * a + 2]);
    u3 += sh.N[a] * ua;
    du3[0] += sh.dN(a, 0) * ua;
    du3[1] += sh.dN(a, 1) * ua;
    for (int j = 0; j < 2; ++j) {
      const double pa = d_elem[3 * nn + 2 * a + j];
      st.psi[j] += sh.N[a] * pa;
      st.dpsi(j, 0) += sh.dN(a, 0) * pa;
      st.dpsi(j, 1) += sh.dN(a, 1) * pa;
    }
  }
  const Vector3d t[2] = {g.t1, g.t2};
  st.u_t = Vector2d(t[0].dot(u3), t[1].dot(u3));
  st.u = g.n.dot(u3);
  for (int al = 0; al < 2; ++al) {
    for (int be = 0; be < 2; ++be) {
      st.du_t(al, be) = g.second_deriv(al, be).dot(u3) + t[al].dot(du3[be]);
    }
    // n_{,al} = -b^l_al t_l (Weingarten)
    Vector3d dn = Vector3d::Zero();
    for (int l = 0; l < 2; ++l) dn -= g.b_mixed(l, al) * t[l];
    st.du[al] = dn.dot(u3) + g.n.dot(du3[al]);
  }
  return st;
}

Eigen::MatrixXd element_stiffness(const ElementContext& ctx, const Material& mat) {
  const int nd = ctx.ndof();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nd, nd);
  for (std::size_t qp = 0; qp < ctx.qps.size(); ++qp) {
    const BMatrices b = build_b_matrices(ctx, static_cast<int>(qp));
    const Eigen::MatrixXd B = measure_operator(b);
    const auto Q = constitutive_matrix(ctx.qps[qp].geom, mat);
    K.noalias() += ctx.qps[qp].weight * B.transpose() * Q * B;
  }
  return K;
}

Eigen::VectorXd element_internal_force(const ElementContext& ctx, const Material& mat,
                                       const Eigen::VectorXd& d_elem) {
  const int nd = ctx.ndof();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(nd);
  for (std::size_t qp = 0; qp < ctx.qps.size(); ++qp) {
    const BMatrices b = build_b_matrices(ctx, static_cast<int>(qp));
    const Eigen::MatrixXd B = measure_operator(b);
    const Eigen::Matrix<double, 8, 1> sv = B * d_elem;
    StrainMeasureSet s;
    s.gamma << sv[0], 0.5 * sv[2], 0.5 * sv[2], sv[1];
    s.rho << sv[3], 0.5 * sv[5], 0.5 * sv[5], sv[4];
    s.phi << sv[6], sv[7];
    const StressResultantSet r = stress_resultants(s, ctx.qps[qp].geom, mat);
    Eigen::Matrix<double, 8, 1> tv;
    tv << r.n(0, 0), r.n(1, 1), r.n(0, 1), r.m(0, 0), r.m(1, 1), r.m(0, 1), r.q[0], r.q[1];
    f.noalias() += ctx.qps[qp].weight * B.transpose() * tv;
  }
  return f;
}

Eigen::VectorXd element_load(const ElementContext& ctx, const LoadSet& loads,
                             const Material& mat) {
  const int nd = ctx.ndof();
  const int nn = ctx.nn();
  const double sig = mat.sigma();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(nd);
  for (std::size_t qp = 0; qp < ctx.qps.size(); ++qp) {
    const SurfacePoint& g = ctx.qps[qp].geom;
    const BMatrices b = build_b_matrices(ctx, static_cast<int>(qp));
    const double w = ctx.qps[qp].weight;
    const Matrix2d& ai = g.a_inv;

    // covariant divergences of the constant tangential loads
    double f_div = 0.0, g_div = 0.0;
    for (int l = 0; l < 2; ++l) {
      for (int m = 0; m < 2; ++m) {
        for (int k = 0; k < 2; ++k) {
          f_div -= ai(l, m) * g.christoffel[k][m][l] * loads.f_t[k];
          g_div -= ai(l, m) * g.christoffel[k][m][l] * loads.g_t[k];
        }
      }
    }
    const Vector2d fg_up = ai * (loads.f_t - g.H * loads.g_t);
    const Vector2d g_up = ai * loads.g_t;

    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nd);
    auto add_u = [&](const Eigen::RowVectorXd& ublock, double c) {
      row.head(3 * nn) += c * ublock;
    };
    auto add_psi = [&](const Eigen::RowVectorXd& pblock, double c) {
      row.tail(2 * nn) += c * pblock;
    };

    // (f^a - H g^a) du_a + (f - H g) du
    add_u(b.Nu_t.row(0), fg_up[0]);
    add_u(b.Nu_t.row(1), fg_up[1]);
    add_u(b.Nu_n, loads.f - g.H * loads.g);
    // (1/2) g^a (du_{,a} + b^l_a du_l) -- equals the u part of delta phi
    add_u(b.Bq_u.row(0), 0.5 * g_up[0]);
    add_u(b.Bq_u.row(1), 0.5 * g_up[1]);
    // -(sigma/2)(g + f_div/6) tr(delta gamma)
    const double cg = -0.5 * sig * (loads.g + f_div / 6.0);
    Eigen::RowVectorXd trg =
        ai(0, 0) * b.Bn.row(0) + ai(1, 1) * b.Bn.row(1) + ai(0, 1) * b.Bn.row(2);
    add_u(trg, cg);
    // +(sigma/10)(f + g_div/12) tr(delta rho)
    const double cr = 0.1 * sig * (loads.f + g_div / 12.0);
    Eigen::RowVectorXd trr_u =
        ai(0, 0) * b.Bm_u.row(0) + ai(1, 1) * b.Bm_u.row(1) + ai(0, 1) * b.Bm_u.row(2);
    Eigen::RowVectorXd trr_p =
        ai(0, 0) * b.Bm_psi.row(0) + ai(1, 1) * b.Bm_psi.row(1) + ai(0, 1) * b.Bm_psi.row(2);
    add_u(trr_u, cr);
    add_psi(trr_p, -cr);
    // (1/12) g^a delta phi_a
    add_u(b.Bq_u.row(0), g_up[0] / 12.0);
    add_u(b.Bq_u.row(1), g_up[1] / 12.0);
    add_psi(b.Bq_psi.row(0), g_up[0] / 12.0);
    add_psi(b.Bq_psi.row(1), g_up[1] / 12.0);

    f += w * row.transpose();
  }
  return f;
}

Eigen::VectorXd gather_element_dofs(const ElementContext& ctx, const Eigen::VectorXd& d_full) {
  const int nn = ctx.nn();
  Eigen::VectorXd d(5 * nn);
  for (int a = 0; a < nn; ++a) {
    for (int k = 0; k < 3; ++k) d[3 * a + k] = d_full[dof_u(ctx.nodes[a], k)];
    for (int j = 0; j < 2; ++j) d[3 * nn + 2 * a + j] = d_full[dof_psi(ctx.nodes[a], j)];
  }
  return d;
}

GlobalSystem assemble(const ShellDiscretization& disc, const Material& mat,
                      const LoadSet& loads, const std::vector<char>& fixed_dof,
                      const std::vector<LinearConstraint>& constraints, int n_threads) {
  const int n_full = 5 * disc.n_nodes();
  if (static_cast<int>(fixed_dof.size()) != n_full) {
    throw std::invalid_argument("assemble: fixed_dof size mismatch");
  }
  GlobalSystem sys;
  sys.n_full = n_full;
  sys.full_to_free.assign(n_full, -1);
  for (int i = 0; i < n_full; ++i) {
    if (!fixed_dof[i]) {
      sys.full_to_free[i] = static_cast<int>(sys.free_to_full.size());
      sys.free_to_full.push_back(i);
    }
  }
  sys.n_free = static_cast<int>(sys.free_to_full.size());
  sys.n_multipliers = static_cast<int>(constraints.size());
  const int n_sys = sys.n_free + sys.n_multipliers;

  std::vector<Eigen::Triplet<double>> trips;
  sys.F = Eigen::VectorXd::Zero(n_sys);

  const int n_elem = disc.n_elements();
  const int chunk = 256;
  std::vector<Eigen::MatrixXd> Ke(std::min(chunk, n_elem));
  std::vector<Eigen::VectorXd> Fe(std::min(chunk, n_elem));
  std::vector<std::vector<int>> em(std::min(chunk, n_elem));

  n_threads = std::max(1, n_threads);
  for (int start = 0; start < n_elem; start += chunk) {
    const int count = std::min(chunk, n_elem - start);
    auto worker = [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) {
        const ElementContext ctx = build_element_context(disc, start + i);
        Ke[i] = element_stiffness(ctx, mat);
        Fe[i] = element_load(ctx, loads, mat);
        const int nn = ctx.nn();
        em[i].resize(5 * nn);
        for (int a = 0; a < nn; ++a) {
          for (int k = 0; k < 3; ++k) em[i][3 * a + k] = dof_u(ctx.nodes[a], k);
          for (int j = 0; j < 2; ++j) em[i][3 * nn + 2 * a + j] = dof_psi(ctx.nodes[a], j);
        }
      }
    };
    if (n_threads == 1 || count < 2) {
      worker(0, count);
    } else {
      std::vector<std::thread> pool;
      const int per = (count + n_threads - 1) / n_threads;
      for (int t = 0; t < n_threads; ++t) {
        const int lo = t * per, hi = std::min(count, (t + 1) * per);
        if (lo < hi) pool.emplace_back(worker, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    // serial scatter in element order: deterministic w.r.t. thread count
    for (int i = 0; i < count; ++i) {
      const auto& map = em[i];
      const int nd = static_cast<int>(map.size());
      for (int r = 0; r < nd; ++r) {
        const int gr = sys.full_to_free[map[r]];
        if (gr < 0) continue;
        sys.F[gr] += Fe[i][r];
        for (int c = 0; c < nd; ++c) {
          const int gc = sys.full_to_free[map[c]];
          if (gc < 0) continue;
          trips.emplace_back(gr, gc, Ke[i](r, c));
        }
      }
    }
  }

  for (int ci = 0; ci < sys.n_multipliers; ++ci) {
    for (const auto& [dof, coef] : constraints[ci].terms) {
      const int fr = sys.full_to_free[dof];
      if (fr < 0) continue;  // constraint term on a fixed dof drops out
      trips.emplace_back(sys.n_free + ci, fr, coef);
      trips.emplace_back(fr, sys.n_free + ci, coef);
    }
  }

  sys.K.resize(n_sys, n_sys);
  sys.K.setFromTriplets(trips.begin(), trips.end());
  sys.K.makeCompressed();
  return sys;
}

}  // namespace rst
