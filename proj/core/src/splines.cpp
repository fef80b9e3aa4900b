#include "rstshell/splines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rst {

namespace {

using Eigen::Vector3d;
using Eigen::Vector4d;

void validate_knots(const std::vector<double>& knots, int p) {
  if (p < 1) throw std::invalid_argument("knot vector: degree must be >= 1");
  const int m = static_cast<int>(knots.size());
  if (m < 2 * (p + 1)) throw std::invalid_argument("knot vector: too few knots");
  for (int i = 0; i + 1 < m; ++i) {
    if (knots[i + 1] < knots[i]) {
      throw std::invalid_argument("knot vector: knots must be nondecreasing");
    }
  }
  for (int i = 0; i <= p; ++i) {
    if (knots[i] != knots[0] || knots[m - 1 - i] != knots[m - 1]) {
      throw std::invalid_argument("knot vector: open (clamped) form required");
    }
  }
  // interior multiplicity bound
  int run = 1;
  for (int i = p + 1; i < m - p - 1; ++i) {
    run = (knots[i] == knots[i - 1]) ? run + 1 : 1;
    if (knots[i] > knots[0] && knots[i] < knots[m - 1] && run > p) {
      throw std::invalid_argument("knot vector: interior multiplicity exceeds degree");
    }
  }
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Vector4d homog(const Vector3d& p, double w) {
  return Vector4d(w * p[0], w * p[1], w * p[2], w);
}

Vector3d dehomog(const Vector4d& q) {
  return Vector3d(q[0] / q[3], q[1] / q[3], q[2] / q[3]);
}

// Boehm insertion of a single knot at parameter x into span k.
// Acts on homogeneous control points.
std::vector<Vector4d> boehm_insert(const std::vector<double>& knots, int p, int k,
                                   double x, const std::vector<Vector4d>& P) {
  const int n = static_cast<int>(P.size());
  std::vector<Vector4d> Q(n + 1);
  for (int i = 0; i <= k - p; ++i) Q[i] = P[i];
  for (int i = k - p + 1; i <= k; ++i) {
    const double denom = knots[i + p] - knots[i];
    const double alpha = (x - knots[i]) / denom;
    Q[i] = alpha * P[i] + (1.0 - alpha) * P[i - 1];
  }
  for (int i = k + 1; i <= n; ++i) Q[i] = P[i - 1];
  return Q;
}

}  // namespace

KnotVector::KnotVector(std::vector<double> k, int p) : knots(std::move(k)), degree(p) {
  validate_knots(knots, degree);
}

std::vector<double> KnotVector::breakpoints() const {
  std::vector<double> b;
  for (double k : knots) {
    if (b.empty() || k > b.back()) b.push_back(k);
  }
  return b;
}

int KnotVector::max_interior_multiplicity() const {
  int best = 0, run = 1;
  const int m = static_cast<int>(knots.size());
  for (int i = 1; i < m; ++i) {
    run = (knots[i] == knots[i - 1]) ? run + 1 : 1;
    if (knots[i] > front() && knots[i] < back()) best = std::max(best, run);
  }
  return best;
}

int KnotVector::find_span(double xi) const {
  const int n = num_basis() - 1;
  const int p = degree;
  if (xi >= knots[n + 1]) return n;
  if (xi <= knots[p]) return p;
  int lo = p, hi = n + 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (xi < knots[mid] ? hi : lo) = mid;
  }
  return lo;
}

KnotVector KnotVector::uniform(int p, double a, double b, int n_elems) {
  std::vector<double> k;
  k.reserve(2 * (p + 1) + n_elems - 1);
  for (int i = 0; i <= p; ++i) k.push_back(a);
  for (int i = 1; i < n_elems; ++i) k.push_back(a + (b - a) * i / n_elems);
  for (int i = 0; i <= p; ++i) k.push_back(b);
  return KnotVector(std::move(k), p);
}

BasisValues1d basis_eval(const KnotVector& kv, double xi) {
  const int p = kv.degree;
  if (xi < kv.front() || xi > kv.back()) {
    throw std::domain_error("basis_eval: parameter outside knot range");
  }
  const auto& U = kv.knots;
  const int span = kv.find_span(xi);

  // Cox-de-Boor triangle with knot differences kept for the derivative pass.
  std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1, 0.0));
  std::vector<double> left(p + 1), right(p + 1);
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = xi - U[span + 1 - j];
    right[j] = U[span + j] - xi;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  const int nd = 2;
  std::vector<std::vector<double>> ders(nd + 1, std::vector<double>(p + 1, 0.0));
  for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];

  std::vector<std::vector<double>> a(2, std::vector<double>(p + 1, 0.0));
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= std::min(nd, p); ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  double fac = p;
  for (int k = 1; k <= std::min(nd, p); ++k) {
    for (int j = 0; j <= p; ++j) ders[k][j] *= fac;
    fac *= (p - k);
  }

  BasisValues1d out;
  out.first = span - p;
  out.v = std::move(ders[0]);
  out.d1 = std::move(ders[1]);
  out.d2 = std::move(ders[2]);
  return out;
}

void bernstein(int p, double t, double* v, double* d1, double* d2) {
  // B_i(t) = binom(p,i) t^i (1-t)^(p-i) on [0,1].
  for (int i = 0; i <= p; ++i) {
    const double c = binom(p, i);
    auto powd = [](double x, int e) {
      double r = 1.0;
      for (int q = 0; q < e; ++q) r *= x;
      return r;
    };
    v[i] = c * powd(t, i) * powd(1.0 - t, p - i);
    double dv = 0.0, ddv = 0.0;
    if (i >= 1) dv += c * i * powd(t, i - 1) * powd(1.0 - t, p - i);
    if (p - i >= 1) dv -= c * (p - i) * powd(t, i) * powd(1.0 - t, p - i - 1);
    if (i >= 2) ddv += c * i * (i - 1) * powd(t, i - 2) * powd(1.0 - t, p - i);
    if (i >= 1 && p - i >= 1) ddv -= 2.0 * c * i * (p - i) * powd(t, i - 1) * powd(1.0 - t, p - i - 1);
    if (p - i >= 2) ddv += c * (p - i) * (p - i - 1) * powd(t, i) * powd(1.0 - t, p - i - 2);
    if (d1) d1[i] = dv;
    if (d2) d2[i] = ddv;
  }
}

std::vector<Eigen::MatrixXd> bezier_extract(const KnotVector& kv) {
  // Insert every interior knot to multiplicity p, tracking the accumulated
  // insertion matrix A (refined basis x original basis). On element e the
  // refined basis restricted to the span is the Bernstein basis, so
  // N_j = sum_b A[e*p + b][j] * B_b, which gives the extraction rows.
  const int p = kv.degree;
  std::vector<double> U = kv.knots;
  int n = kv.num_basis();
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);

  const auto brk = kv.breakpoints();
  for (std::size_t bi = 1; bi + 1 < brk.size(); ++bi) {
    const double x = brk[bi];
    // current multiplicity
    int mult = 0;
    for (double u : U) {
      if (u == x) ++mult;
    }
    for (int ins = mult; ins < p; ++ins) {
      int k = 0;
      while (!(U[k] <= x && x < U[k + 1])) ++k;
      Eigen::MatrixXd Anew = Eigen::MatrixXd::Zero(n + 1, A.cols());
      for (int i = 0; i <= k - p; ++i) Anew.row(i) = A.row(i);
      for (int i = k - p + 1; i <= k; ++i) {
        const double alpha = (x - U[i]) / (U[i + p] - U[i]);
        Anew.row(i) = alpha * A.row(i) + (1.0 - alpha) * A.row(i - 1);
      }
      for (int i = k + 1; i <= n; ++i) Anew.row(i) = A.row(i - 1);
      A = std::move(Anew);
      U.insert(U.begin() + k + 1, x);
      ++n;
    }
  }

  const int n_elems = static_cast<int>(brk.size()) - 1;
  std::vector<Eigen::MatrixXd> ops;
  ops.reserve(n_elems);
  for (int e = 0; e < n_elems; ++e) {
    // original functions supported on element e
    const int span = kv.find_span(0.5 * (brk[e] + brk[e + 1]));
    const int first = span - p;
    Eigen::MatrixXd C(p + 1, p + 1);
    for (int j = 0; j <= p; ++j) {
      for (int b = 0; b <= p; ++b) {
        C(j, b) = A(e * p + b, first + j);
      }
    }
    ops.push_back(std::move(C));
  }
  return ops;
}

Vector3d NurbsCurve::point(double xi) const {
  const auto bv = basis_eval(kv, xi);
  Vector4d acc = Vector4d::Zero();
  for (int i = 0; i <= kv.degree; ++i) {
    acc += bv.v[i] * homog(pts[bv.first + i], w[bv.first + i]);
  }
  return dehomog(acc);
}

NurbsCurve insert_knots(const NurbsCurve& c, const std::vector<double>& insertions) {
  NurbsCurve out = c;
  for (double x : insertions) {
    if (x <= out.kv.front() || x >= out.kv.back()) {
      throw std::invalid_argument("insert_knots: insertion outside open span");
    }
    std::vector<Vector4d> P(out.pts.size());
    for (std::size_t i = 0; i < P.size(); ++i) P[i] = homog(out.pts[i], out.w[i]);
    const int k = out.kv.find_span(x);
    auto Q = boehm_insert(out.kv.knots, out.kv.degree, k, x, P);
    out.kv.knots.insert(out.kv.knots.begin() + k + 1, x);
    out.pts.resize(Q.size());
    out.w.resize(Q.size());
    for (std::size_t i = 0; i < Q.size(); ++i) {
      out.w[i] = Q[i][3];
      out.pts[i] = dehomog(Q[i]);
    }
  }
  validate_knots(out.kv.knots, out.kv.degree);
  return out;
}

NurbsCurve degree_elevate(const NurbsCurve& c) {
  // Piegl-Tiller A5.9 with t = 1, in homogeneous coordinates.
  const int p = c.kv.degree;
  const int t = 1;
  const auto& U = c.kv.knots;
  const int n = static_cast<int>(c.pts.size()) - 1;
  const int m = n + p + 1;
  const int ph = p + t;
  const int ph2 = ph / 2;

  std::vector<Vector4d> Pw(n + 1);
  for (int i = 0; i <= n; ++i) Pw[i] = homog(c.pts[i], c.w[i]);

  std::vector<std::vector<double>> bezalfs(ph + 1, std::vector<double>(p + 1, 0.0));
  bezalfs[0][0] = 1.0;
  bezalfs[ph][p] = 1.0;
  for (int i = 1; i <= ph2; ++i) {
    const double inv = 1.0 / binom(ph, i);
    const int mpi = std::min(p, i);
    for (int j = std::max(0, i - t); j <= mpi; ++j) {
      bezalfs[i][j] = inv * binom(p, j) * binom(t, i - j);
    }
  }
  for (int i = ph2 + 1; i <= ph - 1; ++i) {
    const int mpi = std::min(p, i);
    for (int j = std::max(0, i - t); j <= mpi; ++j) {
      bezalfs[i][j] = bezalfs[ph - i][p - j];
    }
  }

  std::vector<Vector4d> Qw(2 * (n + 1) + ph + 4, Vector4d::Zero());
  std::vector<double> Uh(2 * (m + 1) + ph + 4, 0.0);
  std::vector<Vector4d> bpts(p + 1), ebpts(ph + 1), Nextbpts(p - 1 > 0 ? p - 1 : 1);
  std::vector<double> alfs(p > 1 ? p - 1 : 1, 0.0);

  int mh = ph, kind = ph + 1, r = -1, a = p, b = p + 1, cind = 1;
  double ua = U[0];
  Qw[0] = Pw[0];
  for (int i = 0; i <= ph; ++i) Uh[i] = ua;
  for (int i = 0; i <= p; ++i) bpts[i] = Pw[i];

  while (b < m) {
    const int i0 = b;
    while (b < m && U[b] == U[b + 1]) ++b;
    const int mul = b - i0 + 1;
    mh += mul + t;
    const double ub = U[b];
    const int oldr = r;
    r = p - mul;
    const int lbz = (oldr > 0) ? (oldr + 2) / 2 : 1;
    const int rbz = (r > 0) ? ph - (r + 1) / 2 : ph;
    if (r > 0) {
      const double numer = ub - ua;
      for (int k = p; k > mul; --k) alfs[k - mul - 1] = numer / (U[a + k] - ua);
      for (int j = 1; j <= r; ++j) {
        const int save = r - j;
        const int s = mul + j;
        for (int k = p; k >= s; --k) {
          bpts[k] = alfs[k - s] * bpts[k] + (1.0 - alfs[k - s]) * bpts[k - 1];
        }
        Nextbpts[save] = bpts[p];
      }
    }
    for (int i = lbz; i <= ph; ++i) {
      ebpts[i] = Vector4d::Zero();
      const int mpi = std::min(p, i);
      for (int j = std::max(0, i - t); j <= mpi; ++j) ebpts[i] += bezalfs[i][j] * bpts[j];
    }
    if (oldr > 1) {
      int first = kind - 2, last = kind;
      const double den = ub - ua;
      const double bet = (ub - Uh[kind - 1]) / den;
      for (int tr = 1; tr < oldr; ++tr) {
        int i = first, j = last;
        int kj = j - kind + 1;
        while (j - i > tr) {
          if (i < cind) {
            const double alf = (ub - Uh[i]) / (ua - Uh[i]);
            Qw[i] = alf * Qw[i] + (1.0 - alf) * Qw[i - 1];
          }
          if (j >= lbz) {
            if (j - tr <= kind - ph + oldr) {
              const double gam = (ub - Uh[j - tr]) / den;
              ebpts[kj] = gam * ebpts[kj] + (1.0 - gam) * ebpts[kj + 1];
            } else {
              ebpts[kj] = bet * ebpts[kj] + (1.0 - bet) * ebpts[kj + 1];
            }
          }
          ++i;
          --j;
          --kj;
        }
        --first;
        ++last;
      }
    }
    if (a != p) {
      for (int i = 0; i < ph - oldr; ++i) {
        Uh[kind] = ua;
        ++kind;
      }
    }
    for (int j = lbz; j <= rbz; ++j) {
      Qw[cind] = ebpts[j];
      ++cind;
    }
    if (b < m) {
      for (int j = 0; j < r; ++j) bpts[j] = Nextbpts[j];
      for (int j = r; j <= p; ++j) bpts[j] = Pw[b - p + j];
      a = b;
      ++b;
      ua = ub;
    } else {
      for (int i = 0; i <= ph; ++i) Uh[kind + i] = ub;
    }
  }

  const int nh = mh - ph - 1;
  NurbsCurve out;
  out.kv.degree = ph;
  out.kv.knots.assign(Uh.begin(), Uh.begin() + (mh + 1));
  out.pts.resize(nh + 1);
  out.w.resize(nh + 1);
  for (int i = 0; i <= nh; ++i) {
    out.w[i] = Qw[i][3];
    out.pts[i] = dehomog(Qw[i]);
  }
  validate_knots(out.kv.knots, out.kv.degree);
  return out;
}

void SplinePatch::validate() const {
  if (nu != ku.num_basis() || nv != kv.num_basis()) {
    throw std::invalid_argument("spline patch: control grid does not match basis counts");
  }
  if (static_cast<int>(ctrl.size()) != nu * nv || ctrl.size() != w.size()) {
    throw std::invalid_argument("spline patch: control/weight array size mismatch");
  }
  for (double wi : w) {
    if (!(wi > 0.0)) throw std::invalid_argument("spline patch: weights must be positive");
  }
}

SplinePatch::SurfEval SplinePatch::eval(double xi, double eta) const {
  const auto bu = basis_eval(ku, xi);
  const auto bv = basis_eval(kv, eta);
  const int pu = ku.degree, pv = kv.degree;

  Vector4d A = Vector4d::Zero(), A1 = Vector4d::Zero(), A2 = Vector4d::Zero();
  Vector4d A11 = Vector4d::Zero(), A12 = Vector4d::Zero(), A22 = Vector4d::Zero();
  for (int i = 0; i <= pu; ++i) {
    for (int j = 0; j <= pv; ++j) {
      const int gi = (bu.first + i) * nv + (bv.first + j);
      const Vector4d h = homog(ctrl[gi], w[gi]);
      A += bu.v[i] * bv.v[j] * h;
      A1 += bu.d1[i] * bv.v[j] * h;
      A2 += bu.v[i] * bv.d1[j] * h;
      A11 += bu.d2[i] * bv.v[j] * h;
      A12 += bu.d1[i] * bv.d1[j] * h;
      A22 += bu.v[i] * bv.d2[j] * h;
    }
  }
  const double W = A[3];
  SurfEval out;
  out.S = A.head<3>() / W;
  out.S1 = (A1.head<3>() - out.S * A1[3]) / W;
  out.S2 = (A2.head<3>() - out.S * A2[3]) / W;
  out.S11 = (A11.head<3>() - 2.0 * out.S1 * A1[3] - out.S * A11[3]) / W;
  out.S12 = (A12.head<3>() - out.S1 * A2[3] - out.S2 * A1[3] - out.S * A12[3]) / W;
  out.S22 = (A22.head<3>() - 2.0 * out.S2 * A2[3] - out.S * A22[3]) / W;
  return out;
}

SplinePatch::ShapeEval SplinePatch::shapes(double xi, double eta) const {
  const auto bu = basis_eval(ku, xi);
  const auto bv = basis_eval(kv, eta);
  const int pu = ku.degree, pv = kv.degree;
  const int cu = pu + 1, cv = pv + 1;

  double W = 0.0, W1 = 0.0, W2 = 0.0, W11 = 0.0, W12 = 0.0, W22 = 0.0;
  std::vector<double> nw(cu * cv), nw1(cu * cv), nw2(cu * cv), nw11(cu * cv),
      nw12(cu * cv), nw22(cu * cv);
  for (int i = 0; i < cu; ++i) {
    for (int j = 0; j < cv; ++j) {
      const int gi = (bu.first + i) * nv + (bv.first + j);
      const double wi = w[gi];
      const int li = i * cv + j;
      nw[li] = bu.v[i] * bv.v[j] * wi;
      nw1[li] = bu.d1[i] * bv.v[j] * wi;
      nw2[li] = bu.v[i] * bv.d1[j] * wi;
      nw11[li] = bu.d2[i] * bv.v[j] * wi;
      nw12[li] = bu.d1[i] * bv.d1[j] * wi;
      nw22[li] = bu.v[i] * bv.d2[j] * wi;
      W += nw[li];
      W1 += nw1[li];
      W2 += nw2[li];
      W11 += nw11[li];
      W12 += nw12[li];
      W22 += nw22[li];
    }
  }

  ShapeEval out;
  out.iu0 = bu.first;
  out.iv0 = bv.first;
  out.count_u = cu;
  out.count_v = cv;
  out.R.resize(cu * cv);
  out.R1.resize(cu * cv);
  out.R2.resize(cu * cv);
  out.R11.resize(cu * cv);
  out.R12.resize(cu * cv);
  out.R22.resize(cu * cv);
  for (int li = 0; li < cu * cv; ++li) {
    const double R = nw[li] / W;
    const double R1 = (nw1[li] - R * W1) / W;
    const double R2 = (nw2[li] - R * W2) / W;
    out.R[li] = R;
    out.R1[li] = R1;
    out.R2[li] = R2;
    out.R11[li] = (nw11[li] - 2.0 * R1 * W1 - R * W11) / W;
    out.R12[li] = (nw12[li] - R1 * W2 - R2 * W1 - R * W12) / W;
    out.R22[li] = (nw22[li] - 2.0 * R2 * W2 - R * W22) / W;
  }
  return out;
}

SplinePatch make_cylinder_patch(double radius, double length) {
  SplinePatch p;
  p.ku = KnotVector({0, 0, 0, 0, 1, 1, 1, 1}, 3);
  p.kv = KnotVector({0, 0, 0, 0, 1, 1, 1, 1}, 3);
  p.nu = 4;
  p.nv = 4;
  // Axial direction reproduces x1 = L*xi via Greville abscissae; the
  // circumferential direction is the exact single-segment rational cubic
  // semicircle with weights (1, 1/3, 1/3, 1).
  const double g[4] = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  const double cy[4] = {radius, radius, -radius, -radius};
  const double cz[4] = {0.0, 2.0 * radius, 2.0 * radius, 0.0};
  const double cw[4] = {1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0};
  p.ctrl.resize(16);
  p.w.resize(16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      p.ctrl[i * 4 + j] = Vector3d(-length * g[i], cy[j], cz[j]);
      p.w[i * 4 + j] = cw[j];
    }
  }
  p.validate();
  return p;
}

SplinePatch patch_insert_knots(const SplinePatch& p, int dir,
                               const std::vector<double>& insertions) {
  SplinePatch out = p;
  for (double x : insertions) {
    const KnotVector& kvd = (dir == 0) ? out.ku : out.kv;
    if (x <= kvd.front() || x >= kvd.back()) {
      throw std::invalid_argument("patch_insert_knots: insertion outside span");
    }
    const int deg = kvd.degree;
    const int k = kvd.find_span(x);
    if (dir == 0) {
      std::vector<Vector3d> nc((out.nu + 1) * out.nv);
      std::vector<double> nw((out.nu + 1) * out.nv);
      for (int j = 0; j < out.nv; ++j) {
        std::vector<Vector4d> col(out.nu);
        for (int i = 0; i < out.nu; ++i) col[i] = homog(out.ctrl[i * out.nv + j], out.w[i * out.nv + j]);
        auto q = boehm_insert(out.ku.knots, deg, k, x, col);
        for (int i = 0; i <= out.nu; ++i) {
          nw[i * out.nv + j] = q[i][3];
          nc[i * out.nv + j] = dehomog(q[i]);
        }
      }
      out.ku.knots.insert(out.ku.knots.begin() + k + 1, x);
      out.nu += 1;
      out.ctrl = std::move(nc);
      out.w = std::move(nw);
    } else {
      std::vector<Vector3d> nc(out.nu * (out.nv + 1));
      std::vector<double> nw(out.nu * (out.nv + 1));
      for (int i = 0; i < out.nu; ++i) {
        std::vector<Vector4d> row(out.nv);
        for (int j = 0; j < out.nv; ++j) row[j] = homog(out.ctrl[i * out.nv + j], out.w[i * out.nv + j]);
        auto q = boehm_insert(out.kv.knots, deg, k, x, row);
        for (int j = 0; j <= out.nv; ++j) {
          nw[i * (out.nv + 1) + j] = q[j][3];
          nc[i * (out.nv + 1) + j] = dehomog(q[j]);
        }
      }
      out.kv.knots.insert(out.kv.knots.begin() + k + 1, x);
      out.nv += 1;
      out.ctrl = std::move(nc);
      out.w = std::move(nw);
    }
  }
  out.validate();
  return out;
}

SplinePatch refine_patch_uniform(const SplinePatch& p, int levels) {
  SplinePatch out = p;
  for (int l = 0; l < levels; ++l) {
    for (int dir = 0; dir < 2; ++dir) {
      const auto brk = (dir == 0 ? out.ku : out.kv).breakpoints();
      std::vector<double> mids;
      mids.reserve(brk.size() - 1);
      for (std::size_t i = 0; i + 1 < brk.size(); ++i) mids.push_back(0.5 * (brk[i] + brk[i + 1]));
      out = patch_insert_knots(out, dir, mids);
    }
  }
  return out;
}

void lagrange1d(int degree, double xi, double* v, double* d1, double* d2) {
  if (degree == 1) {
    v[0] = 0.5 * (1.0 - xi);
    v[1] = 0.5 * (1.0 + xi);
    if (d1) {
      d1[0] = -0.5;
      d1[1] = 0.5;
    }
    if (d2) {
      d2[0] = 0.0;
      d2[1] = 0.0;
    }
  } else if (degree == 2) {
    v[0] = 0.5 * xi * (xi - 1.0);
    v[1] = 1.0 - xi * xi;
    v[2] = 0.5 * xi * (xi + 1.0);
    if (d1) {
      d1[0] = xi - 0.5;
      d1[1] = -2.0 * xi;
      d1[2] = xi + 0.5;
    }
    if (d2) {
      d2[0] = 1.0;
      d2[1] = -2.0;
      d2[2] = 1.0;
    }
  } else {
    throw std::invalid_argument("lagrange1d: only degrees 1 and 2 are provided");
  }
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int mid = (n + 1) / 2;
  for (int i = 0; i < mid; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    const double wi = 2.0 / ((1.0 - x * x) * dp * dp);
    r.w[i] = wi;
    r.w[n - 1 - i] = wi;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

}  // namespace rst
