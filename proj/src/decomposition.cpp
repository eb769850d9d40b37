#include "nls/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <cblas.h>
#include <lapacke.h>

namespace nls {

namespace {

double l2(const rvec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

rvec matvec(const rvec& A, int m, const rvec& x) {
  rvec y(m, 0.0);
  cblas_dgemv(CblasRowMajor, CblasNoTrans, m, m, 1.0, A.data(), m, x.data(), 1, 0.0,
              y.data(), 1);
  return y;
}

}  // namespace

void symmetric_eig(rvec& A, int m, rvec& evals) {
  evals.resize(m);
  lapack_int info =
      LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'V', 'U', m, A.data(), m, evals.data());
  if (info != 0) throw std::runtime_error("dsyev failed, info=" + std::to_string(info));
}

std::vector<double> pencil_eigs_nonsymmetric(const SectorOperator& op, double* max_imag) {
  const int m = op.grid.m;
  rvec Ap = op.dense_plus(), Am = op.dense_minus();
  rvec C(std::size_t(m) * m);
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, m, m, m, 1.0, Am.data(), m,
              Ap.data(), m, 0.0, C.data(), m);
  rvec wr(m), wi(m);
  lapack_int info = LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', 'N', m, C.data(), m, wr.data(),
                                  wi.data(), nullptr, m, nullptr, m);
  if (info != 0) throw std::runtime_error("dgeev failed, info=" + std::to_string(info));
  double mi = 0;
  for (double x : wi) mi = std::max(mi, std::abs(x));
  if (max_imag) *max_imag = mi;
  std::vector<double> out(wr.begin(), wr.end());
  std::sort(out.begin(), out.end());
  return out;
}

double restricted_min_eig(const rvec& A, int m, const rvec& dir) {
  // Householder reflection sending dir to +-e1; the restriction to the
  // complement is the trailing principal minor of H A H
  rvec v = dir;
  double nv = l2(v);
  for (double& x : v) x /= nv;
  v[0] += (v[0] >= 0 ? 1.0 : -1.0);
  double nv2 = l2(v);
  for (double& x : v) x /= nv2;

  rvec t = matvec(A, m, v);
  double alpha = 0;
  for (int i = 0; i < m; ++i) alpha += v[i] * t[i];
  rvec H = A;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      H[std::size_t(i) * m + j] +=
          -2.0 * v[i] * t[j] - 2.0 * t[i] * v[j] + 4.0 * alpha * v[i] * v[j];

  const int n = m - 1;
  rvec B(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B[std::size_t(i) * n + j] = H[std::size_t(i + 1) * m + j + 1];
  rvec evals(n);
  lapack_int info = LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'N', 'U', n, B.data(), n, evals.data());
  if (info != 0) throw std::runtime_error("dsyev failed, info=" + std::to_string(info));
  return evals[0];
}

int compute_rt(double omega1, double Omega) {
  if (!(omega1 > 0)) return 0;
  return int(std::floor(Omega / omega1 + 1e-9)) + 1;
}

SectorPencil sector_pencil(const SectorOperator& op, double mu_cut, double mu_edge,
                           const rvec* deflate) {
  const int m = op.grid.m;
  const double h = op.grid.h();
  SectorPencil out;

  // symmetric route for the quadratic pencil: eigenvalues of R Am R with
  // R = Ap^(1/2); Ap is positive semidefinite so the root is real
  rvec Z = op.dense_plus();
  rvec lam;
  symmetric_eig(Z, m, lam);
  rvec slam(m), inv_slam(m);
  double lmax = std::max(lam[m - 1], 0.0);
  std::vector<int> dropped;
  for (int i = 0; i < m; ++i) {
    slam[i] = lam[i] > 0 ? std::sqrt(lam[i]) : 0.0;
    if (lam[i] > 1e-12 * lmax) {
      inv_slam[i] = 1.0 / slam[i];
    } else {
      inv_slam[i] = 0.0;
      dropped.push_back(i);
    }
  }
  rvec W(std::size_t(m) * m), R(std::size_t(m) * m), T(std::size_t(m) * m),
      S(std::size_t(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) W[std::size_t(i) * m + j] = Z[std::size_t(i) * m + j] * slam[j];
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, m, m, m, 1.0, W.data(), m, Z.data(),
              m, 0.0, R.data(), m);
  rvec Am = op.dense_minus();
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, m, m, m, 1.0, Am.data(), m,
              R.data(), m, 0.0, T.data(), m);
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, m, m, m, 1.0, R.data(), m, T.data(),
              m, 0.0, S.data(), m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double s = 0.5 * (S[std::size_t(i) * m + j] + S[std::size_t(j) * m + i]);
      S[std::size_t(i) * m + j] = S[std::size_t(j) * m + i] = s;
    }

  // a known symmetry zero of the pencil (a kernel vector of the minus
  // operator) is pushed far above the edge so it cannot masquerade as a
  // spurious negative on coarse grids
  if (deflate && !deflate->empty()) {
    rvec w0(m, 0.0), zd(m, 0.0);
    cblas_dgemv(CblasRowMajor, CblasTrans, m, m, 1.0, Z.data(), m, deflate->data(), 1, 0.0,
                zd.data(), 1);
    for (int r = 0; r < m; ++r) zd[r] *= inv_slam[r];
    cblas_dgemv(CblasRowMajor, CblasNoTrans, m, m, 1.0, Z.data(), m, zd.data(), 1, 0.0,
                w0.data(), 1);
    double nw = 0;
    for (double x : w0) nw += x * x;
    nw = std::sqrt(nw);
    if (nw > 0) {
      double sigma0 = 16.0 * mu_edge / (nw * nw);
      cblas_dger(CblasRowMajor, m, m, sigma0, w0.data(), 1, w0.data(), 1, S.data(), m);
    }
  }

  symmetric_eig(S, m, out.mu);

  for (int i = 0; i < m; ++i) {
    if (out.mu[i] <= mu_cut || out.mu[i] >= mu_edge) continue;
    double omega = std::sqrt(out.mu[i]);
    // f = Ap^(-1/2) w through the spectral factors, kernel components cut
    rvec w(m), ztw(m, 0.0), f(m, 0.0);
    for (int r = 0; r < m; ++r) w[r] = S[std::size_t(r) * m + i];
    cblas_dgemv(CblasRowMajor, CblasTrans, m, m, 1.0, Z.data(), m, w.data(), 1, 0.0,
                ztw.data(), 1);
    for (int r = 0; r < m; ++r) ztw[r] *= inv_slam[r];
    cblas_dgemv(CblasRowMajor, CblasNoTrans, m, m, 1.0, Z.data(), m, ztw.data(), 1, 0.0,
                f.data(), 1);

    rvec Apf;
    op.apply_plus(f, Apf);
    double quad = 0;
    for (int r = 0; r < m; ++r) quad += f[r] * Apf[r];
    quad *= h;  // <f, plus f> with the dr measure
    if (!(quad > 0)) continue;
    double c = 1.0 / std::sqrt(2.0 / omega * quad);
    InternalMode mode;
    mode.ell = op.ell;
    mode.omega = omega;
    mode.bquad = 2.0 / omega * quad;
    mode.F.resize(m);
    mode.G.resize(m);
    for (int r = 0; r < m; ++r) {
      mode.F[r] = c * f[r];
      mode.G[r] = c / omega * Apf[r];
    }
    // the root route returns F orthogonal to the kernel of the plus
    // operator, but the pencil fixes the kernel component through the
    // second first-order identity minus G = omega F; complete it (G is
    // untouched: plus annihilates these directions)
    if (!dropped.empty()) {
      rvec AmG;
      op.apply_minus(mode.G, AmG);
      for (int d : dropped) {
        double gamma = 0;
        for (int r = 0; r < m; ++r)
          gamma += (AmG[r] - omega * mode.F[r]) * Z[std::size_t(r) * m + d];
        gamma /= omega;
        for (int r = 0; r < m; ++r) mode.F[r] += gamma * Z[std::size_t(r) * m + d];
      }
    }
    out.modes.push_back(std::move(mode));
  }
  return out;
}

SpectralDecomposition discrete_spectrum(const RadialProfile& profile, const Nonlinearity& nl,
                                        int ell_max, int m_nodes, double r_max) {
  SpectralDecomposition out;
  out.E = profile.E;
  out.Omega = profile.E;
  out.grid = SectorGrid{m_nodes, r_max};
  const int m = m_nodes;
  const double h = out.grid.h();

  // kernel residuals on the profile's own interior nodes, where the discrete
  // profile equation holds exactly and no interpolation enters
  {
    const int mk = profile.grid.m - 1;
    const double rmk = profile.grid.r_max;
    SectorOperator k0 = build_sector(0, profile, nl, mk, rmk);
    SectorOperator k1 = build_sector(1, profile, nl, mk, rmk);
    rvec dEb = profile_dE(profile, nl);
    rvec bu(mk), bpu(mk), dEbu(mk), rb2u(mk);
    for (int k = 0; k < mk; ++k) {
      double r = k0.grid.r(k);
      bu[k] = r * profile.b[k + 1];
      bpu[k] = r * profile.db[k + 1];
      dEbu[k] = r * dEb[k + 1];
      rb2u[k] = 0.5 * r * r * profile.b[k + 1];
    }
    rvec tmp;
    k0.apply_plus(bu, tmp);
    out.kernel.gauge = l2(tmp) / l2(bu);
    k0.apply_minus(dEbu, tmp);
    for (int k = 0; k < mk; ++k) tmp[k] += bu[k];
    out.kernel.scaling = l2(tmp) / l2(bu);
    k1.apply_minus(bpu, tmp);
    out.kernel.translation = l2(tmp) / l2(bpu);
    k1.apply_plus(rb2u, tmp);
    for (int k = 0; k < mk; ++k) tmp[k] += bpu[k];
    out.kernel.boost = l2(tmp) / l2(bpu);
  }

  rvec b_u(m), bp_u(m);
  for (int k = 0; k < m; ++k) {
    double r = out.grid.r(k);
    b_u[k] = r * profile.value(r);
    bp_u[k] = r * profile.deriv(r);
  }

  const double mu_cut = 1e-4 * profile.E * profile.E;  // discrete kernel guard
  const double mu_edge = profile.E * profile.E;

  for (int ell = 0; ell <= ell_max; ++ell) {
    SectorOperator op = build_sector(ell, profile, nl, m, r_max);

    if (ell == 0) {
      out.min_eig_perp_gauge = restricted_min_eig(op.dense_minus(), m, b_u);
    } else if (ell == 1) {
      out.min_eig_perp_translation = restricted_min_eig(op.dense_minus(), m, bp_u);
    }

    // the translation sector owns a symmetry zero along r b'; deflate it
    SectorPencil pen = sector_pencil(op, mu_cut, mu_edge, ell == 1 ? &bp_u : nullptr);
    for (double mu : pen.mu)
      if (mu < -mu_cut) out.negative_mu.push_back(mu);
    for (auto& mode : pen.modes) out.modes.push_back(std::move(mode));
  }

  std::sort(out.modes.begin(), out.modes.end(),
            [](const InternalMode& a, const InternalMode& b) { return a.omega < b.omega; });
  out.rt = out.modes.empty() ? 0 : compute_rt(out.modes.front().omega, out.Omega);
  return out;
}

namespace {
void enumerate_margin(const std::vector<double>& om, double Omega, int budget, int pos,
                      double acc, int nonzero, double& best, std::vector<int>& cur,
                      std::vector<int>& argmin) {
  if (pos == int(om.size())) {
    if (nonzero == 0) return;
    double margin = std::abs(acc - Omega);
    if (margin < best) {
      best = margin;
      argmin = cur;
    }
    return;
  }
  for (int k = -budget; k <= budget; ++k) {
    cur[pos] = k;
    enumerate_margin(om, Omega, budget - std::abs(k), pos + 1, acc + k * om[pos],
                     nonzero + (k != 0 ? 1 : 0), best, cur, argmin);
  }
}
}  // namespace

HypothesesReport check_spectral_hypotheses(const SpectralDecomposition& d) {
  HypothesesReport rep;
  rep.rt = d.rt;
  rep.positivity_ok = d.negative_mu.empty();
  if (d.modes.empty()) {
    rep.edge_ok = true;
    rep.min_margin = d.Omega;
    rep.nonresonant = true;
    return rep;
  }
  rep.edge_ok = d.modes.back().omega < d.Omega;
  std::vector<double> om;
  for (const InternalMode& mdd : d.modes) om.push_back(mdd.omega);
  double best = d.Omega;  // the k = 0 combination
  std::vector<int> cur(om.size(), 0);
  enumerate_margin(om, d.Omega, 2 * d.rt, 0, 0.0, 0, best, cur, rep.argmin);
  rep.min_margin = best;
  rep.nonresonant = best > 1e-9 * d.Omega;
  return rep;
}

}  // namespace nls
