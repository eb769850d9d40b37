#include "nls/coordinates.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>

#include "nls/family.hpp"
#include "nls/functionals.hpp"

namespace nls {

namespace {

// Lobatto abscissa k of cheb points on [-1, 1], descending from +1
inline double lobatto_x(int k, int m) { return std::cos(M_PI * k / (m - 1)); }

}  // namespace

void SolitonFamily::build() const {
  const int M = cheb_;
  const double mid = 0.5 * (lo_ + hi_), half = 0.5 * (hi_ - lo_);
  const double rmax = r_max_ > 0 ? r_max_ : 30.0 / std::sqrt(lo_);

  nb_.assign(M, rvec());
  ndbr_.assign(M, rvec());
  // descending sweep in E, each node warm-started from the previous one
  for (int k = 0; k < M; ++k) {
    ProfileOptions opt;
    opt.nodes = nodes_;
    opt.r_max = rmax;
    if (k > 0) opt.seed = &nb_[k - 1];
    RadialProfile p = solve_profile(mid + half * lobatto_x(k, M), nl_, 3, opt);
    if (!p.converged) throw std::runtime_error("soliton family: node solve failed");
    rg_ = p.grid;
    nb_[k] = std::move(p.b);
    ndbr_[k] = std::move(p.db);
  }

  // E-derivative at the nodes: Lobatto differentiation matrix, diagonal by the
  // negative-sum trick, scaled from x to E
  ndE_.assign(M, rvec(nodes_, 0.0));
  for (int k = 0; k < M; ++k) {
    double ck = (k == 0 || k == M - 1) ? 2.0 : 1.0;
    for (int j = 0; j < M; ++j) {
      if (j == k) continue;
      double cj = (j == 0 || j == M - 1) ? 2.0 : 1.0;
      double dkj = (ck / cj) * (((k + j) % 2) ? -1.0 : 1.0) /
                   (lobatto_x(k, M) - lobatto_x(j, M));
      const rvec& bj = nb_[j];
      const rvec& bk = nb_[k];
      rvec& out = ndE_[k];
      for (int i = 0; i < nodes_; ++i) out[i] += dkj * (bj[i] - bk[i]);
    }
    for (int i = 0; i < nodes_; ++i) ndE_[k][i] /= half;
  }
  built_ = true;
}

const SolitonFamily::Entry& SolitonFamily::at(double E) const {
  if (!built_) build();
  if (!(E >= lo_ && E <= hi_))
    throw std::out_of_range("soliton family: E outside the window");
  auto it = cache_.find(E);
  if (it != cache_.end()) return it->second;
  if (cache_.size() > 512) cache_.clear();  // long runs sweep E continuously

  const int M = cheb_;
  const double mid = 0.5 * (lo_ + hi_), half = 0.5 * (hi_ - lo_);
  const double x = (E - mid) / half;

  Entry e;
  e.prof.E = E;
  e.prof.dim = 3;
  e.prof.grid = rg_;
  e.prof.converged = true;

  int hit = -1;
  for (int k = 0; k < M; ++k)
    if (x == lobatto_x(k, M)) hit = k;
  if (hit >= 0) {
    e.prof.b = nb_[hit];
    e.prof.db = ndbr_[hit];
    e.db_dE = ndE_[hit];
  } else {
    rvec num_b(nodes_, 0.0), num_dbr(nodes_, 0.0), num_dE(nodes_, 0.0);
    double den = 0;
    for (int k = 0; k < M; ++k) {
      double wk = ((k % 2) ? -1.0 : 1.0) * ((k == 0 || k == M - 1) ? 0.5 : 1.0);
      double t = wk / (x - lobatto_x(k, M));
      den += t;
      const rvec& b = nb_[k];
      const rvec& dbr = ndbr_[k];
      const rvec& dE = ndE_[k];
      for (int i = 0; i < nodes_; ++i) {
        num_b[i] += t * b[i];
        num_dbr[i] += t * dbr[i];
        num_dE[i] += t * dE[i];
      }
    }
    e.prof.b = std::move(num_b);
    e.prof.db = std::move(num_dbr);
    e.db_dE = std::move(num_dE);
    for (int i = 0; i < nodes_; ++i) {
      e.prof.b[i] /= den;
      e.prof.db[i] /= den;
      e.db_dE[i] /= den;
    }
  }
  e.dp4_dE = mass_slope(e.prof, e.db_dE);
  return cache_.emplace(E, std::move(e)).first->second;
}

namespace {

// w = e^{-q^j J A_j} u: undo the gauge rotation and the translation
Field undo_group(const Field& u, double q4, const vec3& q) {
  return group_action(-q4, {-q[0], -q[1], -q[2]}, u);
}

std::array<double, 8> constraint_residuals(const ConstraintSlice& slice, const Field& w) {
  Field diff = w;
  axpy(diff, cplx(-1, 0), slice.eta);
  std::array<double, 8> F;
  for (int l = 0; l < 8; ++l) F[l] = inner(slice.s[l], diff);
  return F;
}

double max_abs(const std::array<double, 8>& F) {
  double m = 0;
  for (double x : F) m = std::max(m, std::abs(x));
  return m;
}

// spectral gradient of w along the three axes
std::array<Field, 3> gradient(const Field& w) {
  const Grid& g = *w.g;
  const Fft& fft = fft_for(g);
  cvec hat(w.a.size());
  fft.forward(w.a.data(), hat.data());
  std::array<Field, 3> out;
  cvec tmp(hat.size());
  for (int ax = 0; ax < 3; ++ax) {
    out[ax] = Field(g);
    std::size_t m = 0;
    for (int i0 = 0; i0 < g.n[0]; ++i0) {
      double k0 = g.wavenumber(0, i0);
      for (int i1 = 0; i1 < g.n[1]; ++i1) {
        double k1 = g.wavenumber(1, i1);
        for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
          double k = ax == 0 ? k0 : (ax == 1 ? k1 : g.wavenumber(2, i2));
          tmp[m] = cplx(0, k) * hat[m];
        }
      }
    }
    fft.backward(tmp.data(), out[ax].a.data());
  }
  return out;
}

}  // namespace

ModulationCoordinates extract_coordinates(const Field& u, const SolitonFamily& fam,
                                          const TangentFrame& ref,
                                          const ExtractGuess& guess,
                                          const ExtractOptions& opt) {
  const Grid& g = *u.g;
  double q4 = guess.q4;
  vec3 q = guess.q;
  double E = guess.E > 0 ? guess.E : ref.par.E;
  vec3 v = guess.v;

  ModulationCoordinates out;
  out.par.E = E;
  out.par.v = v;

  Field w = undo_group(u, q4, q);
  const SolitonFamily::Entry* ent = &fam.at(E);
  ConstraintSlice slice = make_constraint_slice(g, ent->prof, ent->db_dE, v, ref.c);
  std::array<double, 8> F = constraint_residuals(slice, w);

  for (int it = 0; it < opt.max_iter; ++it) {
    out.iterations = it;
    if (max_abs(F) <= opt.tol) {
      out.converged = true;
      break;
    }

    // Jacobian: analytic in q, forward differences in (E, v)
    double J[64];
    std::array<Field, 3> dw = gradient(w);
    Field iw = apply_E(w);  // d w / d q4
    for (int l = 0; l < 8; ++l) {
      J[l * 8 + 0] = inner(slice.s[l], iw);
      for (int m = 0; m < 3; ++m) J[l * 8 + 1 + m] = inner(slice.s[l], dw[m]);
    }
    double dE = opt.fd_dE_rel * E;
    if (E + dE > fam.e_hi()) dE = -dE;
    {
      const SolitonFamily::Entry& ep = fam.at(E + dE);
      ConstraintSlice sp = make_constraint_slice(g, ep.prof, ep.db_dE, v, ref.c);
      std::array<double, 8> Fp = constraint_residuals(sp, w);
      for (int l = 0; l < 8; ++l) J[l * 8 + 4] = (Fp[l] - F[l]) / dE;
    }
    for (int k = 0; k < 3; ++k) {
      vec3 vp = v;
      vp[k] += opt.fd_dv;
      ConstraintSlice sp = make_constraint_slice(g, ent->prof, ent->db_dE, vp, ref.c);
      std::array<double, 8> Fp = constraint_residuals(sp, w);
      for (int l = 0; l < 8; ++l) J[l * 8 + 5 + k] = (Fp[l] - F[l]) / opt.fd_dv;
    }

    double rhs[8];
    for (int l = 0; l < 8; ++l) rhs[l] = -F[l];
    int piv[8];
    if (LAPACKE_dgesv(LAPACK_ROW_MAJOR, 8, 1, J, 8, piv, rhs, 1) != 0) break;

    // damped update: halve the step while the residual grows
    double base = max_abs(F);
    double alpha = 1.0;
    for (int half = 0; half < 5; ++half) {
      double q4n = q4 + alpha * rhs[0];
      vec3 qn{q[0] + alpha * rhs[1], q[1] + alpha * rhs[2], q[2] + alpha * rhs[3]};
      double En = E + alpha * rhs[4];
      vec3 vn{v[0] + alpha * rhs[5], v[1] + alpha * rhs[6], v[2] + alpha * rhs[7]};
      if (!(En >= fam.e_lo() && En <= fam.e_hi())) {
        alpha *= 0.5;
        continue;
      }
      Field wn = undo_group(u, q4n, qn);
      const SolitonFamily::Entry& en = fam.at(En);
      ConstraintSlice sn = make_constraint_slice(g, en.prof, en.db_dE, vn, ref.c);
      std::array<double, 8> Fn = constraint_residuals(sn, wn);
      if (max_abs(Fn) < base || alpha <= 1.0 / 16) {
        q4 = q4n;
        q = qn;
        E = En;
        v = vn;
        w = std::move(wn);
        ent = &en;
        slice = std::move(sn);
        F = Fn;
        break;
      }
      alpha *= 0.5;
    }
  }
  if (!out.converged && max_abs(F) <= opt.tol) out.converged = true;

  out.q4 = q4;
  out.q = q;
  out.residuals = F;

  // full frame at the root for the remainder and the reported momenta
  TangentFrame frame = make_frame(g, ent->prof, ent->db_dE, v, ref.c);
  out.par = frame.par;
  Field psi = w;
  axpy(psi, cplx(-1, 0), frame.eta);
  ProjectorInverse inv = invert_projector(frame, ref, psi, opt.neumann_tol);
  out.phi = std::move(inv.phi);
  out.phi_converged = inv.converged;
  return out;
}

Field reconstruct(const ModulationCoordinates& coords, const SolitonFamily& fam,
                  const TangentFrame& ref) {
  const SolitonFamily::Entry& ent = fam.at(coords.par.E);
  TangentFrame frame =
      make_frame(*ref.g, ent.prof, ent.db_dE, coords.par.v, ref.c);
  Field inner_part = project_out_tangent(frame, coords.phi);
  axpy(inner_part, cplx(1, 0), frame.eta);
  return group_action(coords.q4, coords.q, inner_part);
}

ImplicitParams implicit_params(const std::array<double, 4>& N, const Field& phi,
                               const std::array<double, 4>& p0,
                               const SolitonFamily& fam, const TangentFrame& ref,
                               double tol, int max_iter) {
  const Grid& g = *ref.g;
  std::array<double, 4> Pphi = momentum_all(phi);

  // leading-order seed p = p0 - N
  double p4t = p0[3] - N[3];
  if (!(p4t > 0)) throw std::runtime_error("implicit momenta: nonpositive target mass");
  auto clamp_E = [&](double x) {
    return std::min(fam.e_hi(), std::max(fam.e_lo(), x));
  };
  double E = ref.par.E;
  for (int it = 0; it < 60; ++it) {
    const SolitonFamily::Entry& e = fam.at(E);
    double m = e.prof.mass();
    if (std::abs(m - p4t) <= 1e-12 * std::abs(p4t)) break;
    double En = clamp_E(E - (m - p4t) / e.dp4_dE);
    if (En == E) break;  // pinned at the window edge
    E = En;
  }
  vec3 v{2 * (p0[0] - N[0]) / p4t, 2 * (p0[1] - N[1]) / p4t, 2 * (p0[2] - N[2]) / p4t};

  ImplicitParams out;
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it;
    const SolitonFamily::Entry& ent = fam.at(E);
    TangentFrame frame = make_frame(g, ent.prof, ent.db_dE, v, ref.c);
    // residual by direct quadrature of the dressed soliton, so the pinned
    // momenta are exactly the ones any caller would recompute
    Field dressed = project_out_tangent(frame, phi);
    axpy(dressed, cplx(1, 0), frame.eta);
    std::array<double, 4> P = momentum_all(dressed);
    std::array<double, 4> G;
    for (int j = 0; j < 4; ++j) G[j] = P[j] + N[j] - Pphi[j] - p0[j];
    out.par = frame.par;
    out.residuals = G;
    double gmax = 0;
    for (double x : G) gmax = std::max(gmax, std::abs(x));
    if (gmax <= tol) {
      out.converged = true;
      break;
    }

    // leading-order Jacobian in (E, v): dp4/dE along the family, dp_j/dv_k =
    // (p4/2) delta; the projector's own parameter dependence is higher order
    double p4 = frame.par.p[3], slope = frame.dp4_dE;
    double J[16] = {0};
    for (int j = 0; j < 3; ++j) {
      J[j * 4 + 0] = 0.5 * v[j] * slope;
      J[j * 4 + 1 + j] = 0.5 * p4;
    }
    J[3 * 4 + 0] = slope;
    double rhs[4] = {-G[0], -G[1], -G[2], -G[3]};
    int piv[4];
    if (LAPACKE_dgesv(LAPACK_ROW_MAJOR, 4, 1, J, 4, piv, rhs, 1) != 0) break;
    if (!std::isfinite(rhs[0])) break;
    E = clamp_E(E + rhs[0]);
    v[0] += rhs[1];
    v[1] += rhs[2];
    v[2] += rhs[3];
  }
  return out;
}

}  // namespace nls
