#include "nls/split.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>

#include "nls/synth.hpp"

namespace nls {

ModeFrame make_mode_frame(const Grid& g, const SectorGrid& sg,
                          const std::vector<InternalMode>& modes, const vec3& c) {
  ModeFrame mf;
  mf.g = &g;
  mf.c = c;
  const double dv = g.cell_volume();
  for (const InternalMode& mode : modes) {
    if (mode.ell > 1)
      throw std::runtime_error("mode frame: only monopole and dipole synthesis");
    rvec wF = sector_to_radial(sg, mode.ell, mode.F);
    rvec wG = sector_to_radial(sg, mode.ell, mode.G);
    const double h = sg.h();
    const int mcount = mode.ell == 0 ? 1 : 3;
    for (int mc = 0; mc < mcount; ++mc) {
      ModeEntry e;
      e.ell = mode.ell;
      e.mcomp = mc;
      e.omega = mode.omega;
      Field F3 = synthesize_harmonic(g, mode.ell, mc,
                                     [&](double r) { return interp_radial(wF, h, r); }, c);
      Field G3 = synthesize_harmonic(g, mode.ell, mc,
                                     [&](double r) { return interp_radial(wG, h, r); }, c);
      e.F.resize(g.size());
      e.G.resize(g.size());
      double pair = 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        e.F[i] = F3.a[i].real();
        e.G[i] = G3.a[i].real();
        pair += e.F[i] * e.G[i];
      }
      e.s_box = 2.0 * pair * dv;
      if (!(e.s_box > 0)) throw std::runtime_error("mode frame: nonpositive box pairing");
      const double rs = 1.0 / std::sqrt(e.s_box);
      for (std::size_t i = 0; i < g.size(); ++i) {
        e.F[i] *= rs;
        e.G[i] *= rs;
      }
      mf.entries.push_back(std::move(e));
    }
  }

  const int K = int(mf.entries.size());
  mf.lu.assign(std::size_t(K) * K, 0.0);
  mf.piv.assign(K, 0);
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b) {
      double s = 0;
      const rvec& Ga = mf.entries[a].G;
      const rvec& Fb = mf.entries[b].F;
      for (std::size_t i = 0; i < Ga.size(); ++i) s += Ga[i] * Fb[i];
      mf.lu[std::size_t(a) * K + b] = 2.0 * s * dv;
    }
  if (K > 0 &&
      LAPACKE_dgetrf(LAPACK_ROW_MAJOR, K, K, mf.lu.data(), K, mf.piv.data()) != 0)
    throw std::runtime_error("mode frame: pairing matrix is singular");
  return mf;
}

namespace {

// solve 2C x = rhs or its transpose, complex rhs through the real LU
std::vector<cplx> pairing_solve(const ModeFrame& mf, std::vector<cplx> rhs, char trans) {
  const int K = int(mf.entries.size());
  std::vector<double> re(K), im(K);
  for (int a = 0; a < K; ++a) {
    re[a] = rhs[a].real();
    im[a] = rhs[a].imag();
  }
  std::vector<double> lu = mf.lu;
  std::vector<int> piv = mf.piv;
  if (LAPACKE_dgetrs(LAPACK_ROW_MAJOR, trans, K, 1, lu.data(), K, piv.data(), re.data(),
                     1) != 0 ||
      LAPACKE_dgetrs(LAPACK_ROW_MAJOR, trans, K, 1, lu.data(), K, piv.data(), im.data(),
                     1) != 0)
    throw std::runtime_error("mode frame: pairing solve failed");
  for (int a = 0; a < K; ++a) rhs[a] = cplx(re[a], im[a]);
  return rhs;
}

}  // namespace

std::vector<std::pair<cplx, cplx>> mode_pair_amplitudes(const ModeFrame& mf,
                                                        const cvec& plus,
                                                        const cvec& minus) {
  const int K = int(mf.entries.size());
  const double dv = mf.g->cell_volume();
  std::vector<cplx> rxi(K), rzeta(K);
  for (int a = 0; a < K; ++a) {
    cplx gp(0, 0), fm(0, 0);
    const rvec& F = mf.entries[a].F;
    const rvec& G = mf.entries[a].G;
    for (std::size_t i = 0; i < plus.size(); ++i) {
      gp += G[i] * plus[i];
      fm += F[i] * minus[i];
    }
    gp *= dv;
    fm *= dv;
    rxi[a] = gp - cplx(0, 1) * fm;
    rzeta[a] = gp + cplx(0, 1) * fm;
  }
  // raw_xi + raw_zeta = 2C (xi + zeta), raw_xi - raw_zeta = 2C^T (xi - zeta)
  std::vector<cplx> sum(K), dif(K);
  for (int a = 0; a < K; ++a) {
    sum[a] = rxi[a] + rzeta[a];
    dif[a] = rxi[a] - rzeta[a];
  }
  sum = pairing_solve(mf, std::move(sum), 'N');
  dif = pairing_solve(mf, std::move(dif), 'T');
  std::vector<std::pair<cplx, cplx>> out(K);
  for (int a = 0; a < K; ++a)
    out[a] = {0.5 * (sum[a] + dif[a]), 0.5 * (sum[a] - dif[a])};
  return out;
}

std::vector<cplx> mode_amplitudes(const ModeFrame& mf, const Field& phi) {
  rvec plus, minus;
  pair_parts(phi, plus, minus);
  cvec pc(plus.size()), mc(minus.size());
  for (std::size_t i = 0; i < plus.size(); ++i) {
    pc[i] = plus[i];
    mc[i] = minus[i];
  }
  auto pairs = mode_pair_amplitudes(mf, pc, mc);
  std::vector<cplx> xi(pairs.size());
  for (std::size_t a = 0; a < pairs.size(); ++a) xi[a] = pairs[a].first;
  return xi;
}

Field mode_superposition(const ModeFrame& mf, const std::vector<cplx>& xi) {
  if (xi.size() != mf.entries.size())
    throw std::runtime_error("mode superposition: amplitude count mismatch");
  const Grid& g = *mf.g;
  rvec plus(g.size(), 0.0), minus(g.size(), 0.0);
  for (std::size_t a = 0; a < xi.size(); ++a) {
    const double ap = 2.0 * xi[a].real(), am = -2.0 * xi[a].imag();
    const rvec& F = mf.entries[a].F;
    const rvec& G = mf.entries[a].G;
    for (std::size_t i = 0; i < g.size(); ++i) {
      plus[i] += ap * F[i];
      minus[i] += am * G[i];
    }
  }
  Field out(g);
  from_pair(out, plus, minus);
  return out;
}

DiscreteContinuousSplit split_field(const ModeFrame& mf, const Field& phi) {
  DiscreteContinuousSplit sp;
  sp.xi = mode_amplitudes(mf, phi);
  sp.phi_c = phi;
  if (!sp.xi.empty()) {
    Field disc = mode_superposition(mf, sp.xi);
    axpy(sp.phi_c, cplx(-1, 0), disc);
  }
  return sp;
}

Field project_continuous(const TangentFrame& ref, const ModeFrame& mf, const Field& u) {
  Field v = project_out_tangent(ref, u);
  return split_field(mf, v).phi_c;
}

}  // namespace nls
