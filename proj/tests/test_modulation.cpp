#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "nls/coordinates.hpp"
#include "nls/decomposition.hpp"
#include "nls/functionals.hpp"
#include "nls/scenario.hpp"
#include "nls/split.hpp"

using namespace nls;

namespace {

double field_norm(const Field& u) { return norm_l2(u); }

double rel_diff(const Field& a, const Field& b) {
  Field d = a;
  axpy(d, cplx(-1, 0), b);
  return norm_l2(d) / norm_l2(b);
}

// band-limited complex field with unit L2 norm, reproducible per seed
Field random_band(const Grid& g, std::uint64_t seed, int kc = 5) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  cvec hat(std::size_t(g.n[0]) * g.n[1] * g.n[2], cplx(0, 0));
  std::size_t m = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0) {
    int k0 = i0 <= g.n[0] / 2 ? i0 : i0 - g.n[0];
    for (int i1 = 0; i1 < g.n[1]; ++i1) {
      int k1 = i1 <= g.n[1] / 2 ? i1 : i1 - g.n[1];
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
        int k2 = i2 <= g.n[2] / 2 ? i2 : i2 - g.n[2];
        if (std::abs(k0) <= kc && std::abs(k1) <= kc && std::abs(k2) <= kc)
          hat[m] = cplx(gauss(rng), gauss(rng));
      }
    }
  }
  Field f(g);
  fft_for(g).backward(hat.data(), f.a.data());
  double s = 1.0 / norm_l2(f);
  for (auto& z : f.a) z *= s;
  return f;
}

// everything the suite needs, built once: the interpolated family, reference
// frames at rest on two grids, and the internal-mode frame on the small grid
struct Lab {
  SolitonFamily fam{scenario::medium(), scenario::E_window_lo, scenario::E_window_hi};
  Grid g48 = Grid::cube(48, 16.0);
  Grid g64 = Grid::cube(64, 16.0);
  vec3 c{0, 0, 0};
  TangentFrame ref48, ref64;
  SpectralDecomposition sd;
  ModeFrame mf;
};

const Lab& lab() {
  static Lab L = [] {
    Lab l;
    const auto& e = l.fam.at(scenario::E_star);
    l.ref48 = make_frame(l.g48, e.prof, e.db_dE, {0, 0, 0}, l.c);
    l.ref64 = make_frame(l.g64, e.prof, e.db_dE, {0, 0, 0}, l.c);
    l.sd = discrete_spectrum(e.prof, scenario::medium(), 0, 1200,
                             2.0 * e.prof.grid.r_max);
    l.mf = make_mode_frame(l.g48, l.sd.grid, l.sd.modes, l.c);
    return l;
  }();
  return L;
}

}  // namespace

TEST_CASE("tangent frame reproduces the symplectic pairing table") {
  const Lab& l = lab();
  for (const vec3& v : {vec3{0, 0, 0}, vec3{0.15, -0.1, 0.05}}) {
    const auto& e = l.fam.at(scenario::E_star);
    TangentFrame f = make_frame(l.g48, e.prof, e.db_dE, v, l.c);

    // <A_j eta; d eta/dp_k> = delta_jk (the normalization the momenta
    // parametrization is chosen to enforce)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        CHECK(std::abs(inner(f.s[j], f.t[k]) - (j == k ? 1.0 : 0.0)) <= 1e-8);

    // full 8x8 pairing table is diag(+1 x4, -1 x4) up to tail-level couplings
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k) {
        double want = j == k ? (j < 4 ? 1.0 : -1.0) : 0.0;
        CHECK(std::abs(f.gram[j * 8 + k] - want) <= 2e-6);
      }

    // soliton momenta: rest frame carries (0, 0, 0, mass)
    if (v[0] == 0 && v[1] == 0 && v[2] == 0) {
      CHECK(f.par.p[3] == doctest::Approx(scenario::mass_star).epsilon(1e-6));
      for (int j = 0; j < 3; ++j) CHECK(std::abs(f.par.p[j]) <= 1e-9 * f.par.p[3]);
    } else {
      // boosted momenta ride the mass: p_j = (v_j/2) p4
      for (int j = 0; j < 3; ++j)
        CHECK(f.par.p[j] == doctest::Approx(0.5 * v[j] * f.par.p[3]).epsilon(1e-8));
    }
    CHECK(f.dp4_dE > 0);
  }
}

TEST_CASE("projector annihilates the tangent directions") {
  const Lab& l = lab();
  const TangentFrame& f = l.ref64;
  for (int k = 0; k < 8; ++k) {
    Field pk = project_out_tangent(f, f.t[k]);
    CHECK(field_norm(pk) <= 1e-6 * field_norm(f.t[k]));
    Field ps = project_out_tangent_adjoint(f, f.s[k]);
    CHECK(field_norm(ps) <= 1e-6 * field_norm(f.s[k]));
  }
}

TEST_CASE("projector is idempotent and leaves no constraint pairing") {
  const Lab& l = lab();
  const TangentFrame& f = l.ref64;
  for (int trial = 0; trial < 50; ++trial) {
    Field u = random_band(l.g64, 1000 + trial);
    Field pu = project_out_tangent(f, u);
    Field ppu = project_out_tangent(f, pu);
    CHECK(rel_diff(ppu, pu) <= 1e-8);
    // projected fields pair to zero against every constraint slot
    for (int k = 0; k < 8; ++k) CHECK(std::abs(inner(f.s[k], pu)) <= 1e-10);
  }
}

TEST_CASE("projector adjoint identity on random pairs") {
  const Lab& l = lab();
  const TangentFrame& f = l.ref64;
  for (int trial = 0; trial < 50; ++trial) {
    Field u = random_band(l.g64, 2000 + trial);
    Field w = random_band(l.g64, 3000 + trial);
    double a = inner(project_out_tangent(f, u), w);
    double b = inner(u, project_out_tangent_adjoint(f, w));
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("multiplication by i intertwines the projector with its adjoint") {
  const Lab& l = lab();
  const TangentFrame& f = l.ref64;
  Field u = random_band(l.g64, 47);

  // E Pi = Pi^* E
  Field lhs = apply_E(project_out_tangent(f, u));
  Field rhs = project_out_tangent_adjoint(f, apply_E(u));
  CHECK(rel_diff(lhs, rhs) <= 1e-12);

  // Pi J = J Pi^* (J = -i); both follow from the frame's pointwise pairing
  Field ju = u;
  for (auto& z : ju.a) z *= cplx(0, -1);
  Field lhs2 = project_out_tangent(f, ju);
  Field rhs2 = project_out_tangent_adjoint(f, u);
  for (auto& z : rhs2.a) z *= cplx(0, -1);
  CHECK(rel_diff(lhs2, rhs2) <= 1e-12);
}

TEST_CASE("tangent decomposition isolates coefficients and reconstructs") {
  const Lab& l = lab();
  const TangentFrame& f = l.ref64;

  TangentSplit d1 = decompose_tangent(f, f.t[1]);  // d eta / dp_2
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(d1.P[j] - (j == 1 ? 1.0 : 0.0)) <= 1e-12);
    CHECK(std::abs(d1.Q[j]) <= 1e-12);
  }
  CHECK(field_norm(d1.phi) <= 1e-10 * field_norm(f.t[1]));

  TangentSplit d2 = decompose_tangent(f, f.t[7]);  // J A_4 eta
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(d2.P[j]) <= 1e-12);
    CHECK(std::abs(d2.Q[j] - (j == 3 ? 1.0 : 0.0)) <= 1e-12);
  }
  CHECK(field_norm(d2.phi) <= 1e-10 * field_norm(f.t[7]));

  for (int trial = 0; trial < 50; ++trial) {
    Field u = random_band(l.g64, 4000 + trial);
    TangentSplit d = decompose_tangent(f, u);
    Field rec = d.phi;
    for (int j = 0; j < 4; ++j) {
      axpy(rec, cplx(d.P[j], 0), f.t[j]);
      axpy(rec, cplx(d.Q[j], 0), f.t[4 + j]);
    }
    CHECK(rel_diff(rec, u) <= 1e-8);
    for (int k = 0; k < 8; ++k) CHECK(std::abs(inner(f.s[k], d.phi)) <= 1e-10);
  }
}

TEST_CASE("extraction recovers group translates and boosts exactly") {
  const Lab& l = lab();
  const Field& eta = l.ref48.eta;

  // u = eta itself: the zero root
  ModulationCoordinates c0 = extract_coordinates(
      eta, l.fam, l.ref48, {0, {0, 0, 0}, scenario::E_star, {0, 0, 0}});
  REQUIRE(c0.converged);
  CHECK(c0.iterations == 0);
  CHECK(std::abs(c0.q4) <= 1e-10);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(c0.q[j]) <= 1e-10);
  CHECK(std::abs(c0.par.E - scenario::E_star) <= 1e-10);
  CHECK(field_norm(c0.phi) <= 1e-10 * field_norm(eta));

  // pure group translate: gauge + shift
  double g4 = 1.9;
  vec3 gq{2.25, -1.5, 0.75};
  Field u = group_action(g4, gq, eta);
  ModulationCoordinates c1 = extract_coordinates(
      u, l.fam, l.ref48, {1.2, {1.8, -1.0, 0.3}, scenario::E_star, {0, 0, 0}});
  REQUIRE(c1.converged);
  for (double r : c1.residuals) CHECK(std::abs(r) <= 1e-10);
  CHECK(std::abs(std::remainder(c1.q4 - g4, 2 * M_PI)) <= 1e-10);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(c1.q[j] - gq[j]) <= 1e-9);
  CHECK(std::abs(c1.par.E - scenario::E_star) <= 1e-9);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(c1.par.v[j]) <= 1e-10);
  CHECK(field_norm(c1.phi) <= 1e-9 * field_norm(eta));

  // multiplying in the boost phase about the center lands exactly on the
  // moving member of the family: same E, velocity read off, no remainder
  vec3 v{0.12, -0.08, 0.05};
  Field ub = boost(v, eta);
  ModulationCoordinates c2 = extract_coordinates(
      ub, l.fam, l.ref48, {0, {0, 0, 0}, scenario::E_star, {0, 0, 0}});
  REQUIRE(c2.converged);
  CHECK(std::abs(c2.par.E - scenario::E_star) <= 1e-8);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(c2.par.v[j] - v[j]) <= 1e-9);
  CHECK(field_norm(c2.phi) <= 1e-8 * field_norm(eta));
}

TEST_CASE("extraction round trip and equivariance") {
  const Lab& l = lab();

  ModulationCoordinates in;
  in.q4 = 0.45;
  in.q = {0.8, -0.6, 0.35};
  in.par.E = 1.06 * scenario::E_star;
  in.par.v = {0.06, -0.045, 0.03};
  // remainder prepared in the reference slice so the round trip returns the
  // same representative
  Field w = random_band(l.g48, 99);
  in.phi = project_out_tangent(l.ref48, w);
  for (auto& z : in.phi.a) z *= 0.02 * field_norm(l.ref48.eta);

  Field u = reconstruct(in, l.fam, l.ref48);
  ExtractGuess guess{in.q4 + 0.05, {in.q[0] - 0.04, in.q[1] + 0.06, in.q[2] - 0.03},
                     scenario::E_star, {0, 0, 0}};
  ModulationCoordinates out = extract_coordinates(u, l.fam, l.ref48, guess);
  REQUIRE(out.converged);
  REQUIRE(out.phi_converged);
  for (double r : out.residuals) CHECK(std::abs(r) <= 1e-10);
  CHECK(std::abs(std::remainder(out.q4 - in.q4, 2 * M_PI)) <= 1e-8);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(out.q[j] - in.q[j]) <= 1e-8);
  CHECK(std::abs(out.par.E - in.par.E) <= 1e-8 * in.par.E);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(out.par.v[j] - in.par.v[j]) <= 1e-8);
  CHECK(rel_diff(out.phi, in.phi) <= 1e-6);

  // the reconstruction of the extracted coordinates reproduces the field
  Field u2 = reconstruct(out, l.fam, l.ref48);
  CHECK(rel_diff(u2, u) <= 1e-8);

  // acting by a further group element shifts q and nothing else
  double h4 = -0.9;
  vec3 hq{-0.7, 0.45, 1.1};
  Field hu = group_action(h4, hq, u);
  ExtractGuess hguess{guess.q4 + h4,
                      {guess.q[0] + hq[0], guess.q[1] + hq[1], guess.q[2] + hq[2]},
                      guess.E, guess.v};
  ModulationCoordinates heq = extract_coordinates(hu, l.fam, l.ref48, hguess);
  REQUIRE(heq.converged);
  CHECK(std::abs(std::remainder(heq.q4 - out.q4 - h4, 2 * M_PI)) <= 1e-8);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(heq.q[j] - out.q[j] - hq[j]) <= 1e-8);
  CHECK(std::abs(heq.par.E - out.par.E) <= 1e-8 * out.par.E);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(heq.par.v[j] - out.par.v[j]) <= 1e-8);
  CHECK(rel_diff(heq.phi, out.phi) <= 1e-8);
}

TEST_CASE("extraction under a small continuous perturbation") {
  const Lab& l = lab();
  const Field& eta = l.ref48.eta;

  // remove tangent and internal-mode content so the perturbation is a pure
  // continuous-spectrum field, then scale relative to the soliton
  Field wraw = random_band(l.g48, 7);
  Field wfield = project_continuous(l.ref48, l.mf, wraw);
  double s = field_norm(eta) / field_norm(wfield);
  for (auto& z : wfield.a) z *= s;

  double delta = 1e-3;
  Field u = eta;
  axpy(u, cplx(delta, 0), wfield);

  ModulationCoordinates out = extract_coordinates(
      u, l.fam, l.ref48, {0, {0, 0, 0}, scenario::E_star, {0, 0, 0}});
  REQUIRE(out.converged);
  REQUIRE(out.phi_converged);
  for (double r : out.residuals) CHECK(std::abs(r) <= 1e-10);

  // remainder is first order in the perturbation
  double phin = field_norm(out.phi) / (delta * field_norm(wfield));
  CHECK(phin >= 0.5);
  CHECK(phin <= 2.0);

  // parameters move only at second order: the perturbation pairs to zero
  // against every constraint slot at the unperturbed point
  CHECK(std::abs(out.par.p[3] - l.ref48.par.p[3]) <= 1e-2);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(out.par.p[j]) <= 1e-2);
}

TEST_CASE("extraction basin admits five percent gradient-norm perturbations") {
  const Lab& l = lab();
  const Field& eta = l.ref48.eta;

  Field d = random_band(l.g48, 11);
  double target = 0.05 * norm_h1(eta);
  double s = target / norm_h1(d);
  Field u = eta;
  axpy(u, cplx(s, 0), d);

  ModulationCoordinates out = extract_coordinates(
      u, l.fam, l.ref48, {0, {0, 0, 0}, scenario::E_star, {0, 0, 0}});
  REQUIRE(out.converged);
  CHECK(out.iterations <= 8);
}

TEST_CASE("implicit momenta pin the dressed soliton") {
  const Lab& l = lab();
  const TangentFrame& ref = l.ref48;

  // zero remainder: the map returns the requested parameters identically
  Field zero(l.g48);
  std::array<double, 4> p0 = ref.par.p;
  ImplicitParams base = implicit_params({0, 0, 0, 0}, zero, p0, l.fam, ref);
  REQUIRE(base.converged);
  CHECK(std::abs(base.par.E - scenario::E_star) <= 1e-9);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(base.par.v[j]) <= 1e-11);
  for (double r : base.residuals) CHECK(std::abs(r) <= 1e-10);

  // a genuine remainder with its own momenta: the solved parameters make the
  // dressed soliton carry exactly the requested totals
  Field phi = project_out_tangent(ref, random_band(l.g48, 21));
  for (auto& z : phi.a) z *= 0.02 * field_norm(ref.eta);
  std::array<double, 4> N = momentum_all(phi);
  std::array<double, 4> target{N[0] + 0.3, N[1] - 0.2, N[2] + 0.1,
                               ref.par.p[3] + N[3] + 5.0};
  ImplicitParams out = implicit_params(N, phi, target, l.fam, ref);
  REQUIRE(out.converged);
  for (double r : out.residuals) CHECK(std::abs(r) <= 1e-10);

  // independent evaluation of the pinned momenta by direct quadrature
  const auto& e = l.fam.at(out.par.E);
  TangentFrame fr = make_frame(l.g48, e.prof, e.db_dE, out.par.v, l.c);
  Field dressed = project_out_tangent(fr, phi);
  axpy(dressed, cplx(1, 0), fr.eta);
  std::array<double, 4> tot = momentum_all(dressed);
  for (int j = 0; j < 4; ++j)
    CHECK(std::abs(tot[j] + N[j] - momentum(j + 1, phi) - target[j]) <= 1e-10);

  // leading-order expansion: p = p0 - N up to quadratic corrections
  CHECK(std::abs(out.par.p[3] - (target[3] - N[3])) <= 1e-3 * target[3]);
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(out.par.p[j] - (target[j] - N[j])) <= 2e-2);
}

TEST_CASE("mode split: literal eigenmode amplitudes") {
  const Lab& l = lab();
  REQUIRE(l.mf.entries.size() == 1);  // single internal oscillation at the study point
  CHECK(l.mf.entries[0].omega == doctest::Approx(scenario::omega1).epsilon(1e-5));

  // synthesize the frame's own F and G tables through the superposition map
  Field supF = mode_superposition(l.mf, {cplx(1, 0)});   // plus = 2F, minus = 0
  Field supG = mode_superposition(l.mf, {cplx(0, 1)});   // plus = 0, minus = -2G
  std::size_t n = supF.a.size();
  rvec fp, fm, gp, gm;
  pair_parts(supF, fp, fm);
  pair_parts(supG, gp, gm);
  cvec Fv(n), Gv(n);
  for (std::size_t i = 0; i < n; ++i) {
    Fv[i] = 0.5 * fp[i];
    Gv[i] = -0.5 * gm[i];
  }

  // v_- has pair parts (F, +iG): amplitude pair (xi, zeta) = (1, 0)
  cvec minus_m(n), minus_p(n);
  for (std::size_t i = 0; i < n; ++i) {
    minus_m[i] = cplx(0, 1) * Gv[i];
    minus_p[i] = cplx(0, -1) * Gv[i];
  }
  auto am = mode_pair_amplitudes(l.mf, Fv, minus_m);
  CHECK(std::abs(am[0].first - cplx(1, 0)) <= 1e-10);
  CHECK(std::abs(am[0].second) <= 1e-10);

  // v_+ has pair parts (F, -iG): amplitude pair (0, 1)
  auto ap = mode_pair_amplitudes(l.mf, Fv, minus_p);
  CHECK(std::abs(ap[0].first) <= 1e-10);
  CHECK(std::abs(ap[0].second - cplx(1, 0)) <= 1e-10);
}

TEST_CASE("mode split: random fields resolve exactly") {
  const Lab& l = lab();
  Field phi = random_band(l.g48, 31);

  DiscreteContinuousSplit sp = split_field(l.mf, phi);
  // continuous part carries no internal-mode content
  std::vector<cplx> back = mode_amplitudes(l.mf, sp.phi_c);
  for (const cplx& x : back) CHECK(std::abs(x) <= 1e-12);

  // superposition + continuous part reproduce the field
  Field rec = mode_superposition(l.mf, sp.xi);
  axpy(rec, cplx(1, 0), sp.phi_c);
  CHECK(rel_diff(rec, phi) <= 1e-12);

  // amplitude extraction inverts superposition exactly
  std::vector<cplx> xi{cplx(0.37, -0.81)};
  Field sup = mode_superposition(l.mf, xi);
  std::vector<cplx> got = mode_amplitudes(l.mf, sup);
  CHECK(std::abs(got[0] - xi[0]) <= 1e-12);

  // momentum functionals of the continuous part agree with the generator form
  for (int j = 1; j <= 4; ++j) {
    double direct = momentum(j, sp.phi_c);
    double viaA = 0.5 * inner(apply_A(j, sp.phi_c), sp.phi_c);
    CHECK(direct == doctest::Approx(viaA).epsilon(1e-12));
  }
}

TEST_CASE("reconstruction bookkeeping: zero remainder and carried momenta") {
  const Lab& l = lab();

  ModulationCoordinates plain;
  plain.q4 = 0;
  plain.q = {0, 0, 0};
  plain.par = l.ref48.par;
  plain.phi = Field(l.g48);
  Field u0 = reconstruct(plain, l.fam, l.ref48);
  CHECK(rel_diff(u0, l.ref48.eta) <= 1e-12);

  // group action preserves all four momenta, and the projected remainder
  // pairs to zero against the constraint slots, so the totals add up exactly
  ModulationCoordinates c;
  c.q4 = 0.6;
  c.q = {1.0, -0.4, 0.2};
  c.par.E = scenario::E_star;
  c.par.v = {0.08, 0.02, -0.05};
  c.phi = project_out_tangent(l.ref48, random_band(l.g48, 55));
  for (auto& z : c.phi.a) z *= 0.5;
  Field u = reconstruct(c, l.fam, l.ref48);

  const auto& e = l.fam.at(c.par.E);
  TangentFrame fr = make_frame(l.g48, e.prof, e.db_dE, c.par.v, l.c);
  Field proj = project_out_tangent(fr, c.phi);
  std::array<double, 4> pu = momentum_all(u);
  std::array<double, 4> pphi = momentum_all(proj);
  for (int j = 0; j < 4; ++j)
    CHECK(std::abs(pu[j] - fr.par.p[j] - pphi[j]) <= 1e-8 * std::abs(pu[3]));
}
