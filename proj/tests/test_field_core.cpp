#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nls/field.hpp"
#include "nls/functionals.hpp"

using namespace nls;

namespace {
Field gaussian(const Grid& g, double A, double sigma) {
  Field u(g);
  fill(u, [&](const std::array<double, 3>& x) {
    double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return cplx(A * std::exp(-r2 / (2 * sigma * sigma)), 0.0);
  });
  return u;
}
}  // namespace

TEST_CASE("scalar product of a gaussian against the closed form") {
  Grid g = Grid::cube(48, 16.0);
  const double A = 1.3, sigma = 1.0;
  Field u = gaussian(g, A, sigma);
  // <u;u> = 2 Int A^2 exp(-r^2/sigma^2) = 2 A^2 sigma^3 pi^(3/2)
  double expect = 2.0 * A * A * std::pow(sigma, 3) * std::pow(M_PI, 1.5);
  CHECK(inner(u, u) == doctest::Approx(expect).epsilon(1e-10));
  CHECK(mass(u) == doctest::Approx(0.5 * expect).epsilon(1e-10));
  CHECK(symplectic(u, u) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("symplectic pairing of a plane wave with its i-rotation is twice the volume") {
  Grid g = Grid::cube(32, 12.0);
  Field u(g);
  double k1 = 2.0 * M_PI / g.box[0];  // one lattice mode
  fill(u, [&](const std::array<double, 3>& x) {
    return std::polar(1.0, k1 * x[0]);
  });
  double V = g.box[0] * g.box[1] * g.box[2];
  CHECK(symplectic(u, apply_E(u)) == doctest::Approx(2.0 * V).epsilon(1e-12));
  CHECK(symplectic(apply_E(u), u) == doctest::Approx(-2.0 * V).epsilon(1e-12));
  CHECK(inner(u, apply_E(u)) == doctest::Approx(0.0).epsilon(1e-12));
  // J inverts E
  Field w = apply_J(apply_E(u));
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(w[i] - u[i]) <= 1e-15);
}

TEST_CASE("momentum operator acts as the wavenumber on plane waves") {
  Grid g = Grid::cube(16, 8.0);
  Field u(g);
  double k1 = 3.0 * 2.0 * M_PI / g.box[0];
  fill(u, [&](const std::array<double, 3>& x) { return std::polar(1.0, k1 * x[0]); });
  Field Au = apply_A(1, u);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(Au[i] - k1 * u[i]) <= 1e-12);
  Field A2u = apply_A(2, u);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(A2u[i]) <= 1e-12);
}

TEST_CASE("spectral momentum equals the quadratic form built from the generator") {
  Grid g = Grid::cube(24, 10.0);
  Field u(g);
  fill(u, [&](const std::array<double, 3>& x) {
    double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return std::exp(-0.3 * r2) * std::polar(1.0, 0.7 * x[0] - 0.4 * x[1] + 0.1 * x[0] * x[2]);
  });
  for (int j = 1; j <= 4; ++j) {
    double direct = momentum(j, u);
    double form = 0.5 * inner(apply_A(j, u), u);
    CHECK(direct == doctest::Approx(form).epsilon(1e-12));
  }
  auto P = momentum_all(u);
  for (int j = 1; j <= 4; ++j) CHECK(P[j - 1] == doctest::Approx(momentum(j, u)).epsilon(1e-12));
}

TEST_CASE("group action composes and its gauge part is a global phase") {
  Grid g = Grid::cube(24, 12.0);
  Field u = gaussian(g, 1.0, 1.2);
  fill(u, [&](const std::array<double, 3>& x) {
    double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return std::exp(-0.4 * r2) * cplx(1.0, 0.3 * x[1]);
  });

  std::array<double, 3> qa{0.7, -0.3, 0.2}, qb{-0.2, 0.5, 1.1};
  Field one = group_action(0.4, qa, group_action(-1.1, qb, u));
  std::array<double, 3> qs{qa[0] + qb[0], qa[1] + qb[1], qa[2] + qb[2]};
  Field two = group_action(0.4 - 1.1, qs, u);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(one[i] - two[i]) <= 1e-12);

  Field ph = group_action(0.9, {0, 0, 0}, u);
  cplx expect = std::polar(1.0, -0.9);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(ph[i] - expect * u[i]) <= 1e-13);

  // translation moves the gaussian: value at x of the shifted field = value at x - q
  Field tr = group_action(0.0, {1.0, 0, 0}, gaussian(g, 1.0, 1.0));
  std::size_t m = 0;
  double worst = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0)
    for (int i1 = 0; i1 < g.n[1]; ++i1)
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
        double x0 = minimal_image(g.coord(0, i0) - 1.0, g.box[0]);
        double x1 = g.coord(1, i1), x2 = g.coord(2, i2);
        double r2 = x0 * x0 + x1 * x1 + x2 * x2;
        worst = std::max(worst, std::abs(tr[m] - cplx(std::exp(-r2 / 2), 0)));
      }
  CHECK(worst <= 1e-9);  // spectral interpolation of a well-resolved gaussian

  // all four momenta and the hamiltonian are invariant under the action
  Nonlinearity nl = Nonlinearity::cubic();
  Field moved = group_action(1.3, {0.9, -0.7, 0.25}, u);
  for (int j = 1; j <= 4; ++j)
    CHECK(momentum(j, moved) == doctest::Approx(momentum(j, u)).epsilon(1e-10));
  CHECK(hamiltonian(moved, nl) == doctest::Approx(hamiltonian(u, nl)).epsilon(1e-10));
}

TEST_CASE("boost shifts momentum by half the velocity times the mass") {
  Grid g = Grid::cube(32, 14.0);
  Field u = gaussian(g, 1.1, 1.0);
  double p4 = mass(u);
  Field bu = boost({0.4, 0.0, 0.0}, u);
  CHECK(momentum(1, bu) == doctest::Approx(0.2 * p4).epsilon(1e-10));
  CHECK(momentum(2, bu) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(mass(bu) == doctest::Approx(p4).epsilon(1e-13));

  // general field: P_j -> P_j + (v_j/2) P_4
  fill(u, [&](const std::array<double, 3>& x) {
    double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return std::exp(-0.5 * r2) * std::polar(1.0, 0.3 * x[0] + 0.2 * x[1] * x[1]);
  });
  std::array<double, 3> v{-0.3, 0.8, 0.1};
  Field bv = boost(v, u);
  for (int j = 1; j <= 3; ++j)
    CHECK(momentum(j, bv) ==
          doctest::Approx(momentum(j, u) + 0.5 * v[j - 1] * mass(u)).epsilon(1e-10));
}

TEST_CASE("one-dimensional sech profile has the known mass and energy") {
  Grid g = Grid::line(512, 40.0);
  Field u(g);
  fill(u, [&](const std::array<double, 3>& x) {
    return cplx(std::sqrt(2.0) / std::cosh(x[0]), 0.0);
  });
  Nonlinearity nl = Nonlinearity::cubic();
  CHECK(mass(u) == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(hamiltonian(u, nl) == doctest::Approx(-4.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("free flow is a spectral phase and preserves every Sobolev norm") {
  Grid g = Grid::cube(24, 10.0);
  Field u(g);
  fill(u, [&](const std::array<double, 3>& x) {
    double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return std::exp(-0.6 * r2) * cplx(0.4, -1.1);
  });
  Field w = free_flow(u, 0.37);
  CHECK(mass(w) == doctest::Approx(mass(u)).epsilon(1e-12));
  CHECK(norm_h1(w) == doctest::Approx(norm_h1(u)).epsilon(1e-12));
  Field back = free_flow(w, -0.37);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(back[i] - u[i]) <= 1e-13);

  // plane wave picks up exactly exp(-i |k|^2 t)
  Field pw(g);
  double k1 = 2.0 * 2.0 * M_PI / g.box[0];
  fill(pw, [&](const std::array<double, 3>& x) { return std::polar(1.0, k1 * x[0]); });
  Field pf = free_flow(pw, 0.5);
  cplx expect = std::polar(1.0, -k1 * k1 * 0.5);
  for (std::size_t i = 0; i < pw.size(); ++i) CHECK(std::abs(pf[i] - expect * pw[i]) <= 1e-12);
}

TEST_CASE("pair split carries the scalar product to the flat one") {
  Grid g = Grid::cube(16, 8.0);
  Field u(g), v(g);
  fill(u, [&](const std::array<double, 3>& x) {
    return std::exp(-0.4 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])) * cplx(1.2, -0.3);
  });
  fill(v, [&](const std::array<double, 3>& x) {
    return std::exp(-0.5 * (x[0] * x[0] + x[2] * x[2])) * cplx(-0.2, 0.9);
  });
  rvec up, um, vp, vm;
  pair_parts(u, up, um);
  pair_parts(v, vp, vm);
  double flat = 0;
  for (std::size_t i = 0; i < u.size(); ++i) flat += up[i] * vp[i] + um[i] * vm[i];
  flat *= g.cell_volume();
  CHECK(flat == doctest::Approx(inner(u, v)).epsilon(1e-12));

  Field back(g);
  from_pair(back, up, um);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(back[i] - u[i]) <= 1e-15);

  // E on pairs: (plus, minus) -> (minus, -plus)
  Field eu = apply_E(u);
  rvec ep, em;
  pair_parts(eu, ep, em);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(ep[i] == doctest::Approx(um[i]).epsilon(1e-14));
    CHECK(em[i] == doctest::Approx(-up[i]).epsilon(1e-14));
  }
}

TEST_CASE("weighted norm recenters with the field and is bounded by the plain norm") {
  Grid g = Grid::cube(24, 12.0);
  Field u = gaussian(g, 1.0, 1.1);
  double w0 = weighted_norm(u, {0, 0, 0}, 2.0);
  CHECK(w0 < norm_l2(u));
  CHECK(w0 > 0.1 * norm_l2(u));  // a centered gaussian keeps most of its weight
  std::array<double, 3> q{2.0, -1.0, 0.5};
  Field tu = group_action(0.0, q, u);
  double w1 = weighted_norm(tu, q, 2.0);
  CHECK(w1 == doctest::Approx(w0).epsilon(1e-8));
  // moving the window away from the bump suppresses the norm
  CHECK(weighted_norm(u, {4.0, 4.0, 4.0}, 2.0) < 0.05 * w0);
}
