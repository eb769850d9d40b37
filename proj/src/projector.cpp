#include "nls/projector.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>

#include "nls/functionals.hpp"

namespace nls {

namespace {

// pointwise ingredients of the frame: minimal-image displacement from the
// center and the radial tables sampled on the grid
struct Ingredients {
  rvec y[3];
  rvec b;     // b(|y|)
  rvec dbr;   // b'(|y|)/|y|
  rvec deb;   // db/dE (|y|)
};

Ingredients sample_ingredients(const Grid& g, const RadialProfile& prof,
                               const rvec& db_dE, const vec3& c) {
  Ingredients ing;
  const std::size_t n = g.size();
  for (auto& v : ing.y) v.resize(n);
  ing.b.resize(n);
  ing.dbr.resize(n);
  ing.deb.resize(n);
  const double hb = prof.grid.h();
  std::size_t m = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0) {
    double d0 = minimal_image(g.coord(0, i0) - c[0], g.box[0]);
    for (int i1 = 0; i1 < g.n[1]; ++i1) {
      double d1 = minimal_image(g.coord(1, i1) - c[1], g.box[1]);
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
        double d2 = minimal_image(g.coord(2, i2) - c[2], g.box[2]);
        double r = std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
        ing.y[0][m] = d0;
        ing.y[1][m] = d1;
        ing.y[2][m] = d2;
        ing.b[m] = prof.value(r);
        ing.dbr[m] = r > 1e-12 ? prof.deriv(r) / r : 0.0;
        ing.deb[m] = interp_radial(db_dE, hb, r);
      }
    }
  }
  return ing;
}

// eta and the constraint fields from the ingredients at velocity v
void assemble_eta_s(const Ingredients& ing, const vec3& v, const Grid& g, Field& eta,
                    std::array<Field, 8>& s, Field& eta_E) {
  const std::size_t n = g.size();
  eta = Field(g);
  eta_E = Field(g);
  for (auto& f : s) f = Field(g);
  for (std::size_t m = 0; m < n; ++m) {
    double ph = 0.5 * (v[0] * ing.y[0][m] + v[1] * ing.y[1][m] + v[2] * ing.y[2][m]);
    cplx P(std::cos(ph), std::sin(ph));
    cplx e = P * ing.b[m];
    eta.a[m] = e;
    eta_E.a[m] = P * ing.deb[m];
    for (int j = 0; j < 3; ++j) {
      // A_j eta = (v_j/2) eta - i e^{i v.y/2} (y_j/r) b'
      s[j].a[m] = 0.5 * v[j] * e - cplx(0, 1) * P * (ing.y[j][m] * ing.dbr[m]);
    }
    s[3].a[m] = e;
  }
}

// momentum derivatives of eta; p4 and dp4_dE are the discrete values
void assemble_t(const Ingredients& ing, const vec3& v, double p4, double dp4_dE,
                const Grid& g, const Field& eta, const Field& eta_E,
                const std::array<Field, 8>& s, std::array<Field, 8>& t) {
  const std::size_t n = g.size();
  for (auto& f : t) f = Field(g);
  for (std::size_t m = 0; m < n; ++m) {
    cplx e = eta.a[m];
    double vy = v[0] * ing.y[0][m] + v[1] * ing.y[1][m] + v[2] * ing.y[2][m];
    for (int j = 0; j < 3; ++j) t[j].a[m] = cplx(0, ing.y[j][m] / p4) * e;
    t[3].a[m] = eta_E.a[m] / dp4_dE - cplx(0, vy / (2 * p4)) * e;
    // J A_j eta = -i A_j eta and J A_4 eta = -i eta
    for (int j = 0; j < 3; ++j) t[4 + j].a[m] = cplx(0, -1) * s[j].a[m];
    t[7].a[m] = cplx(0, -1) * e;
  }
}

std::array<double, 8> constraint_values(const TangentFrame& f, const Field& u) {
  std::array<double, 8> w;
  for (int l = 0; l < 8; ++l) w[l] = inner(f.s[l], u);
  return w;
}

std::array<double, 8> solve_gram(const TangentFrame& f, std::array<double, 8> w,
                                 char trans) {
  std::array<double, 64> lu = f.lu;
  std::array<int, 8> piv = f.piv;
  int info = LAPACKE_dgetrs(LAPACK_ROW_MAJOR, trans, 8, 1, lu.data(), 8, piv.data(),
                            w.data(), 1);
  if (info != 0) throw std::runtime_error("tangent frame gram solve failed");
  return w;
}

}  // namespace

TangentFrame make_frame(const Grid& g, const RadialProfile& prof, const rvec& db_dE,
                        const vec3& v, const vec3& c) {
  TangentFrame f;
  f.g = &g;
  f.c = c;
  f.par.E = prof.E;
  f.par.v = v;

  Ingredients ing = sample_ingredients(g, prof, db_dE, c);
  Field eta_E;
  assemble_eta_s(ing, v, g, f.eta, f.s, eta_E);

  double p4 = mass(f.eta);
  f.dp4_dE = inner(eta_E, f.eta);
  assemble_t(ing, v, p4, f.dp4_dE, g, f.eta, eta_E, f.s, f.t);

  for (int l = 0; l < 4; ++l)
    for (std::size_t m = 0; m < g.size(); ++m)
      f.s[4 + l].a[m] = cplx(0, 1) * f.t[l].a[m];

  for (int l = 0; l < 4; ++l) f.par.p[l] = 0.5 * inner(f.s[l], f.eta);

  for (int l = 0; l < 8; ++l)
    for (int k = 0; k < 8; ++k) f.gram[l * 8 + k] = inner(f.s[l], f.t[k]);
  f.lu = f.gram;
  int info = LAPACKE_dgetrf(LAPACK_ROW_MAJOR, 8, 8, f.lu.data(), 8, f.piv.data());
  if (info != 0) throw std::runtime_error("tangent frame gram is singular");
  return f;
}

ConstraintSlice make_constraint_slice(const Grid& g, const RadialProfile& prof,
                                      const rvec& db_dE, const vec3& v, const vec3& c) {
  ConstraintSlice cs;
  Ingredients ing = sample_ingredients(g, prof, db_dE, c);
  Field eta_E;
  assemble_eta_s(ing, v, g, cs.eta, cs.s, eta_E);
  double p4 = mass(cs.eta);
  double dp4_dE = inner(eta_E, cs.eta);
  std::array<Field, 8> t;
  assemble_t(ing, v, p4, dp4_dE, g, cs.eta, eta_E, cs.s, t);
  for (int l = 0; l < 4; ++l) {
    cs.s[4 + l] = Field(g);
    for (std::size_t m = 0; m < g.size(); ++m)
      cs.s[4 + l].a[m] = cplx(0, 1) * t[l].a[m];
  }
  return cs;
}

Field project_out_tangent(const TangentFrame& f, const Field& u) {
  std::array<double, 8> cofs = solve_gram(f, constraint_values(f, u), 'N');
  Field out = u;
  for (int k = 0; k < 8; ++k) axpy(out, cplx(-cofs[k], 0), f.t[k]);
  return out;
}

Field project_out_tangent_adjoint(const TangentFrame& f, const Field& u) {
  std::array<double, 8> w;
  for (int k = 0; k < 8; ++k) w[k] = inner(f.t[k], u);
  std::array<double, 8> cofs = solve_gram(f, w, 'T');
  Field out = u;
  for (int l = 0; l < 8; ++l) axpy(out, cplx(-cofs[l], 0), f.s[l]);
  return out;
}

TangentSplit decompose_tangent(const TangentFrame& f, const Field& u) {
  std::array<double, 8> cofs = solve_gram(f, constraint_values(f, u), 'N');
  TangentSplit sp;
  sp.phi = u;
  for (int k = 0; k < 8; ++k) axpy(sp.phi, cplx(-cofs[k], 0), f.t[k]);
  for (int j = 0; j < 4; ++j) {
    sp.P[j] = cofs[j];
    sp.Q[j] = cofs[4 + j];
  }
  return sp;
}

ProjectorInverse invert_projector(const TangentFrame& f, const TangentFrame& ref,
                                  const Field& psi, double tol, int max_iter) {
  ProjectorInverse res;
  res.phi = psi;
  double scale = norm_l2(psi);
  if (scale == 0) {
    res.converged = true;
    return res;
  }
  for (int it = 0; it < max_iter; ++it) {
    // correction -(Pi_f - Pi_ref) phi expressed through the tangent removals
    std::array<double, 8> cf = solve_gram(f, constraint_values(f, res.phi), 'N');
    std::array<double, 8> cr = solve_gram(ref, constraint_values(ref, res.phi), 'N');
    Field next = psi;
    for (int k = 0; k < 8; ++k) {
      axpy(next, cplx(cf[k], 0), f.t[k]);
      axpy(next, cplx(-cr[k], 0), ref.t[k]);
    }
    double delta = 0;
    for (std::size_t m = 0; m < next.a.size(); ++m)
      delta += std::norm(next.a[m] - res.phi.a[m]);
    delta = std::sqrt(delta * f.g->cell_volume());
    res.phi = next;
    res.iterations = it + 1;
    if (delta <= tol * scale) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace nls
