#include "nls/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "nls/family.hpp"
#include "nls/functionals.hpp"
#include "nls/radial.hpp"

namespace nls {

namespace {

// distance from x to c under the periodic minimal image, component-wise
inline void image_delta(const Grid& g, int i, int j, int k, const vec3& c, double d[3]) {
  d[0] = minimal_image(g.coord(0, i) - c[0], g.box[0]);
  d[1] = minimal_image(g.coord(1, j) - c[1], g.box[1]);
  d[2] = minimal_image(g.coord(2, k) - c[2], g.box[2]);
}

}  // namespace

Field synthesize_radial(const Grid& g, const std::function<double(double)>& f, const vec3& c) {
  Field out(g);
  std::size_t idx = 0;
  double d[3];
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j)
      for (int k = 0; k < g.n[2]; ++k, ++idx) {
        image_delta(g, i, j, k, c, d);
        out.a[idx] = f(std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]));
      }
  return out;
}

rvec sector_to_radial(const SectorGrid& sg, int ell, const rvec& u) {
  const int m = sg.m;
  rvec w(m + 1);
  for (int k = 0; k < m; ++k) w[k + 1] = u[k] / sg.r(k);
  if (ell == 0)  // even in r: cubic extrapolation to the origin
    w[0] = 4.0 * w[1] - 6.0 * w[2] + 4.0 * w[3] - w[4];
  else
    w[0] = 0.0;
  return w;
}

Field synthesize_harmonic(const Grid& g, int ell, int mcomp,
                          const std::function<double(double)>& w, const vec3& c) {
  if (ell < 0 || ell > 1) throw std::invalid_argument("synthesize_harmonic: need ell in {0,1}");
  if (ell == 1 && (mcomp < 0 || mcomp > 2))
    throw std::invalid_argument("synthesize_harmonic: mcomp in {0,1,2}");
  const double y0 = 1.0 / std::sqrt(4.0 * M_PI);
  const double y1 = std::sqrt(3.0 / (4.0 * M_PI));
  Field out(g);
  std::size_t idx = 0;
  double d[3];
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j)
      for (int k = 0; k < g.n[2]; ++k, ++idx) {
        image_delta(g, i, j, k, c, d);
        double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        if (ell == 0) {
          out.a[idx] = y0 * w(r);
        } else {
          // w(r)/r is finite at the origin for l = 1 radial parts (~ r^l)
          double wr = r > 0 ? w(r) / r : 0.0;
          out.a[idx] = y1 * wr * d[mcomp];
        }
      }
  return out;
}

Field soliton_field(const Grid& g, const RadialProfile& prof, double q4, const vec3& q,
                    const vec3& v) {
  Field base = synthesize_radial(g, [&](double r) { return prof.value(r); }, {0, 0, 0});
  return group_action(q4, q, boost(v, base));
}

Field mode_field(const Grid& g, const SectorGrid& sg, const InternalMode& mode, int mcomp,
                 std::complex<double> xi, const vec3& c) {
  rvec wF = sector_to_radial(sg, mode.ell, mode.F);
  rvec wG = sector_to_radial(sg, mode.ell, mode.G);
  const double h = sg.h();
  auto fF = [&](double r) { return interp_radial(wF, h, r); };
  auto fG = [&](double r) { return interp_radial(wG, h, r); };
  Field F3 = synthesize_harmonic(g, mode.ell, mcomp, fF, c);
  Field G3 = synthesize_harmonic(g, mode.ell, mcomp, fG, c);
  // pair (plus, minus) = (2 Re xi F, -2 Im xi G); field = (minus + i plus)/sqrt2
  Field out(g);
  const double ap = 2.0 * xi.real(), am = -2.0 * xi.imag();
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < out.a.size(); ++i)
    out.a[i] = s * std::complex<double>(am * G3.a[i].real(), ap * F3.a[i].real());
  return out;
}

std::array<Field, 8> kernel_basis(const Grid& g, const RadialProfile& prof,
                                  const Nonlinearity& nl, const vec3& c) {
  rvec dEb = profile_dE(prof, nl);
  const double hb = prof.grid.h();
  std::array<Field, 8> out;
  for (auto& f : out) f = Field(g);
  std::size_t idx = 0;
  double d[3];
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j)
      for (int k = 0; k < g.n[2]; ++k, ++idx) {
        image_delta(g, i, j, k, c, d);
        double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        double b = prof.value(r);
        double bp_over_r = r > 0 ? prof.deriv(r) / r : 0.0;
        for (int t = 0; t < 3; ++t) out[t].a[idx] = -bp_over_r * d[t];  // J A_t eta
        out[3].a[idx] = cplx(0.0, -b);                                  // J A_4 eta
        for (int t = 0; t < 3; ++t)
          out[4 + t].a[idx] = cplx(0.0, 0.5 * d[t] * b);  // d eta / d lambda^t
        out[7].a[idx] = -interp_radial(dEb, hb, r);       // d eta / d lambda^4
      }
  return out;
}

}  // namespace nls
