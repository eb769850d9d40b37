#pragma once
#include <array>
#include <functional>

#include "nls/decomposition.hpp"
#include "nls/field.hpp"
#include "nls/profile.hpp"

namespace nls {

using vec3 = std::array<double, 3>;

// f(|x - c|) sampled with the periodic minimal image on each axis
Field synthesize_radial(const Grid& g, const std::function<double(double)>& f, const vec3& c);

// u/r resampled onto [0, r_max] as a uniform table including r = 0 (even
// extrapolation for l = 0, zero for l >= 1), ready for interp_radial
rvec sector_to_radial(const SectorGrid& sg, int ell, const rvec& u);

// w(|x-c|) Y_{l,m}(x-c), real solid harmonics, Y normalized on the sphere;
// l = 0 takes m = 0, l = 1 takes m in {0,1,2} for the x_m axis
Field synthesize_harmonic(const Grid& g, int ell, int mcomp,
                          const std::function<double(double)>& w, const vec3& c);

// moving soliton: gauge/translate/boost of the radial profile
Field soliton_field(const Grid& g, const RadialProfile& prof, double q4, const vec3& q,
                    const vec3& v);

// internal-mode field with complex amplitude xi at center c:
// pair parts plus = 2 Re(xi) F(x), minus = -2 Im(xi) G(x)
Field mode_field(const Grid& g, const SectorGrid& sg, const InternalMode& mode, int mcomp,
                 std::complex<double> xi, const vec3& c);

// the eight generalized-kernel fields of the rest soliton: first the kernel
// directions J A_j eta (j = 1..3 translations, then gauge), then the
// parameter derivatives d eta / d lambda^j (boosts, then the E direction)
std::array<Field, 8> kernel_basis(const Grid& g, const RadialProfile& prof,
                                  const Nonlinearity& nl, const vec3& c);

}  // namespace nls
