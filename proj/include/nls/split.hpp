#pragma once
#include <complex>
#include <utility>
#include <vector>

#include "nls/decomposition.hpp"
#include "nls/field.hpp"
#include "nls/projector.hpp"
#include "nls/sector.hpp"

namespace nls {

// internal-mode frame synthesized on the box. each entry is one harmonic
// component of one mode, with the pair (F, G) jointly rescaled so that the
// box pairing 2 Int F G d^3x equals one exactly (the radial normalization
// only reaches that up to the truncated tail). s_box records the rescale.
struct ModeEntry {
  int ell = 0;
  int mcomp = 0;
  double omega = 0;
  double s_box = 0;
  rvec F, G;
};

struct ModeFrame {
  const Grid* g = nullptr;
  vec3 c{0, 0, 0};
  std::vector<ModeEntry> entries;
  // LU of the pairing matrix 2 C, C_ab = Int G_a F_b; inverted during
  // extraction so that amplitudes of a mode superposition are recovered
  // exactly on the grid even when cross-mode pairings do not vanish
  std::vector<double> lu;
  std::vector<int> piv;
};

ModeFrame make_mode_frame(const Grid& g, const SectorGrid& sg,
                          const std::vector<InternalMode>& modes, const vec3& c);

// amplitudes xi_a of the discrete components of phi: the raw pairings
// Int G_a phi_+ - i Int F_a phi_- corrected by the pairing matrix
std::vector<cplx> mode_amplitudes(const ModeFrame& mf, const Field& phi);

// complexified version acting on independent pair components; returns the
// amplitude pairs (xi_a, zeta_a) (zeta = conj(xi) on real pair data)
std::vector<std::pair<cplx, cplx>> mode_pair_amplitudes(const ModeFrame& mf,
                                                        const cvec& plus,
                                                        const cvec& minus);

// sum of mode fields: pair parts plus = 2 Re xi_a F_a, minus = -2 Im xi_a G_a
Field mode_superposition(const ModeFrame& mf, const std::vector<cplx>& xi);

struct DiscreteContinuousSplit {
  std::vector<cplx> xi;
  Field phi_c;
};
// phi = sum of mode components + phi_c, with all mode pairings of phi_c zero
DiscreteContinuousSplit split_field(const ModeFrame& mf, const Field& phi);

// continuous-spectrum part of an ambient field: remove the manifold tangent
// components, then the internal-mode components
Field project_continuous(const TangentFrame& ref, const ModeFrame& mf, const Field& u);

}  // namespace nls
