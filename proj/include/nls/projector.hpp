#pragma once
#include <array>

#include "nls/field.hpp"
#include "nls/profile.hpp"
#include "nls/synth.hpp"

namespace nls {

// parameters of a member of the soliton manifold: the moving profile
//   eta(x) = e^{i v.(x-c)/2} b_E(|x-c|)
// carries momenta p_j = (v_j/2) p_4 (j = 1..3) and mass p_4. the p stored
// here are the discrete box momenta of the synthesized field, so that the
// parametrization identity P_j(eta) = p_j holds exactly on the grid.
struct SolitonParams {
  double E = 0;
  vec3 v{0, 0, 0};
  std::array<double, 4> p{0, 0, 0, 0};
};

// frame of the manifold at one parameter point: the tangent fields
//   t_k = d eta / d p_k          (k = 0..3, momentum derivatives)
//   t_{4+j} = J A_j eta          (j = 0..3, symmetry directions)
// and the constraint fields
//   s_l = A_l eta                (l = 0..3)
//   s_{4+l} = E d eta / d p_l    (l = 0..3)
// gram[l][k] = <s_l; t_k> is inverted whenever a projection is taken, so the
// projector below is idempotent on the grid by construction, not only up to
// the truncation error of the continuum identities.
struct TangentFrame {
  const Grid* g = nullptr;
  SolitonParams par;
  vec3 c{0, 0, 0};
  double dp4_dE = 0;  // discrete mass slope along the family
  Field eta;
  std::array<Field, 8> t;
  std::array<Field, 8> s;
  std::array<double, 64> gram{};
  std::array<double, 64> lu{};  // LU factors of gram
  std::array<int, 8> piv{};
};

// db_dE is the E-derivative of the profile on prof's radial grid
TangentFrame make_frame(const Grid& g, const RadialProfile& prof, const rvec& db_dE,
                        const vec3& v, const vec3& c);

// soliton and constraint fields only (enough to evaluate the modulation
// equations); used for finite-difference columns of the Newton Jacobian
struct ConstraintSlice {
  Field eta;
  std::array<Field, 8> s;
};
ConstraintSlice make_constraint_slice(const Grid& g, const RadialProfile& prof,
                                      const rvec& db_dE, const vec3& v, const vec3& c);

// projection onto the symplectic orthogonal of the manifold tangent space:
// removes the t-components so that <s_l; out> = 0 for all l
Field project_out_tangent(const TangentFrame& f, const Field& u);
// adjoint with respect to the real scalar product
Field project_out_tangent_adjoint(const TangentFrame& f, const Field& u);

// full splitting u = sum_j P_j t_j + sum_j Q^j t_{4+j} + phi
struct TangentSplit {
  std::array<double, 4> P{0, 0, 0, 0};
  std::array<double, 4> Q{0, 0, 0, 0};
  Field phi;
};
TangentSplit decompose_tangent(const TangentFrame& f, const Field& u);

// solve  project_out_tangent(f, phi) = psi  for phi in the range of the
// reference projector, by the Neumann iteration phi <- psi - (Pi_f - Pi_ref)
// phi. converges when f is close to ref; `converged` reports the truncation.
struct ProjectorInverse {
  Field phi;
  int iterations = 0;
  bool converged = false;
};
ProjectorInverse invert_projector(const TangentFrame& f, const TangentFrame& ref,
                                  const Field& psi, double tol = 1e-12,
                                  int max_iter = 200);

}  // namespace nls
