#pragma once
#include <array>
#include <map>

#include "nls/projector.hpp"

namespace nls {

// the soliton family E -> profile over a fixed window, represented as a
// Chebyshev interpolant: profiles are solved once at the Lobatto nodes on a
// common radial grid, and any E in the window is a barycentric combination.
// the family is therefore a single smooth function of E (machine-reproducible
// evaluation), so Newton solves running against it are not floored by the
// per-solve defect tolerance of the radial solver. the E-derivative comes from
// spectral differentiation at the nodes, interpolated the same way.
class SolitonFamily {
 public:
  struct Entry {
    RadialProfile prof;
    rvec db_dE;
    double dp4_dE = 0;
  };

  SolitonFamily(const Nonlinearity& nl, double E_lo, double E_hi, int nodes = 2000,
                int cheb = 41, double r_max = 0)
      : nl_(nl), lo_(E_lo), hi_(E_hi), nodes_(nodes), cheb_(cheb), r_max_(r_max) {}

  // throws std::out_of_range outside [E_lo, E_hi]
  const Entry& at(double E) const;
  const Nonlinearity& nonlinearity() const { return nl_; }
  double e_lo() const { return lo_; }
  double e_hi() const { return hi_; }

 private:
  void build() const;
  Nonlinearity nl_;
  double lo_, hi_;
  int nodes_, cheb_;
  double r_max_;
  mutable bool built_ = false;
  mutable RadialGrid rg_;
  mutable std::vector<rvec> nb_, ndbr_, ndE_;  // per node: b, radial deriv, E deriv
  mutable std::map<double, Entry> cache_;
};

// result of the nonlinear coordinate change u = e^{q^j J A_j}(eta_p + Pi_p phi):
// group coordinates q, soliton parameters, and the remainder phi carried in
// the reference space (range of the projector at the reference frame)
struct ModulationCoordinates {
  double q4 = 0;
  vec3 q{0, 0, 0};
  SolitonParams par;
  Field phi;
  std::array<double, 8> residuals{};  // constraint values at the solution
  int iterations = 0;
  bool converged = false;
  bool phi_converged = false;  // Neumann inversion reached its tolerance
};

struct ExtractGuess {
  double q4 = 0;
  vec3 q{0, 0, 0};
  double E = 0;
  vec3 v{0, 0, 0};
};

struct ExtractOptions {
  double tol = 1e-10;  // constraint values at the accepted root
  int max_iter = 40;
  double fd_dE_rel = 1e-6;  // forward-difference steps, parameter block
  double fd_dv = 1e-6;
  double neumann_tol = 1e-12;
};

// Newton solve of the eight constraint equations
//   <e^{-q.JA}u - eta_p; A_l eta_p> = 0,  <e^{-q.JA}u - eta_p; E d eta/dp_l> = 0
// with analytic q-derivatives and finite-difference parameter derivatives.
// phi is recovered from the constrained difference by the Neumann inversion
// against the reference frame.
ModulationCoordinates extract_coordinates(const Field& u, const SolitonFamily& fam,
                                          const TangentFrame& ref,
                                          const ExtractGuess& guess,
                                          const ExtractOptions& opt = {});

// u = e^{q^j J A_j}(eta_p + Pi_p phi)
Field reconstruct(const ModulationCoordinates& coords, const SolitonFamily& fam,
                  const TangentFrame& ref);

// solve P_j(eta_p + Pi_p phi) = p0_j - N_j + P_j(phi) for the parameters;
// with N_j = P_j(phi) this pins the total momenta of the dressed soliton at
// p0. the leading-order answer is p = p0 - N.
struct ImplicitParams {
  SolitonParams par;
  std::array<double, 4> residuals{};
  int iterations = 0;
  bool converged = false;
};
ImplicitParams implicit_params(const std::array<double, 4>& N, const Field& phi,
                               const std::array<double, 4>& p0,
                               const SolitonFamily& fam, const TangentFrame& ref,
                               double tol = 1e-10, int max_iter = 50);

}  // namespace nls
