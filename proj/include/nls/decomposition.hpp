#pragma once
#include <vector>

#include "nls/family.hpp"
#include "nls/sector.hpp"

namespace nls {

// one internal oscillation of the linearized flow: frequency omega in (0, E),
// radial pair stored in u-space with the coupled first-order identities
// plus F = omega G, minus G = omega F and the pairing Int F G dr = 1/2.
struct InternalMode {
  int ell = 0;
  double omega = 0;
  double bquad = 0;  // pre-normalization quadratic form; > 0 under (L2)
  rvec F, G;
};

// residuals of the generalized-kernel identities, evaluated radially
struct KernelReport {
  double gauge = 0;        // ||A+ (r b)||/||r b||                 ell = 0
  double translation = 0;  // ||A- (r b')||/||r b'||               ell = 1
  double scaling = 0;      // ||A- (r dEb) + r b||/||r b||         ell = 0
  double boost = 0;        // ||A+ (r^2 b/2) + r b'||/||r b'||     ell = 1
};

struct SpectralDecomposition {
  double E = 0, Omega = 0;  // continuum edge Omega = E
  int rt = 0;               // smallest integer with rt*omega_1 > Omega
  SectorGrid grid;
  std::vector<InternalMode> modes;  // sorted by omega; only 0 < omega < Omega
  std::vector<double> negative_mu;  // negative pencil eigenvalues: positivity failures
  KernelReport kernel;
  double min_eig_perp_gauge = 0;        // A- on the complement of b (ell = 0)
  double min_eig_perp_translation = 0;  // A- on the complement of b' (ell = 1)
};

SpectralDecomposition discrete_spectrum(const RadialProfile& profile, const Nonlinearity& nl,
                                        int ell_max, int m_nodes, double r_max);

// all eigenvalues mu = omega^2 of the quadratic pencil in one sector, solved
// through the symmetric product R minus R with R = plus^(1/2); modes are
// reconstructed and normalized for mu inside (mu_cut, mu_edge)
struct SectorPencil {
  rvec mu;  // ascending, the full discrete list
  std::vector<InternalMode> modes;
};
// deflate (optional) is a known kernel vector of the minus operator whose
// pencil zero is shifted far above the edge before the solve
SectorPencil sector_pencil(const SectorOperator& op, double mu_cut, double mu_edge,
                           const rvec* deflate = nullptr);

struct HypothesesReport {
  int rt = 0;
  bool edge_ok = false;      // largest omega strictly below the edge
  double min_margin = 0;     // min over 0 < |k|_1 <= 2 rt of |omega . k - Omega|
  std::vector<int> argmin;   // the k achieving it
  bool nonresonant = false;  // min_margin > 0 (within 1e-9 Omega)
  bool positivity_ok = false;  // no negative pencil eigenvalues
};
HypothesesReport check_spectral_hypotheses(const SpectralDecomposition& d);

int compute_rt(double omega1, double Omega);

// --- dense linear-algebra helpers (shared with the resolvent module) ---

// symmetric eigensolve, row-major; on return A holds eigenvectors
// (A[i*m+j] = component i of eigenvector j), evals ascending
void symmetric_eig(rvec& A, int m, rvec& evals);

// eigenvalues of the nonsymmetric product minus*plus (cross-check route);
// returns real parts sorted, and the largest |imag| seen
std::vector<double> pencil_eigs_nonsymmetric(const SectorOperator& op, double* max_imag = nullptr);

// smallest eigenvalue of the dense symmetric A restricted to the orthogonal
// complement of dir
double restricted_min_eig(const rvec& A, int m, const rvec& dir);

}  // namespace nls
