#pragma once
#include <array>

#include "nls/field.hpp"
#include "nls/nonlinearity.hpp"

namespace nls {

// real scalar product <u;v> = 2 Re Int u conj(v) dx and the symplectic form
// w(u;v) = <i u; v>. momenta are P_j = <A_j u; u>/2 with A_j = -i d_j for
// j=1..3 and A_4 = identity (so P_4 is the mass).
double inner(const Field& u, const Field& v);
double symplectic(const Field& u, const Field& v);
double norm_l2(const Field& u);     // sqrt(Int |u|^2)
double norm_l6(const Field& u);
double norm_h1(const Field& u);
double mass(const Field& u);        // P_4

Field apply_A(int j, const Field& u);  // j in 1..4
Field apply_E(const Field& u);         // multiplication by i
Field apply_J(const Field& u);         // multiplication by -i

double momentum(int j, const Field& u);
std::array<double, 4> momentum_all(const Field& u);

double hamiltonian(const Field& u, const Nonlinearity& nl);
double kinetic_energy(const Field& u);

// e^{q^j J A_j}: gauge rotation by exp(-i q4) together with translation by q
Field group_action(double q4, const std::array<double, 3>& q, const Field& u);
// galilean boost: multiplication by exp(+i v.x/2); the sign is fixed by the
// requirement that a boosted profile carry momentum P_j = (v_j/2) P_4
Field boost(const std::array<double, 3>& v, const Field& u);

// sqrt(Int |u|^2 / <x-a>^(2*nu)) with minimal-image displacement
double weighted_norm(const Field& u, const std::array<double, 3>& a, double nu);

// free flow e^{i t Laplacian} (spectral); t < 0 undoes it
Field free_flow(const Field& u, double t);

}  // namespace nls
