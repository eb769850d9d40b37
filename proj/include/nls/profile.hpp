#pragma once
#include "nls/nonlinearity.hpp"
#include "nls/radial.hpp"

namespace nls {

// radial bound-state profile: -Laplacian b + E b = beta'(b^2) b, b > 0, b' (0) = 0
struct RadialProfile {
  double E = 0;
  int dim = 3;
  RadialGrid grid;
  rvec b;
  rvec db;           // radial derivative (fourth-order differences)
  double residual = 0;  // relative L2 defect against the fourth-order operator
  int iterations = 0;
  bool converged = false;

  double value(double r) const;       // cubic Lagrange interpolation + decay tail
  double deriv(double r) const;
  double mass() const;                // Int b^2 over R^dim
  double center_value() const { return b.empty() ? 0.0 : b[0]; }
};

struct ProfileOptions {
  int nodes = 2000;
  double r_max = 0;        // <= 0: use 30/sqrt(E)
  double tol = 1e-10;      // convergence target for the relative defect
  int max_fixed_point = 400;
  int max_newton = 30;
  const rvec* seed = nullptr;  // warm start (must match node count)
};

RadialProfile solve_profile(double E, const Nonlinearity& nl, int dim,
                            const ProfileOptions& opt = {});

// independent construction by ODE shooting: RK4 marching of
// b'' + (dim-1)/r b' = E b - beta'(b^2) b with bisection on b(0)
struct ShootingProfile {
  double E = 0, b0 = 0;
  int dim = 3;
  double h = 0;
  rvec b;            // samples at r = i*h, i = 0..n-1
  double tail_C = 0;  // b ~ C exp(-sqrt(E) r) / r^((dim-1)/2) past the samples
  double r_tail = 0;
  double value(double r) const;
  double mass() const;
};
ShootingProfile shoot_profile(double E, const Nonlinearity& nl, int dim,
                              double h_ode = 1e-3, double r_stop = 40.0);

}  // namespace nls
