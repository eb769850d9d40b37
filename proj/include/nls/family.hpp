#pragma once
#include <vector>

#include "nls/profile.hpp"

namespace nls {

struct FamilyPoint {
  double E = 0;
  double p4 = 0;       // mass of the profile
  double center = 0;   // b(0)
  double residual = 0;
  double dp4_dE = 0;   // centered difference across neighboring samples
  bool converged = false;
};

struct FamilyScan {
  std::vector<FamilyPoint> points;
  double slope = 0;          // least-squares d log p4 / d log E
  bool mass_increasing = false;  // p4 monotone increasing in E across the scan
  bool slope_positive = false;   // dp4/dE > 0 at every sample (stability verdict)
  bool all_converged = false;
};

// profiles at geometrically spaced E in [E_lo, E_hi], warm-started along the way.
// node count is fixed; the wall co-scales as 30/sqrt(E) unless r_max > 0 pins it.
FamilyScan scan_family(double E_lo, double E_hi, int count, const Nonlinearity& nl,
                       int dim, int nodes = 2000, double r_max = 0);

// centered difference of the profile in E on the frozen grid of `base`
// (two warm-started solves at E*(1 -+ delta_rel))
rvec profile_dE(const RadialProfile& base, const Nonlinearity& nl,
                double delta_rel = 1e-4);

// d p4 / dE evaluated from the profile and its E-derivative
double mass_slope(const RadialProfile& base, const rvec& db_dE);

}  // namespace nls
