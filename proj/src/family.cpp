#include "nls/family.hpp"

#include <cmath>

namespace nls {

FamilyScan scan_family(double E_lo, double E_hi, int count, const Nonlinearity& nl,
                       int dim, int nodes, double r_max) {
  FamilyScan out;
  out.all_converged = true;
  rvec seed;
  for (int k = 0; k < count; ++k) {
    double t = count > 1 ? double(k) / (count - 1) : 0.0;
    double E = E_lo * std::pow(E_hi / E_lo, t);
    ProfileOptions opt;
    opt.nodes = nodes;
    opt.r_max = r_max;
    if (!seed.empty()) opt.seed = &seed;
    RadialProfile p = solve_profile(E, nl, dim, opt);
    FamilyPoint fp;
    fp.E = E;
    fp.p4 = p.mass();
    fp.center = p.center_value();
    fp.residual = p.residual;
    fp.converged = p.converged;
    out.all_converged = out.all_converged && p.converged;
    out.points.push_back(fp);
    seed = p.b;
  }
  // least-squares slope in log-log
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const FamilyPoint& fp : out.points) {
    if (!(fp.p4 > 0)) continue;
    double x = std::log(fp.E), y = std::log(fp.p4);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2) out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.mass_increasing = out.points.size() >= 2;
  for (std::size_t i = 1; i < out.points.size(); ++i)
    if (!(out.points[i].p4 > out.points[i - 1].p4)) out.mass_increasing = false;
  // per-sample slope (centered in the interior, one-sided at the ends)
  const std::size_t np = out.points.size();
  if (np >= 2) {
    auto& pt = out.points;
    for (std::size_t i = 0; i < np; ++i) {
      std::size_t a = i > 0 ? i - 1 : 0;
      std::size_t b = i + 1 < np ? i + 1 : np - 1;
      pt[i].dp4_dE = (pt[b].p4 - pt[a].p4) / (pt[b].E - pt[a].E);
    }
    out.slope_positive = true;
    for (const FamilyPoint& fp : pt) out.slope_positive = out.slope_positive && fp.dp4_dE > 0;
  }
  return out;
}

rvec profile_dE(const RadialProfile& base, const Nonlinearity& nl, double delta_rel) {
  const double dE = delta_rel * base.E;
  ProfileOptions opt;
  opt.nodes = base.grid.m;
  opt.r_max = base.grid.r_max;  // frozen grid so the difference is well defined
  opt.seed = &base.b;
  RadialProfile plus = solve_profile(base.E + dE, nl, base.dim, opt);
  RadialProfile minus = solve_profile(base.E - dE, nl, base.dim, opt);
  rvec d(base.grid.m);
  for (int i = 0; i < base.grid.m; ++i) d[i] = (plus.b[i] - minus.b[i]) / (2.0 * dE);
  return d;
}

double mass_slope(const RadialProfile& base, const rvec& db_dE) {
  rvec f(base.grid.m);
  for (int i = 0; i < base.grid.m; ++i) f[i] = 2.0 * base.b[i] * db_dE[i];
  return sphere_area(base.dim) * radial_integral(base.grid, base.dim, f);
}

}  // namespace nls
