#include "nls/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nls {

namespace {

// cubic Lagrange on four consecutive uniform samples starting at index i0
double lagrange4(const rvec& f, int i0, double h, double r0, double r) {
  double t = (r - (r0 + i0 * h)) / h;  // in node units relative to i0
  double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
  double l1 = t * (t - 2) * (t - 3) / 2.0;
  double l2 = -t * (t - 1) * (t - 3) / 2.0;
  double l3 = t * (t - 1) * (t - 2) / 6.0;
  return l0 * f[i0] + l1 * f[i0 + 1] + l2 * f[i0 + 2] + l3 * f[i0 + 3];
}

double interp_uniform(const rvec& f, double h, double r) {
  const int n = int(f.size());
  int i0 = int(std::floor(r / h)) - 1;
  i0 = std::clamp(i0, 0, n - 4);
  return lagrange4(f, i0, h, 0.0, r);
}

rvec fd4_defect(const RadialGrid& g, int dim, double E, const Nonlinearity& nl,
                const rvec& b) {
  rvec out;
  apply_radial_laplacian4(g, dim, b, out);
  for (int i = 0; i < g.m; ++i) out[i] += (E - nl.beta1(b[i] * b[i])) * b[i];
  return out;
}

double l2(const rvec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double rel_defect(const RadialGrid& g, int dim, double E, const Nonlinearity& nl,
                  const rvec& b) {
  rvec d = fd4_defect(g, dim, E, nl, b);
  double nb = l2(b);
  return nb > 0 ? l2(d) / (E * nb) : 1.0;
}

rvec fd4_derivative(const RadialGrid& g, const rvec& b) {
  const int m = g.m;
  const double s1 = 1.0 / (12 * g.h());
  rvec db(m, 0.0);
  db[0] = 0.0;  // even symmetry
  db[1] = s1 * (b[1] - 8 * b[0] + 8 * b[2] - b[3]);
  for (int i = 2; i < m - 2; ++i)
    db[i] = s1 * (b[i - 2] - 8 * b[i - 1] + 8 * b[i + 1] - b[i + 2]);
  db[m - 2] = s1 * (b[m - 4] - 8 * b[m - 3] + 8 * b[m - 1]);
  db[m - 1] = s1 * (b[m - 3] - 8 * b[m - 2]);
  return db;
}

}  // namespace

double RadialProfile::value(double r) const {
  r = std::abs(r);
  const int m = grid.m;
  const double h = grid.h();
  const double kappa = std::sqrt(E);
  const int i_fit = m - 3;
  if (r >= grid.r(i_fit)) {
    double bf = b[i_fit];
    if (bf <= 0) return 0.0;
    double rf = grid.r(i_fit);
    double C = bf * std::exp(kappa * rf) * std::pow(rf, 0.5 * (dim - 1));
    return C * std::exp(-kappa * r) * std::pow(r, -0.5 * (dim - 1));
  }
  return interp_uniform(b, h, r);
}

double RadialProfile::deriv(double r) const {
  r = std::abs(r);
  const int m = grid.m;
  const double h = grid.h();
  const double kappa = std::sqrt(E);
  const int i_fit = m - 3;
  if (r >= grid.r(i_fit)) {
    double bf = b[i_fit];
    if (bf <= 0) return 0.0;
    double rf = grid.r(i_fit);
    double C = bf * std::exp(kappa * rf) * std::pow(rf, 0.5 * (dim - 1));
    double v = C * std::exp(-kappa * r) * std::pow(r, -0.5 * (dim - 1));
    return v * (-kappa - 0.5 * (dim - 1) / r);
  }
  return interp_uniform(db, h, r);
}

double RadialProfile::mass() const {
  rvec b2(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) b2[i] = b[i] * b[i];
  return sphere_area(dim) * radial_integral(grid, dim, b2);
}

namespace {

struct March {
  int outcome = 0;  // +1: crossed zero (start too large), -1: turned up (too small), 0: ran out
  double r_end = 0, b_end = 0;
  rvec samples;  // only filled when requested
};

March march_ode(double E, const Nonlinearity& nl, int dim, double s, double h,
                double r_stop, bool record) {
  March out;
  // series start at r = h: b = s + c r^2, b' = 2 c r
  double c = (E * s - nl.beta1(s * s) * s) / (2.0 * dim);
  double b = s + c * h * h, p = 2.0 * c * h;
  double r = h;
  if (record) {
    out.samples.push_back(s);
    out.samples.push_back(b);
  }
  auto f = [&](double rr, double bb, double pp, double& db, double& dp) {
    db = pp;
    dp = E * bb - nl.beta1(bb * bb) * bb - (dim - 1) / rr * pp;
  };
  const long nmax = long(r_stop / h) + 2;
  for (long step = 0; step < nmax; ++step) {
    double k1b, k1p, k2b, k2p, k3b, k3p, k4b, k4p;
    f(r, b, p, k1b, k1p);
    f(r + 0.5 * h, b + 0.5 * h * k1b, p + 0.5 * h * k1p, k2b, k2p);
    f(r + 0.5 * h, b + 0.5 * h * k2b, p + 0.5 * h * k2p, k3b, k3p);
    f(r + h, b + h * k3b, p + h * k3p, k4b, k4p);
    b += h / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b);
    p += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    r += h;
    if (record) out.samples.push_back(b);
    if (b < 0) {
      out.outcome = +1;
      break;
    }
    if (p > 0) {
      out.outcome = -1;
      break;
    }
    if (record && b < 1e-11 * s) break;  // deep in the tail; stop before noise
    if (r >= r_stop) break;
  }
  out.r_end = r;
  out.b_end = b;
  return out;
}

}  // namespace

ShootingProfile shoot_profile(double E, const Nonlinearity& nl, int dim, double h_ode,
                              double r_stop) {
  if (E <= 0) throw std::invalid_argument("shoot_profile: E must be positive");
  const double kappa = std::sqrt(E);
  r_stop = std::max(r_stop, 42.0 / kappa);

  // bracket the center value
  double s = kappa;
  double lo = 0, hi = 0;
  for (int k = 0; k < 90; ++k) {
    March m = march_ode(E, nl, dim, s, h_ode, r_stop, false);
    if (m.outcome == +1) {
      hi = s;
      break;
    }
    lo = s;
    s *= 1.7;
  }
  if (hi == 0) throw std::runtime_error("shoot_profile: no sign change found");
  if (lo == 0) {  // first guess already crossed; shrink downward
    s = hi;
    for (int k = 0; k < 90 && lo == 0; ++k) {
      s *= 0.5;
      March m = march_ode(E, nl, dim, s, h_ode, r_stop, false);
      if (m.outcome != +1) lo = s;
    }
    if (lo == 0) throw std::runtime_error("shoot_profile: bracket collapse");
  }
  for (int k = 0; k < 80; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    March m = march_ode(E, nl, dim, mid, h_ode, r_stop, false);
    if (m.outcome == +1)
      hi = mid;
    else
      lo = mid;
  }

  ShootingProfile out;
  out.E = E;
  out.dim = dim;
  out.h = h_ode;
  out.b0 = 0.5 * (lo + hi);
  March fin = march_ode(E, nl, dim, out.b0, h_ode, r_stop, true);
  // drop the last few samples if an event fired (they are past the good region)
  int n = int(fin.samples.size());
  if (fin.outcome != 0) n = std::max(8, n - 4);
  fin.samples.resize(n);
  out.b = std::move(fin.samples);
  out.r_tail = (n - 1) * h_ode;
  double bt = out.b.back();
  out.tail_C = bt > 0 ? bt * std::exp(kappa * out.r_tail) * std::pow(out.r_tail, 0.5 * (dim - 1))
                      : 0.0;
  return out;
}

double ShootingProfile::value(double r) const {
  r = std::abs(r);
  if (r >= r_tail) {
    if (tail_C <= 0) return 0.0;
    return tail_C * std::exp(-std::sqrt(E) * r) * std::pow(r, -0.5 * (dim - 1));
  }
  return interp_uniform(b, h, r);
}

double ShootingProfile::mass() const {
  const int n = int(b.size());
  double s = 0;
  for (int i = 1; i < n - 1; ++i) s += b[i] * b[i] * std::pow(i * h, dim - 1);
  s += 0.5 * b[0] * b[0] * ((dim == 1) ? 1.0 : 0.0);
  s += 0.5 * b[n - 1] * b[n - 1] * std::pow(r_tail, dim - 1);
  s *= h;
  double kappa = std::sqrt(E);
  s += tail_C * tail_C * std::exp(-2 * kappa * r_tail) / (2 * kappa);
  return sphere_area(dim) * s;
}

RadialProfile solve_profile(double E, const Nonlinearity& nl, int dim,
                            const ProfileOptions& opt) {
  if (E <= 0) throw std::invalid_argument("solve_profile: E must be positive");
  RadialProfile out;
  out.E = E;
  out.dim = dim;
  out.grid.m = opt.nodes;
  out.grid.r_max = opt.r_max > 0 ? opt.r_max : 30.0 / std::sqrt(E);
  const RadialGrid& g = out.grid;
  const int m = g.m;

  rvec b(m);
  if (opt.seed) {
    if (int(opt.seed->size()) != m) throw std::invalid_argument("solve_profile: seed size");
    b = *opt.seed;
  } else {
    double p_eff = nl.growth_exponent() > 0 ? nl.growth_exponent() : 1.0;
    double amp = 2.5 * std::pow(E, 1.0 / (2.0 * p_eff));
    for (int i = 0; i < m; ++i) {
      double r = g.r(i);
      b[i] = amp * std::exp(-0.25 * E * r * r);
    }
  }

  int iters = 0;
  bool fixed_point_ok = false;
  if (!opt.seed) {  // warm starts go straight to Newton
    RadialOperator M = RadialOperator::shifted_laplacian(g, dim, E);
    rvec N(m), Mb(m);
    for (int it = 0; it < opt.max_fixed_point; ++it, ++iters) {
      for (int i = 0; i < m; ++i) N[i] = nl.beta1(b[i] * b[i]) * b[i];
      M.apply(b, Mb);
      double num = radial_dot(g, dim, Mb, b);
      double den = radial_dot(g, dim, N, b);
      if (!(den > 0) || !(num > 0)) break;
      double S = num / den;
      // effective homogeneity degree of the nonlinear term sets the exponent
      rvec dN(m);
      for (int i = 0; i < m; ++i) {
        double s2 = b[i] * b[i];
        dN[i] = (nl.beta1(s2) + 2.0 * nl.beta2(s2) * s2) * b[i];
      }
      // the stabilizing exponent q/(q-1) must not exceed the value set by the
      // effective homogeneity degree q, or the iteration turns unstable; only
      // the nearly-linear (saturated) end needs a floor to keep it finite
      double q = radial_dot(g, dim, dN, b) / den;
      q = std::clamp(q, 1.2, 50.0);
      double gamma = q / (q - 1.0);
      rvec w = M.solve(N);
      double Sg = std::pow(S, gamma);
      for (int i = 0; i < m; ++i) b[i] = Sg * w[i];
      if (!std::isfinite(l2(b))) {
        b.assign(m, 0.0);  // lost it; the shooting fallback below takes over
        break;
      }
      if (std::abs(S - 1.0) < 1e-8) {
        fixed_point_ok = true;
        break;
      }
    }
    if (!fixed_point_ok && !(l2(b) > 0)) b.assign(m, 0.0);
  }

  auto newton = [&](rvec& x) -> bool {
    double fn_prev = -1;
    int stall = 0;
    for (int it = 0; it < opt.max_newton; ++it, ++iters) {
      rvec F = fd4_defect(g, dim, E, nl, x);
      double fn = l2(F);
      double nx = l2(x);
      if (!std::isfinite(fn) || !std::isfinite(nx)) return false;
      if (nx > 0 && fn / (E * nx) <= opt.tol) return true;
      if (fn_prev > 0 && fn > 0.9 * fn_prev && ++stall >= 5) return false;
      fn_prev = fn;
      rvec shift(m);
      for (int i = 0; i < m; ++i) {
        double s2 = x[i] * x[i];
        shift[i] = E - nl.beta1(s2) - 2.0 * nl.beta2(s2) * s2;
      }
      BandMatrix J = radial_laplacian4_band(g, dim, shift);
      rvec delta = J.solve(F);
      double alpha = 1.0;
      for (int ls = 0; ls < 6; ++ls) {
        rvec trial(m);
        for (int i = 0; i < m; ++i) trial[i] = x[i] - alpha * delta[i];
        if (l2(fd4_defect(g, dim, E, nl, trial)) < fn || ls == 5) {
          x = trial;
          break;
        }
        alpha *= 0.5;
      }
    }
    rvec F = fd4_defect(g, dim, E, nl, x);
    double nx = l2(x);
    return nx > 0 && l2(F) / (E * nx) <= opt.tol;
  };

  bool ok = l2(b) > 0 && newton(b);
  if (!ok) {
    ShootingProfile sp = shoot_profile(E, nl, dim);
    for (int i = 0; i < m; ++i) b[i] = sp.value(g.r(i));
    ok = newton(b);
  }

  out.b = std::move(b);
  out.db = fd4_derivative(g, out.b);
  out.residual = rel_defect(g, dim, E, nl, out.b);
  out.iterations = iters;
  out.converged = ok;
  return out;
}

}  // namespace nls
