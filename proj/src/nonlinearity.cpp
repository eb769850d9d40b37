#include "nls/nonlinearity.hpp"

#include <cmath>

namespace nls {

namespace {
// avoid 0^negative in derivative chains of the pure power
constexpr double floor_s = 1e-300;
}

Nonlinearity Nonlinearity::cubic() { return {Kind::cubic, 1.0, 1.0}; }

Nonlinearity Nonlinearity::pure_power(double p) {
  if (!(p > 0)) throw std::invalid_argument("pure_power exponent must be positive");
  return {Kind::pure_power, p, 1.0};
}

Nonlinearity Nonlinearity::saturated(double s_sat) {
  if (!(s_sat > 0)) throw std::invalid_argument("saturation scale must be positive");
  return {Kind::saturated, 1.0, s_sat};
}

double Nonlinearity::beta(double s) const {
  switch (kind) {
    case Kind::cubic:
      return 0.5 * s * s;
    case Kind::pure_power:
      return std::pow(std::max(s, floor_s), p + 1) / (p + 1);
    case Kind::saturated:
      return s_sat * ((s + s_sat) * std::log1p(s / s_sat) - s);
  }
  return 0;
}

double Nonlinearity::beta1(double s) const {
  switch (kind) {
    case Kind::cubic:
      return s;
    case Kind::pure_power:
      return std::pow(std::max(s, floor_s), p);
    case Kind::saturated:
      return s_sat * std::log1p(s / s_sat);
  }
  return 0;
}

double Nonlinearity::beta2(double s) const {
  switch (kind) {
    case Kind::cubic:
      return 1.0;
    case Kind::pure_power:
      return p * std::pow(std::max(s, floor_s), p - 1);
    case Kind::saturated:
      return s_sat / (s + s_sat);
  }
  return 0;
}

double Nonlinearity::beta_k(int k, double s) const {
  if (k < 1) throw std::invalid_argument("beta_k needs k >= 1");
  if (k == 1) return beta1(s);
  if (k == 2) return beta2(s);
  switch (kind) {
    case Kind::cubic:
      return 0.0;
    case Kind::pure_power: {
      // d^k/ds^k s^p for the (k-1)-fold derivative of beta1
      double c = 1.0;
      for (int j = 0; j < k - 1; ++j) c *= (p - j);
      return c * std::pow(std::max(s, floor_s), p - (k - 1));
    }
    case Kind::saturated: {
      // beta2 = s_sat/(s+s_sat), so beta_k = (-1)^k (k-2)! s_sat (s+s_sat)^(1-k)
      double fact = 1.0;
      for (int j = 2; j <= k - 2; ++j) fact *= j;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      return sign * fact * s_sat * std::pow(s + s_sat, 1.0 - k);
    }
  }
  return 0;
}

double Nonlinearity::growth_exponent() const {
  switch (kind) {
    case Kind::cubic:
      return 1.0;
    case Kind::pure_power:
      return p;
    case Kind::saturated:
      return 0.0;
  }
  return 0;
}

std::string Nonlinearity::name() const {
  switch (kind) {
    case Kind::cubic:
      return "cubic";
    case Kind::pure_power:
      return "pure_power";
    case Kind::saturated:
      return "saturated";
  }
  return "?";
}

}  // namespace nls
