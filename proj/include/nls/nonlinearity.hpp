#pragma once
#include <stdexcept>
#include <string>

namespace nls {

// local nonlinearity beta(|psi|^2) with beta'(0) = 0. the mass-vs-frequency
// slope of the 3D soliton family is positive for pure powers only when
// p < 2/3, which config validation enforces for runs that rely on it.
struct Nonlinearity {
  enum class Kind { cubic, pure_power, saturated };
  Kind kind = Kind::cubic;
  double p = 1.0;      // pure_power exponent
  double s_sat = 1.0;  // saturation scale

  static Nonlinearity cubic();
  static Nonlinearity pure_power(double p);
  static Nonlinearity saturated(double s_sat);

  double beta(double s) const;
  double beta1(double s) const;           // d beta / ds
  double beta2(double s) const;           // second derivative
  double beta_k(int k, double s) const;   // k-th derivative, k >= 1
  // exponent in the growth bound |beta^(k)(s)| <= C_k <s>^(1+p-k)
  double growth_exponent() const;
  std::string name() const;
};

}  // namespace nls
