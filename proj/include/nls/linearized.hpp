#pragma once
#include "nls/field.hpp"
#include "nls/nonlinearity.hpp"
#include "nls/profile.hpp"
#include "nls/synth.hpp"

namespace nls {

// frozen-coefficient linearization about the rest soliton e^{iEt} b(x).
// the hessian acts real-linearly:
//   B u = -Lap u + (E - beta'(b^2)) u - 2 beta''(b^2) b^2 Re u
// and the flow generator is J B (J = -i). the coefficient fields are
// sampled once; applications cost one fft round trip each.
struct RestLinearization {
  const Grid* g = nullptr;
  double E = 0;
  rvec c1;  // E - beta'(b^2)
  rvec c2;  // -2 beta''(b^2) b^2
};

RestLinearization make_rest_linearization(const Grid& g, const RadialProfile& prof,
                                          const Nonlinearity& nl, const vec3& c);

Field apply_hessian(const RestLinearization& lin, const Field& u);
Field apply_generator(const RestLinearization& lin, const Field& u);

}  // namespace nls
