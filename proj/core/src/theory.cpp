// SPDX-License-Identifier: Apache-2.0
#include "destwalk/theory.hpp"

#include <cmath>

namespace destwalk {

ConditionalStepLaw::ConditionalStepLaw(double a_in, double l_cap_in)
    : a(a_in), l_cap(l_cap_in) {
  if (!(a > 0.0)) throw ConfigError("a must be > 0");
  if (!(l_cap > a)) throw ConfigError("l_cap must be > a");
}

double conditional_density(double l, const ConditionalStepLaw& law) {
  if (!(l > law.a) || l > law.l_cap) {
    throw OutOfSupportError("conditional_density: l outside (a, l_cap]");
  }
  const double normalization = std::acos(law.a / law.l_cap);
  return law.a / (normalization * l * std::sqrt(l * l - law.a * law.a));
}

double conditional_cdf(double l, const ConditionalStepLaw& law) {
  if (l < law.a || l > law.l_cap) {
    throw OutOfSupportError("conditional_cdf: l outside [a, l_cap]");
  }
  return std::acos(law.a / l) / std::acos(law.a / law.l_cap);
}

double marginal_tail_density(double l, double a) {
  if (!(a > 0.0)) throw ConfigError("a must be > 0");
  if (!(l >= 10.0 * a)) {
    throw OutOfSupportError(
        "marginal_tail_density: outside the asymptotic regime (l < 10 a)");
  }
  return 1.0 / (l * l);
}

}  // namespace destwalk
