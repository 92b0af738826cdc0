// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "destwalk/errors.hpp"

namespace destwalk {

// Closed-form step-length law for the single-axis (one-hot) allocation at a
// fixed difference norm, used as an independent check against simulation.
//
// With the movement axis drawn uniformly, the step before capping is
// l = a / |cos theta| with a = alpha * r, so l has density proportional to
// a / (l sqrt(l^2 - a^2)) on l > a. The law here is truncated at l_cap,
// mirroring the simulator's step cap; the probability mass the cap piles up
// at exactly l_cap is compared through the CDF jump, not the density.
//
// The uniform-angle assumption is exact in two dimensions. For N > 2 the
// frame angle is not uniform and this law is only indicative.
struct ConditionalStepLaw {
  double a;      // minimum step, alpha * r
  double l_cap;  // truncation point

  ConditionalStepLaw(double a_in, double l_cap_in);
};

// Density a / (acos(a/l_cap) * l * sqrt(l^2 - a^2)) on a < l <= l_cap.
// Diverges (integrably) as l -> a+.
double conditional_density(double l, const ConditionalStepLaw& law);

// CDF acos(a/l) / acos(a/l_cap) on [a, l_cap]; 0 at a, 1 at l_cap.
double conditional_cdf(double l, const ConditionalStepLaw& law);

// Unnormalized asymptotic tail shape 1/l^2, valid only for l >= 10 a.
double marginal_tail_density(double l, double a);

}  // namespace destwalk
