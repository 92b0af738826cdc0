// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <vector>

#include "destwalk/rng.hpp"
#include "destwalk/theory.hpp"
#include "doctest.h"

using namespace destwalk;

namespace {

// Quadrature of the density with the substitution l = a + s^2, which turns
// the edge singularity into a smooth integrand:
//   f(a + s^2) 2s = 2a / (C (a + s^2) sqrt(2a + s^2)).
double density_mass(const ConditionalStepLaw& law, int intervals) {
  const double smax = std::sqrt(law.l_cap - law.a);
  const double h = smax / intervals;
  const double c = std::acos(law.a / law.l_cap);
  const auto g = [&](double s) {
    return 2.0 * law.a / (c * (law.a + s * s) * std::sqrt(2.0 * law.a + s * s));
  };
  double sum = g(0.0) + g(smax);
  for (int i = 1; i < intervals; ++i) {
    sum += g(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("conditional law rejects bad parameters") {
  CHECK_THROWS_AS(ConditionalStepLaw(0.0, 10.0), ConfigError);
  CHECK_THROWS_AS(ConditionalStepLaw(1.0, 1.0), ConfigError);
}

TEST_CASE("conditional density hand values") {
  const ConditionalStepLaw law(1.0, 10.0);
  const double at_sqrt2 = conditional_density(std::sqrt(2.0), law);
  CHECK(at_sqrt2 ==
        doctest::Approx(1.0 / (std::acos(0.1) * std::sqrt(2.0))).epsilon(1e-14));
  CHECK(at_sqrt2 == doctest::Approx(0.4808).epsilon(2e-4));

  const double at_cap = conditional_density(10.0, law);
  CHECK(at_cap ==
        doctest::Approx(1.0 / (std::acos(0.1) * 10.0 * std::sqrt(99.0)))
            .epsilon(1e-14));
  CHECK(at_cap == doctest::Approx(0.006834).epsilon(1e-4));

  CHECK_THROWS_AS(conditional_density(1.0, law), OutOfSupportError);
  CHECK_THROWS_AS(conditional_density(10.5, law), OutOfSupportError);
}

TEST_CASE("conditional density integrates to one") {
  const ConditionalStepLaw law(1.0, 10.0);
  CHECK(density_mass(law, 20000) == doctest::Approx(1.0).epsilon(1e-6));
  const ConditionalStepLaw wide(0.01, 10.0);
  CHECK(density_mass(wide, 200000) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("conditional cdf endpoints and hand value") {
  const ConditionalStepLaw law(1.0, 10.0);
  CHECK(conditional_cdf(1.0, law) == 0.0);
  CHECK(conditional_cdf(10.0, law) == 1.0);
  CHECK(conditional_cdf(std::sqrt(2.0), law) ==
        doctest::Approx(std::acos(1.0 / std::sqrt(2.0)) / std::acos(0.1))
            .epsilon(1e-14));
  CHECK(conditional_cdf(std::sqrt(2.0), law) ==
        doctest::Approx(0.5341).epsilon(1e-4));
  CHECK_THROWS_AS(conditional_cdf(0.5, law), OutOfSupportError);
}

TEST_CASE("conditional cdf is strictly increasing on the support") {
  const ConditionalStepLaw law(1.0, 10.0);
  double prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double l = 1.0 + 9.0 * i / 200.0;
    const double f = conditional_cdf(l, law);
    CHECK(f > prev);
    prev = f;
  }
}

TEST_CASE("conditional density is the cdf derivative") {
  const ConditionalStepLaw law(1.0, 10.0);
  for (double l : {1.5, 2.0, 3.0, 5.0, 8.0, 9.5}) {
    const double h = 1e-5 * l;
    const double numeric =
        (conditional_cdf(l + h, law) - conditional_cdf(l - h, law)) / (2.0 * h);
    CHECK(numeric ==
          doctest::Approx(conditional_density(l, law)).epsilon(1e-6));
  }
}

TEST_CASE("far tail of the conditional density is inverse square") {
  const ConditionalStepLaw law(1.0, 1e6);
  for (double l : {30.0, 50.0, 100.0, 1000.0}) {
    const double ratio = conditional_density(l, law) /
                         conditional_density(2.0 * l, law);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.01));
    // l sqrt(l^2 - a^2) ~ l^2 is within 1% beyond 30a.
    const double exact = conditional_density(l, law);
    const double approx = law.a / (std::acos(law.a / law.l_cap) * l * l);
    CHECK(std::abs(exact - approx) / exact < 0.01);
  }
}

TEST_CASE("marginal tail density values and regime guard") {
  CHECK(marginal_tail_density(1.0, 1e-3) == 1.0);
  CHECK(marginal_tail_density(2.0, 1e-3) == 0.25);
  CHECK(marginal_tail_density(1.0, 1e-3) / marginal_tail_density(2.0, 1e-3) ==
        4.0);
  CHECK_THROWS_AS(marginal_tail_density(5e-3, 1e-3), OutOfSupportError);
}

TEST_CASE("simulated one-hot law matches the closed form in 2D") {
  // theta ~ U[0, 2pi), l = min(a/|cos theta|, cap). Conditioned on not
  // hitting the cap, the CDF is conditional_cdf; the cap atom carries
  // 1 - acos(a/cap)/(pi/2).
  const double a = 1.0;
  const double cap = 10.0;
  const ConditionalStepLaw law(a, cap);
  Rng rng(61);
  const int n = 1000000;
  std::vector<double> kept;
  kept.reserve(n);
  int capped = 0;
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * kPi * rng.uniform01();
    const double raw = a / std::abs(std::cos(theta));
    if (raw >= cap) {
      ++capped;
    } else {
      kept.push_back(raw);
    }
  }
  std::sort(kept.begin(), kept.end());
  double worst = 0.0;
  const double m = static_cast<double>(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const double f = conditional_cdf(kept[i], law);
    worst = std::max(
        {worst, (static_cast<double>(i) + 1.0) / m - f,
         f - static_cast<double>(i) / m});
  }
  CHECK(worst < 0.01);

  const double atom_expected = 1.0 - std::acos(a / cap) / (kPi / 2.0);
  CHECK(static_cast<double>(capped) / n ==
        doctest::Approx(atom_expected).epsilon(0.02));
}
