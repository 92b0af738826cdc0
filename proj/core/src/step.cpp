// SPDX-License-Identifier: Apache-2.0
#include "destwalk/step.hpp"

#include <cmath>
#include <string>

namespace destwalk {

void StepParams::validate() const {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw ConfigError("alpha must be in (0,1]");
  }
  if (!(gamma >= -1.0) || !(gamma <= 1.0)) {
    throw ConfigError("gamma must be in [-1,1]");
  }
  if (!(l_max > 0.0)) {
    throw ConfigError("l_max must be > 0");
  }
}

SimplexWeights sample_beta(std::size_t n, BetaMode mode, Rng& rng) {
  require_dimension(n);
  std::vector<double> w(n, 0.0);
  if (mode == BetaMode::kOneHot) {
    w[rng.uniform_index(n)] = 1.0;
    return SimplexWeights{std::move(w)};
  }
  // Flat Dirichlet: normalized independent standard exponentials. Redraw in
  // the (measure-zero) case where every draw is zero.
  for (;;) {
    double sum = 0.0;
    double carry = 0.0;  // Kahan, keeps the simplex constraint tight
    for (auto& x : w) {
      x = rng.exponential(1.0);
      const double y = x - carry;
      const double t = sum + y;
      carry = (t - sum) - y;
      sum = t;
    }
    if (sum > 0.0) {
      for (auto& x : w) x /= sum;
      return SimplexWeights{std::move(w)};
    }
  }
}

EtaWeights eta_weights(const SimplexWeights& beta, const VectorN& r_prime,
                       double gamma) {
  require_same_dimension(beta.size(), r_prime.size());
  if (!(gamma >= -1.0) || !(gamma <= 1.0)) {
    throw ConfigError("gamma must be in [-1,1]");
  }
  const double r = norm(r_prime);
  if (r == 0.0) {
    throw AtDestinationError("eta_weights: difference vector has zero norm");
  }
  const double floor = singular_floor(r);
  const double beta_exp = 1.0 - std::abs(gamma);

  std::vector<double> eta(r_prime.size());
  for (std::size_t i = 0; i < r_prime.size(); ++i) {
    if (gamma < 0.0 && std::abs(r_prime[i]) < floor) {
      throw SingularComponentError(
          "eta_weights: component " + std::to_string(i) +
          " below the singularity floor for gamma < 0");
    }
    const double b = beta.weights[i];
    double bw;
    if (beta_exp == 0.0) {
      bw = 1.0;  // 0^0 = 1: |gamma| = 1 ignores beta
    } else if (beta_exp == 1.0) {
      bw = b;
    } else {
      bw = std::pow(b, beta_exp);
    }
    double gw;
    if (gamma == 0.0) {
      gw = 1.0;
    } else {
      const double c = r_prime[i] / r;
      gw = std::pow(c * c, gamma);
    }
    eta[i] = bw * gw;
  }
  if (!all_finite(eta)) {
    throw SingularComponentError("eta_weights: non-finite weight");
  }
  return EtaWeights{std::move(eta)};
}

VectorN raw_step(const VectorN& r_prime, const EtaWeights& eta, double alpha) {
  require_same_dimension(r_prime.size(), eta.size());
  const double r2 = dot(r_prime, r_prime);
  const double floor = singular_floor(std::sqrt(r2));
  VectorN dx(r_prime.size(), 0.0);
  for (std::size_t i = 0; i < r_prime.size(); ++i) {
    const double e = eta.weights[i];
    if (e == 0.0) continue;  // axis gets no movement
    if (std::abs(r_prime[i]) < floor) {
      throw SingularComponentError("raw_step: division guard on component " +
                                   std::to_string(i));
    }
    dx[i] = alpha * e * r2 / r_prime[i];
  }
  return dx;
}

VectorN clip_step(VectorN delta, double l_max) {
  if (!(l_max > 0.0)) throw ConfigError("l_max must be > 0");
  const double l = norm(delta);
  if (l <= l_max) return delta;
  const double scale = l_max / l;
  for (auto& d : delta) d *= scale;
  return delta;
}

VectorN min_step(const VectorN& r, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) throw ConfigError("alpha must be in (0,1]");
  VectorN dx(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) dx[i] = alpha * r[i];
  return dx;
}

double satisfaction_z(double r, double sigma_big) {
  if (!(r >= 0.0)) throw OutOfSupportError("satisfaction_z: r must be >= 0");
  if (!(sigma_big > 0.0)) throw ConfigError("sigma_big must be > 0");
  return std::exp(-r * r / (2.0 * sigma_big));
}

double satisfaction_delta_z(double r, double sigma_big) {
  if (!(r >= 0.0)) throw OutOfSupportError("satisfaction_delta_z: r must be >= 0");
  if (!(sigma_big > 0.0)) throw ConfigError("sigma_big must be > 0");
  return -std::expm1(-r * r / (2.0 * sigma_big));
}

}  // namespace destwalk
