// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "destwalk/rng.hpp"
#include "destwalk/vec.hpp"

namespace destwalk {

// How the per-axis allocation weights are drawn each step.
enum class BetaMode {
  kUniformSimplex,  // flat on the (N-1)-simplex
  kOneHot,          // all movement on one uniformly chosen axis
};

// Per-axis movement allocation: non-negative weights summing to one.
struct SimplexWeights {
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

// Allocation after the attractiveness exponent has been applied.
struct EtaWeights {
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

// Step-law parameters.
//   alpha  change rate per step, in (0, 1]; alpha = 1 walks straight to the
//          destination in one step
//   gamma  destination attractiveness, in [-1, 1]; 1 takes the shortest
//          path, 0 allocates movement randomly across axes, negative values
//          overweight axes nearly orthogonal to the difference vector
//   l_max  hard cap on the distance travelled per step
struct StepParams {
  double alpha = 1e-3;
  double gamma = 0.0;
  double l_max = 10.0;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Components with magnitude below this floor count as singular for the
// division in the step formula; callers resample the frame when tripped.
inline double singular_floor(double r) {
  return 1e-12 * (r > 1.0 ? r : 1.0);
}

// Draws the allocation weights. One-hot mode picks the axis uniformly;
// simplex mode normalizes independent standard-exponential draws.
SimplexWeights sample_beta(std::size_t n, BetaMode mode, Rng& rng);

// Effective weights eta_i = beta_i^(1-|gamma|) * (r_i^2 / r^2)^gamma, with
// the convention 0^0 = 1 so |gamma| = 1 ignores beta entirely.
EtaWeights eta_weights(const SimplexWeights& beta, const VectorN& r_prime,
                       double gamma);

// Raw displacement in frame coordinates: dx_i = alpha * eta_i * r^2 / r_i
// for eta_i > 0, zero otherwise. For eta = beta this lands on the
// hyperplane R' . dX' = alpha r^2.
VectorN raw_step(const VectorN& r_prime, const EtaWeights& eta, double alpha);

// Caps the step at l_max, preserving direction.
VectorN clip_step(VectorN delta, double l_max);

// Shortest-path step dX = alpha R.
VectorN min_step(const VectorN& r, double alpha);

// Satisfaction at distance r from the destination: exp(-r^2 / (2 Sigma)),
// in (0, 1]. Used to validate the small-step approximation; the walk
// dynamics never evaluate it.
double satisfaction_z(double r, double sigma_big);

// 1 - z, computed without cancellation.
double satisfaction_delta_z(double r, double sigma_big);

}  // namespace destwalk
