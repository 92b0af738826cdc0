// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "destwalk/rng.hpp"
#include "destwalk/vec.hpp"

namespace destwalk {

// The two destination protocols.
//   kRelative  (protocol 1) a fresh target near the current position: an
//              exponentially distributed distance in a uniformly random
//              direction
//   kFixed     (protocol 2) a fixed true destination observed with isotropic
//              Gaussian identification error
enum class DestinationMode {
  kRelative,
  kFixed,
};

struct DestinationSpec {
  DestinationMode mode = DestinationMode::kRelative;
  double lambda = 1000.0;  // rate of the relative distance draw
  double sigma = 1e-3;     // identification-error scale
  VectorN anchor;          // true destination for kFixed; empty means origin

  // Throws ConfigError naming the offending field.
  void validate(std::size_t n) const;
};

// Unit vector with rotation-invariant distribution (normalized
// standard-normal draw; consumes 2n words).
VectorN uniform_direction(std::size_t n, Rng& rng);

// D = x + r u with r ~ Exponential(lambda) and u a uniform direction.
// Draw order: distance first, then direction.
VectorN relative_destination(const VectorN& x, double lambda, Rng& rng);

// D = anchor + eps with independent components eps_i ~ Normal(0, sigma^2).
VectorN fixed_destination(const VectorN& anchor, double sigma, Rng& rng);

// Dispatches on spec.mode; n is taken from x.
VectorN draw_destination(const DestinationSpec& spec, const VectorN& x,
                         Rng& rng);

}  // namespace destwalk
