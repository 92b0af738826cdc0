// SPDX-License-Identifier: Apache-2.0
#include "destwalk/destination.hpp"

namespace destwalk {

void DestinationSpec::validate(std::size_t n) const {
  if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
  if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
  if (!anchor.empty() && anchor.size() != n) {
    throw ConfigError("anchor dimension must match n");
  }
}

VectorN uniform_direction(std::size_t n, Rng& rng) {
  require_dimension(n);
  VectorN u(n);
  for (;;) {
    for (auto& c : u) c = rng.normal();
    const double len = norm(u);
    if (len > 1e-12) {
      for (auto& c : u) c /= len;
      return u;
    }
  }
}

VectorN relative_destination(const VectorN& x, double lambda, Rng& rng) {
  if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
  const double r = rng.exponential(lambda);
  VectorN u = uniform_direction(x.size(), rng);
  VectorN d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] + r * u[i];
  return d;
}

VectorN fixed_destination(const VectorN& anchor, double sigma, Rng& rng) {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
  VectorN d(anchor.size());
  for (std::size_t i = 0; i < anchor.size(); ++i) {
    d[i] = anchor[i] + sigma * rng.normal();
  }
  return d;
}

VectorN draw_destination(const DestinationSpec& spec, const VectorN& x,
                         Rng& rng) {
  if (spec.mode == DestinationMode::kRelative) {
    return relative_destination(x, spec.lambda, rng);
  }
  if (spec.anchor.empty()) {
    return fixed_destination(VectorN(x.size(), 0.0), spec.sigma, rng);
  }
  require_same_dimension(spec.anchor.size(), x.size());
  return fixed_destination(spec.anchor, spec.sigma, rng);
}

}  // namespace destwalk
