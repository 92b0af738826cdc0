// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "destwalk/rng.hpp"
#include "destwalk/vec.hpp"

namespace destwalk {

// An N-dimensional orthonormal basis. Columns are the basis vectors, so the
// column matrix A maps frame coordinates back to the standard basis and A^T
// maps the other way.
class Frame {
 public:
  Frame() = default;
  Frame(std::size_t n, std::vector<double> column_major);

  static Frame identity(std::size_t n);

  std::size_t dim() const { return n_; }
  std::span<const double> column(std::size_t i) const {
    return {cols_.data() + i * n_, n_};
  }

  // max |A^T A - I|; construction keeps this near machine precision.
  double orthonormality_defect() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> cols_;
};

// Rotation-invariant random orthonormal basis: standard-normal columns run
// through Gram-Schmidt (two projection passes per column). Degenerate draws
// are redrawn.
Frame random_frame(std::size_t n, Rng& rng);

// Coordinates of r in the frame basis (R' = A^T R).
VectorN frame_to(const Frame& frame, const VectorN& r);

// Back to the standard basis (dX = A dX').
VectorN frame_from(const Frame& frame, const VectorN& delta_prime);

}  // namespace destwalk
