// SPDX-License-Identifier: Apache-2.0
#include "destwalk/frame.hpp"

#include <cmath>

namespace destwalk {

namespace {

// Modified Gram-Schmidt with a second projection pass per column. Returns
// false when a column collapses (near-linearly-dependent draw).
bool orthonormalize(std::size_t n, std::vector<double>& cols) {
  constexpr double kDegenerate = 1e-8;
  for (std::size_t i = 0; i < n; ++i) {
    double* v = cols.data() + i * n;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < i; ++j) {
        const double* e = cols.data() + j * n;
        double proj = 0.0;
        for (std::size_t k = 0; k < n; ++k) proj += e[k] * v[k];
        for (std::size_t k = 0; k < n; ++k) v[k] -= proj * e[k];
      }
    }
    double nv = 0.0;
    for (std::size_t k = 0; k < n; ++k) nv += v[k] * v[k];
    nv = std::sqrt(nv);
    if (nv < kDegenerate) return false;
    for (std::size_t k = 0; k < n; ++k) v[k] /= nv;
  }
  return true;
}

}  // namespace

Frame::Frame(std::size_t n, std::vector<double> column_major)
    : n_(n), cols_(std::move(column_major)) {
  require_dimension(n);
  require_same_dimension(n * n, cols_.size());
}

Frame Frame::identity(std::size_t n) {
  require_dimension(n);
  std::vector<double> cols(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) cols[i * n + i] = 1.0;
  return Frame(n, std::move(cols));
}

double Frame::orthonormality_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double g = dot(column(i), column(j));
      const double target = (i == j) ? 1.0 : 0.0;
      const double d = std::abs(g - target);
      if (d > worst) worst = d;
    }
  }
  return worst;
}

Frame random_frame(std::size_t n, Rng& rng) {
  require_dimension(n);
  std::vector<double> cols(n * n);
  for (int attempt = 0; attempt < 100; ++attempt) {
    for (auto& c : cols) c = rng.normal();
    if (orthonormalize(n, cols)) return Frame(n, std::move(cols));
  }
  // Unreachable for any practical dimension.
  throw Error("random_frame: degenerate draws 100 times in a row");
}

VectorN frame_to(const Frame& frame, const VectorN& r) {
  require_same_dimension(frame.dim(), r.size());
  VectorN out(frame.dim());
  for (std::size_t i = 0; i < frame.dim(); ++i) {
    out[i] = dot(frame.column(i), r);
  }
  return out;
}

VectorN frame_from(const Frame& frame, const VectorN& delta_prime) {
  require_same_dimension(frame.dim(), delta_prime.size());
  VectorN out(frame.dim(), 0.0);
  for (std::size_t i = 0; i < frame.dim(); ++i) {
    const auto col = frame.column(i);
    const double w = delta_prime[i];
    for (std::size_t k = 0; k < frame.dim(); ++k) {
      out[k] += w * col[k];
    }
  }
  return out;
}

}  // namespace destwalk
