// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <unordered_set>
#include <vector>

#include "destwalk/rng.hpp"
#include "doctest.h"

using namespace destwalk;

TEST_CASE("rng is deterministic per seed") {
  Rng a(42), b(42), c(43);
  bool all_equal = true;
  bool any_diff_from_c = false;
  for (int i = 0; i < 1000; ++i) {
    const auto va = a.next_u64();
    if (va != b.next_u64()) all_equal = false;
    if (va != c.next_u64()) any_diff_from_c = true;
  }
  CHECK(all_equal);
  CHECK(any_diff_from_c);
}

TEST_CASE("mix64 distinct on distinct inputs") {
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    seen.insert(mix64(i));
  }
  CHECK(seen.size() == 10000);
}

TEST_CASE("uniform01 range and mean") {
  Rng rng(7);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("uniform_index bounds and coverage") {
  Rng rng(11);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 50000; ++i) {
    const std::size_t k = rng.uniform_index(5);
    REQUIRE(k < 5);
    ++hits[k];
  }
  for (int h : hits) {
    CHECK(h == doctest::Approx(10000).epsilon(0.05));
  }
  CHECK_THROWS_AS(rng.uniform_index(0), DimensionError);
}

TEST_CASE("normal moments") {
  Rng rng(13);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("exponential mean") {
  Rng rng(17);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = rng.exponential(1000.0);
    REQUIRE(e >= 0.0);
    sum += e;
  }
  CHECK(sum / n == doctest::Approx(1e-3).epsilon(0.02));
}
