#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "neurorf/random.hpp"

using namespace neurorf;

TEST_CASE("splitmix64 known first output") {
  std::uint64_t s = 0;
  CHECK(splitmix64(s) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("derive_seed distinct across indices and masters") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 4; ++m)
    for (std::uint64_t i = 0; i < 64; ++i) seen.insert(derive_seed(m, i));
  CHECK(seen.size() == 4u * 64u);
}

TEST_CASE("rng determinism for same seed") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(42), d(43);
  bool differ = false;
  for (int i = 0; i < 16; ++i)
    if (c.next_u64() != d.next_u64()) differ = true;
  CHECK(differ);
}

TEST_CASE("uniform stays in [0,1) and has sane moments") {
  Rng rng(7);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sq += u * u;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 0.005);
  CHECK(std::abs(var - 1.0 / 12.0) < 0.005);
}

TEST_CASE("uniform range endpoints") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-3.0, 5.0);
    CHECK(u >= -3.0);
    CHECK(u < 5.0);
  }
}

TEST_CASE("gaussian moments") {
  Rng rng(99);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sq += g * g;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("uniform_index covers all values without bias") {
  Rng rng(5);
  std::vector<int> counts(10, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto k = rng.uniform_index(10);
    REQUIRE(k < 10);
    counts[static_cast<int>(k)]++;
  }
  for (int c : counts) {
    CHECK(c > n / 10 - 1000);
    CHECK(c < n / 10 + 1000);
  }
}

TEST_CASE("uniform_int hits both endpoints") {
  Rng rng(3);
  bool lo = false, hi = false;
  for (int i = 0; i < 1000; ++i) {
    const long v = rng.uniform_int(-2, 2);
    REQUIRE(v >= -2);
    REQUIRE(v <= 2);
    if (v == -2) lo = true;
    if (v == 2) hi = true;
  }
  CHECK(lo);
  CHECK(hi);
}

TEST_CASE("sample_without_replacement yields k distinct in-range values") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = rng.sample_without_replacement(20, 8);
    REQUIRE(s.size() == 8u);
    std::set<std::size_t> uniq(s.begin(), s.end());
    CHECK(uniq.size() == 8u);
    for (auto idx : s) CHECK(idx < 20u);
  }
}

TEST_CASE("sample_without_replacement full permutation") {
  Rng rng(23);
  const auto s = rng.sample_without_replacement(6, 6);
  std::set<std::size_t> uniq(s.begin(), s.end());
  CHECK(uniq.size() == 6u);
}
