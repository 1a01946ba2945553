#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "prc/rng.hpp"

using namespace prc;

TEST_CASE("streams are reproducible") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(derive_seed(5, 1) != derive_seed(5, 2));
  CHECK(derive_seed(5, 1) == derive_seed(5, 1));
}

TEST_CASE("uniform draws stay in range") {
  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.uniform_index(7) < 7);
  }
}

TEST_CASE("normal moments") {
  Rng r(77);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double z = r.normal(3.0, 2.0);
    sum += z;
    sq += z * z;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  CHECK(std::abs(mean - 3.0) < 0.03);
  CHECK(std::abs(var - 4.0) < 0.06);
}

TEST_CASE("sampling without replacement") {
  Rng r(4);
  for (int i = 0; i < 200; ++i) {
    auto s = r.sample_without_replacement(10, 4);
    CHECK(s.size() == 4);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(s.back() < 10);
  }
  CHECK(r.sample_without_replacement(5, 5) == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("shuffle is a permutation") {
  Rng r(6);
  std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
  r.shuffle(std::span<int>(v));
  std::vector<int> s = v;
  std::sort(s.begin(), s.end());
  CHECK(s == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
}
