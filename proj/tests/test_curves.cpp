#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "prc/curves.hpp"

using namespace prc;

namespace {

struct Case {
  std::vector<double> f;
  std::vector<int> y;
};

// Small integer-valued features so that duplicates are common.
Case random_case(std::mt19937_64& gen, bool need_both) {
  std::uniform_int_distribution<int> len(1, 64);
  std::uniform_int_distribution<int> levels(1, 12);
  Case c;
  for (;;) {
    int n = len(gen);
    int k = levels(gen);
    std::uniform_int_distribution<int> v(0, k);
    std::bernoulli_distribution pos(std::uniform_real_distribution<double>(0.05, 0.95)(gen));
    c.f.assign(n, 0.0);
    c.y.assign(n, -1);
    int n_pos = 0;
    for (int i = 0; i < n; ++i) {
      c.y[i] = pos(gen) ? 1 : -1;
      n_pos += c.y[i] == 1;
      c.f[i] = v(gen) * 0.5;
    }
    // Shift the feature with the label half of the time so both orientations occur.
    if (gen() & 1u) {
      double sign = (gen() & 1u) ? 1.0 : -1.0;
      for (int i = 0; i < n; ++i) c.f[i] += sign * (c.y[i] == 1 ? 2.0 : 0.0);
    }
    if (n_pos > 0 && (!need_both || n_pos < n)) return c;
  }
}

}  // namespace

TEST_CASE("baseline is the positive prevalence") {
  std::vector<int> y{1, -1, -1, -1};
  CHECK(prc_baseline(y) == 0.25);
  std::vector<int> none;
  CHECK_THROWS(prc_baseline(none));
}

TEST_CASE("traced reverse case") {
  std::vector<double> f{1, 2, 3, 4};
  std::vector<int> y{-1, -1, 1, 1};
  auto s = auprc(f, y);
  // The trapezoid sum in trace order, evaluated in binary64.
  double traced = 1.0 * (1.0 + 2.0 / 3.0) / 2.0 + 0.0 + (0.5 - 1.0) * (1.0 + 1.0) / 2.0 +
                  (1.0 - 0.5) * (0.5 + 1.0) / 2.0;
  CHECK(s.area == traced);
  CHECK(s.area == oracle::auprc(f, y).area);
  CHECK(s.area == doctest::Approx(17.0 / 24.0).epsilon(1e-15));
  REQUIRE(s.size() == 4);
  CHECK(s.flipped[0] == 1);
  CHECK(s.flipped[1] == 1);
  CHECK(s.flipped[2] == 1);
  CHECK(s.flipped[3] == 0);
  CHECK(s.recall[0] == 1.0);
  CHECK(s.precision[0] == doctest::Approx(2.0 / 3.0));
  CHECK(s.recall[2] == 0.5);
  CHECK(s.precision[2] == 1.0);
  CHECK(s.precision[3] == 0.5);

  auto r = auc(f, y);
  CHECK(r.raw_area == 0.0);
  CHECK(r.area == 1.0);
  CHECK(r.reversed);
}

TEST_CASE("traced forward case") {
  std::vector<double> f{1, 2, 3, 4};
  std::vector<int> y{1, 1, -1, -1};
  CHECK(auprc(f, y).area == 1.0);
  auto r = auc(f, y);
  CHECK(r.area == 1.0);
  CHECK_FALSE(r.reversed);
}

TEST_CASE("curve preconditions") {
  std::vector<double> f{1, 2};
  std::vector<int> neg{-1, -1};
  std::vector<int> pos{1, 1};
  std::vector<int> short_y{1};
  CHECK_THROWS(auprc(f, neg));
  CHECK_THROWS(auc(f, neg));
  CHECK_THROWS(auc(f, pos));
  CHECK_THROWS(auprc(f, short_y));
  CHECK(auprc(f, pos).area == 1.0);
}

TEST_CASE("tied values move together") {
  std::vector<double> f{1, 1, 1, 2};
  std::vector<int> y{1, -1, 1, -1};
  auto s = auprc(f, y);
  REQUIRE(s.size() == 2);
  CHECK(s.thresholds[0] == 1.0);
  CHECK(s.recall[0] == 1.0);
  CHECK(s.precision[0] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("fast sweeps match the quadratic transcription") {
  std::mt19937_64 gen(20240611);
  for (int rep = 0; rep < 300; ++rep) {
    auto c = random_case(gen, false);
    auto fast = auprc(c.f, c.y);
    auto ref = oracle::auprc(c.f, c.y);
    REQUIRE(fast.size() == ref.uniq.size());
    CHECK(std::abs(fast.area - ref.area) <= 1e-12);
    for (std::size_t j = 0; j < fast.size(); ++j) {
      CHECK(fast.thresholds[j] == ref.uniq[j]);
      CHECK(std::abs(fast.recall[j] - ref.a[j]) <= 1e-12);
      CHECK(std::abs(fast.precision[j] - ref.b[j]) <= 1e-12);
    }
  }
  for (int rep = 0; rep < 300; ++rep) {
    auto c = random_case(gen, true);
    auto fast = auc(c.f, c.y);
    auto ref = oracle::auc(c.f, c.y);
    REQUIRE(fast.size() == ref.uniq.size());
    CHECK(std::abs(fast.area - ref.area) <= 1e-12);
    for (std::size_t j = 0; j < fast.size(); ++j) {
      CHECK(std::abs(fast.tpr[j] - ref.a[j]) <= 1e-12);
      CHECK(std::abs(fast.fpr[j] - ref.b[j]) <= 1e-12);
    }
  }
}

TEST_CASE("auc is invariant under negating the feature") {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 100; ++rep) {
    auto c = random_case(gen, true);
    std::vector<double> neg(c.f.size());
    for (std::size_t i = 0; i < c.f.size(); ++i) neg[i] = -c.f[i];
    CHECK(auc(c.f, c.y).area == doctest::Approx(auc(neg, c.y).area).epsilon(1e-12));
  }
}

TEST_CASE("auc lies in [0.5, 1]") {
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 100; ++rep) {
    auto c = random_case(gen, true);
    double a = auc(c.f, c.y).area;
    CHECK(a >= 0.5);
    CHECK(a <= 1.0 + 1e-15);
  }
}

TEST_CASE("presorted entry points agree") {
  std::vector<double> f{0.3, 0.1, 0.2, 0.2, 0.9};
  std::vector<int> y{1, -1, 1, -1, 1};
  auto pairs = sort_pairs(f, y);
  CHECK(auprc_sorted(pairs).area == auprc(f, y).area);
  CHECK(auc_sorted(pairs).area == auc(f, y).area);
}
