// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <random>

#include "ymx/algebra.hpp"
#include "ymx/rational.hpp"

using namespace ymx;

TEST_CASE("partitions_of enumerates in reverse lexicographic order") {
  CHECK(partitions_of(0) == std::vector<Partition>{Partition{}});
  CHECK(partitions_of(4).size() == 5);
  CHECK(partitions_of(4, 2) == std::vector<Partition>{{4}, {3, 1}, {2, 2}});
  CHECK(partitions_of(7).size() == 15);
}

TEST_CASE("cycle types") {
  CHECK(cycle_type(Permutation::identity(3)) == Partition{1, 1, 1});
  CHECK(cycle_type(Permutation({1, 0, 2})) == Partition{2, 1});
  CHECK(cycle_type(Permutation({1, 2, 0, 3})) == Partition{3, 1});
  std::mt19937 rng(3);
  for (int n = 1; n <= 8; ++n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    const Permutation p(img);
    CHECK(cycle_type(p.compose(p.inverse())) == Partition(std::vector<int>(n, 1)));
  }
}

TEST_CASE("symmetric group characters") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& mu : partitions_of(n)) {
      CHECK(sym_character(Partition{n}, mu) == 1);
      const int sign = ((n - mu.length()) % 2 == 0) ? 1 : -1;
      CHECK(sym_character(Partition(std::vector<int>(n, 1)), mu) == sign);
    }
  }
  CHECK(sym_character({2, 1}, {1, 1, 1}) == 2);
  CHECK(sym_character({2, 1}, {2, 1}) == 0);
  CHECK(sym_character({2, 1}, {3}) == -1);
}

TEST_CASE("column orthogonality is exact for n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    const auto parts = partitions_of(n);
    for (const auto& mu : parts) {
      for (const auto& nu : parts) {
        BigInt s = 0;
        for (const auto& la : parts) s += BigInt(sym_character(la, mu)) * sym_character(la, nu);
        // sum_lambda chi(mu) chi(nu) = z_mu delta
        CHECK(s == (mu == nu ? centralizer_order(mu) : BigInt(0)));
      }
    }
  }
}

TEST_CASE("sum of squared dimensions is n!") {
  for (int n = 0; n <= 7; ++n) {
    BigInt s = 0;
    for (const auto& la : partitions_of(n)) {
      const BigInt d = sym_dimension(la);
      CHECK(d == BigInt(sym_character(la, Partition(std::vector<int>(n, 1)))));
      s += d * d;
    }
    CHECK(s == factorial(n));
  }
}

TEST_CASE("class sizes sum to n!") {
  for (int n = 1; n <= 7; ++n) {
    BigInt s = 0;
    for (const auto& mu : partitions_of(n)) s += class_size(mu);
    CHECK(s == factorial(n));
  }
}

TEST_CASE("rational formatting round trips") {
  CHECK(rational_string(Rational(2)) == "2/1");
  CHECK(rational_string(Rational(-1, 6)) == "-1/6");
  CHECK(parse_rational("-1/6") == Rational(-1, 6));
  CHECK(parse_rational("5") == Rational(5));
  CHECK(rational_pow(Rational(2), -3) == Rational(1, 8));
}
