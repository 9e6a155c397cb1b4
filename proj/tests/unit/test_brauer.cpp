// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <random>

#include "ymx/brauer.hpp"

using namespace ymx;

TEST_CASE("walled diagram counts are (n+m)!") {
  CHECK(enumerate_walled(1, 0).size() == 1);
  CHECK(enumerate_walled(1, 1).size() == 2);
  CHECK(enumerate_walled(2, 1).size() == 6);
  CHECK(enumerate_walled(2, 2).size() == 24);
}

TEST_CASE("composition rules") {
  const auto id = WalledBrauerDiagram::identity(1, 1);
  const auto e = WalledBrauerDiagram::contraction(1, 1, 0, 0);
  const auto p = compose(id, e);
  CHECK(p.diagram == e);
  CHECK(p.loops == 0);
  const auto q = compose(e, e);
  CHECK(q.diagram == e);
  CHECK(q.loops == 1);
}

TEST_CASE("contraction pattern and trace") {
  const auto e = WalledBrauerDiagram::contraction(1, 1, 0, 0);
  const auto pattern = index_pattern(e);
  REQUIRE(pattern.size() == 2);
  for (const auto& c : pattern) CHECK(c.first_top == c.second_top);
  for (int N = 1; N <= 3; ++N) CHECK(dense_matrix(e, N).trace() == doctest::Approx(N));
}

TEST_CASE("covariant transposition crosses indices") {
  const auto sw = WalledBrauerDiagram::permutation(Permutation({1, 0}), Permutation::identity(0));
  const auto M = dense_matrix(sw, 2);
  // |i j> -> |j i>
  CHECK(M(0 * 2 + 1, 1 * 2 + 0) == 1.0);
  CHECK(M(0 * 2 + 1, 0 * 2 + 1) == 0.0);
}

TEST_CASE("dense realization is a representation up to loop factors") {
  for (int N = 1; N <= 3; ++N) {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {3, 0}}) {
      const auto ds = enumerate_walled(n, m);
      for (const auto& a : ds) {
        CHECK(dense_matrix(a, N).trace() == doctest::Approx(std::pow(N, a.closed_cycles())));
        for (const auto& b : ds) {
          const auto p = compose(a, b);
          const Eigen::MatrixXd lhs = dense_matrix(a, N) * dense_matrix(b, N);
          const Eigen::MatrixXd rhs = std::pow(N, p.loops) * dense_matrix(p.diagram, N);
          CHECK((lhs - rhs).norm() == doctest::Approx(0.0));
        }
      }
    }
  }
}

TEST_CASE("algebra product is associative") {
  std::mt19937 rng(11);
  for (int N : {2, 3}) {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
      const auto ds = enumerate_walled(n, m);
      std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
      std::uniform_int_distribution<int> coef(-3, 3);
      for (int trial = 0; trial < 10; ++trial) {
        BrauerElement x, y, z;
        for (int k = 0; k < 3; ++k) {
          x[ds[pick(rng)]] += coef(rng);
          y[ds[pick(rng)]] += coef(rng);
          z[ds[pick(rng)]] += coef(rng);
        }
        auto l = multiply(multiply(x, y, N), z, N);
        auto r = multiply(x, multiply(y, z, N), N);
        std::erase_if(l, [](const auto& kv) { return kv.second == 0; });
        std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
        CHECK(l == r);
      }
    }
  }
}

TEST_CASE("contraction sum counts caps") {
  const auto A = contraction_sum(2, 1);
  CHECK(A.size() == 2);
}
