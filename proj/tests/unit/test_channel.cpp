// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "ymx/channel.hpp"
#include "ymx/state_sum.hpp"

using namespace ymx;

namespace {

ActionSpec wilson(double beta) {
  ActionSpec a;
  a.kind = ActionKind::Wilson;
  a.coupling = beta;
  return a;
}

std::vector<PlaquetteDecoration> decorations(int P, int N, int box) {
  const auto ws = weights_in_box(N, box);
  std::vector<PlaquetteDecoration> out{{}};
  for (int p = 0; p < P; ++p) {
    std::vector<PlaquetteDecoration> next;
    for (const auto& d : out) {
      for (const auto& w : ws) {
        auto e = d;
        e.push_back(w);
        next.push_back(e);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("local resolutions on a single plaquette") {
  const auto lat = build_lattice(2, {1, 1});
  const auto g = default_gauge(lat);
  for (int N : {2, 3}) {
    const auto triv = local_resolutions(lat, g, 0, HighestWeight::trivial(N));
    REQUIRE(triv.size() == 1);
    CHECK(triv[0].coefficient == 1);
    CHECK(triv[0].legs.empty());
    CHECK(plaquette_amplitude(triv, triv[0].channel) == 1);

    const auto fund = local_resolutions(lat, g, 0, HighestWeight::fundamental(N));
    REQUIRE(fund.size() == 1);
    CHECK(fund[0].coefficient == 1);
    CHECK(plaquette_amplitude(fund, fund[0].channel) == 1);
    CHECK(plaquette_amplitude(fund, "no such channel") == 0);

    const auto adj = local_resolutions(lat, g, 0, HighestWeight(Partition{1}, Partition{1}, N));
    REQUIRE(adj.size() == 2);
    std::multiset<Rational> coeffs{adj[0].coefficient, adj[1].coefficient};
    CHECK(coeffs == std::multiset<Rational>{Rational(1), Rational(-1, N)});
  }
}

TEST_CASE("edge kernels") {
  CHECK(edge_kernel({}, {}, 3) == 1);
  CHECK(edge_kernel({{0, 0}}, {{0, 0}}, 3) == Rational(1, 3));
  CHECK(edge_kernel({{0, 1}}, {{0, 0}}, 3) == 0);
  CHECK(edge_kernel({{0, 0}}, {}, 3) == 0);
  CHECK(edge_kernel({{0, 0}, {1, 1}}, {{0, 0}, {1, 1}}, 2) == Rational(1, 3));
}

TEST_CASE("spin-foam sum reconstructs the topological coefficient") {
  for (const auto& ext : std::vector<std::vector<int>>{{1, 1}, {1, 2}}) {
    const auto lat = build_lattice(2, ext);
    const auto g = default_gauge(lat);
    const auto b0 = lat.plaquette(0).boundary;
    const auto bl = lat.plaquette(lat.num_plaquettes() - 1).boundary;
    const std::vector<std::vector<LoopWord>> families{{}, {b0}, {inverse_word(bl)}, {b0, inverse_word(b0)}};
    for (int N : {1, 2}) {
      for (const auto& loops : families) {
        for (const auto& alpha : decorations(lat.num_plaquettes(), N, N == 1 ? 2 : 1)) {
          const double sf = spin_foam_sum(lat, g, loops, alpha);
          const double tc = topological_coeff(lat, g, loops, alpha).value;
          CHECK(sf == doctest::Approx(tc).epsilon(1e-9).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("kernels off the defect support do not depend on the loops") {
  const auto lat = build_lattice(2, {1, 2});
  const auto g = default_gauge(lat);
  const int N = 2;
  const std::vector<LoopWord> loops{lat.plaquette(0).boundary};
  std::set<int> support;
  for (const auto& w : loops) {
    for (const auto& l : gauge_fix_word(w, g)) support.insert(l.id);
  }
  int compared = 0;
  for (const auto& alpha : decorations(lat.num_plaquettes(), N, 2)) {
    const auto with = build_factor_table(lat, g, loops, alpha);
    const auto without = build_factor_table(lat, g, {}, alpha);
    for (const auto& [e, k] : without.kernels) {
      if (support.count(e) != 0) continue;
      REQUIRE(with.kernels.count(e) == 1);
      CHECK(with.kernels.at(e).data == k.data);
      ++compared;
    }
  }
  CHECK(compared > 0);
}

TEST_CASE("defect ratio") {
  const auto lat = build_lattice(2, {1, 1});
  const auto g = default_gauge(lat);
  CHECK(defect_ratio(lat, g, {}, wilson(1.0), 2).value == doctest::Approx(1.0));
  const auto r = defect_ratio(lat, g, {lat.plaquette(0).boundary}, wilson(1.0), 1, {.box = 20});
  CHECK(r.value == doctest::Approx(oracle::bessel_i_quadrature(1, 1.0) / oracle::bessel_i_quadrature(0, 1.0)).epsilon(1e-8));

  const auto lat2 = build_lattice(2, {1, 2});
  const std::vector<LoopWord> loops{lat2.plaquette(1).boundary};
  const auto bfs = make_gauge(lat2, spanning_tree(lat2, 0, TreeStrategy::BreadthFirst));
  const auto dfs = make_gauge(lat2, spanning_tree(lat2, 0, TreeStrategy::DepthFirst));
  const auto a = defect_ratio(lat2, bfs, loops, wilson(0.5), 2);
  const auto b = defect_ratio(lat2, dfs, loops, wilson(0.5), 2);
  const auto s = wilson_expectation_statesum(lat2, bfs, loops, wilson(0.5), 2);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
  CHECK(a.value == doctest::Approx(s.value).epsilon(1e-8));
}
