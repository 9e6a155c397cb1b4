// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <set>

#include "ymx/action.hpp"
#include "ymx/errors.hpp"
#include "ymx/lattice.hpp"
#include "ymx/montecarlo.hpp"

using namespace ymx;

TEST_CASE("cell counts") {
  const auto a = build_lattice(2, {1, 1});
  CHECK(a.num_vertices() == 4);
  CHECK(a.num_edges() == 4);
  CHECK(a.num_plaquettes() == 1);
  const auto b = build_lattice(2, {2, 2});
  CHECK(b.num_vertices() == 9);
  CHECK(b.num_edges() == 12);
  CHECK(b.num_plaquettes() == 4);
  const auto c = build_lattice(3, {1, 1, 1});
  CHECK(c.num_vertices() == 8);
  CHECK(c.num_edges() == 12);
  CHECK(c.num_plaquettes() == 6);
}

TEST_CASE("plaquette boundaries are closed and contain their edges") {
  for (const auto& ext : std::vector<std::vector<int>>{{1, 1}, {2, 3}, {1, 1, 1}, {2, 1, 1}}) {
    const auto lat = build_lattice(static_cast<int>(ext.size()), ext);
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
      const auto& w = lat.plaquette(p).boundary;
      CHECK(w.size() == 4);
      CHECK(lat.is_closed(w));
      for (const auto& l : w) {
        const auto ps = lat.plaquettes_containing(l.id);
        CHECK(std::find(ps.begin(), ps.end(), p) != ps.end());
      }
    }
  }
}

TEST_CASE("spanning trees and gauge fixing") {
  for (const auto& ext : std::vector<std::vector<int>>{{1, 1}, {2, 2}, {1, 2}, {1, 1, 1}}) {
    const auto lat = build_lattice(static_cast<int>(ext.size()), ext);
    for (auto strat : {TreeStrategy::BreadthFirst, TreeStrategy::DepthFirst}) {
      const auto g = make_gauge(lat, spanning_tree(lat, 0, strat));
      CHECK(static_cast<int>(g.tree.size()) == lat.num_vertices() - 1);
      CHECK(static_cast<int>(g.non_tree.size()) == lat.num_edges() - lat.num_vertices() + 1);
      for (int p = 0; p < lat.num_plaquettes(); ++p) {
        const auto w = gauge_fix_word(lat.plaquette(p).boundary, g);
        CHECK(!w.empty());
        for (const auto& l : w) CHECK(!g.in_tree[l.id]);
      }
    }
  }
  const auto unit = build_lattice(2, {1, 1});
  const auto g = default_gauge(unit);
  CHECK(g.non_tree.size() == 1);
  const auto w = gauge_fix_word(unit.plaquette(0).boundary, g);
  REQUIRE(w.size() == 1);
  CHECK(w[0].id == g.non_tree[0]);
  CHECK(gauge_fix_word({{g.tree[0], 1}, {g.tree[0], -1}}, g).empty());
  CHECK_THROWS_AS(build_lattice(1, {1}), ValidationError);
  CHECK(default_gauge(build_lattice(2, {2, 2})).non_tree.size() == 4);
}

TEST_CASE("dual incidence graph") {
  const auto unit = build_lattice(2, {1, 1});
  const auto g = default_gauge(unit);
  const auto d = dual_incidence(unit, g, {});
  CHECK(d.plaquettes.size() == 1);
  CHECK(d.edges.size() == 1);
  CHECK(d.incidences.size() == 1);
  CHECK(d.defect_support.empty());
  CHECK(dual_incidence(unit, g, {unit.plaquette(0).boundary}).defect_support == g.non_tree);
  const auto big = build_lattice(3, {2, 1, 1});
  const auto gb = default_gauge(big);
  for (const auto& [p, e] : dual_incidence(big, gb, {}).incidences) {
    CHECK(!gb.in_tree[e]);
    const auto ps = big.plaquettes_containing(e);
    CHECK(std::find(ps.begin(), ps.end(), p) != ps.end());
  }
}

TEST_CASE("loop syntax") {
  const auto l = parse_traversal("-e12");
  CHECK(l.id == 12);
  CHECK(l.exponent == -1);
  CHECK(traversal_string({3, 1}) == "+e3");
  CHECK(loop_string({}) == "()");
  CHECK_THROWS_AS(parse_traversal("e3"), ValidationError);
  const auto lat = build_lattice(2, {1, 1});
  CHECK_THROWS_AS(lat.check_loop({{0, 1}}), ValidationError);
}

TEST_CASE("gauge-fixed and full Haar expectations agree") {
  const auto lat = build_lattice(2, {1, 2});
  ActionSpec a;
  a.coupling = 0.5;
  McOptions full;
  full.gauge_fixed = false;
  const std::vector<LoopWord> loops{lat.plaquette(0).boundary};
  const auto x = mc_lattice_expectation(lat, loops, a, 2, 200000, 5);
  const auto y = mc_lattice_expectation(lat, loops, a, 2, 200000, 6, full);
  CHECK(std::abs(x.value - y.value) < 3.0 * std::hypot(x.stderr, y.stderr));
}
