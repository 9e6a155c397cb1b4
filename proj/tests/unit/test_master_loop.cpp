// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <algorithm>

#include "ymx/master_loop.hpp"
#include "ymx/montecarlo.hpp"

using namespace ymx;

namespace {

Word w(std::initializer_list<std::pair<int, int>> letters) {
  Word out;
  for (const auto& [id, ex] : letters) out.push_back({id, ex});
  return out;
}

std::vector<PlaquetteDecoration> decorations(int P, int N, int box) {
  const auto ws = weights_in_box(N, box);
  std::vector<PlaquetteDecoration> out{{}};
  for (int p = 0; p < P; ++p) {
    std::vector<PlaquetteDecoration> next;
    for (const auto& d : out) {
      for (const auto& x : ws) {
        auto e = d;
        e.push_back(x);
        next.push_back(e);
      }
    }
    out = std::move(next);
  }
  return out;
}

Configuration random_configuration(int edges, int N, Rng& rng) {
  Configuration U;
  for (int k = 0; k < edges; ++k) U.push_back(haar_sample(N, rng));
  return U;
}

std::vector<std::vector<LoopWord>> families(const Lattice& lat) {
  const auto b0 = lat.plaquette(0).boundary;
  std::vector<std::vector<LoopWord>> out{{}, {b0}, {inverse_word(b0)}, {b0, b0}, {b0, inverse_word(b0)}};
  if (lat.num_plaquettes() > 1) {
    const auto b1 = lat.plaquette(1).boundary;
    out.push_back({b1});
    out.push_back({b0, inverse_word(b1)});
  }
  return out;
}

}  // namespace

TEST_CASE("surgery multisets on abstract words") {
  const auto one = loop_surgeries({w({{0, 1}, {1, 1}, {2, 1}})}, 1);
  CHECK(one.occurrences == 1);
  CHECK(one.split_plus.empty());
  CHECK(one.split_minus.empty());
  CHECK(one.merge_plus.empty());
  CHECK(one.merge_minus.empty());

  const auto aebec = loop_surgeries({w({{0, 1}, {1, 1}, {2, 1}, {1, 1}, {3, 1}})}, 1);
  CHECK(aebec.occurrences == 2);
  CHECK(aebec.split_plus.size() == 2);
  CHECK(aebec.split_minus.empty());
  for (const auto& r : aebec.split_plus) CHECK(r.family.size() == 2);

  const auto two = loop_surgeries({w({{0, 1}, {1, 1}}), w({{2, 1}, {1, 1}})}, 1);
  CHECK(two.merge_plus.size() == 2);
  CHECK(two.merge_minus.empty());
  for (const auto& r : two.merge_plus) CHECK(r.family.size() == 1);

  const auto mixed = loop_surgeries({w({{0, 1}, {1, 1}, {2, 1}, {1, -1}, {3, 1}})}, 1);
  CHECK(mixed.split_minus.size() == 2);
  CHECK(mixed.split_plus.empty());
}

TEST_CASE("deformations keep the loop count") {
  const auto lat = build_lattice(2, {2, 2});
  const auto b = lat.plaquette(0).boundary;
  for (const auto& l : b) {
    const auto s = surgery_multisets(lat, {b}, l.id);
    CHECK(s.deform_plus.size() + s.deform_minus.size() == 2 * lat.plaquettes_containing(l.id).size());
    for (const auto& r : s.deform_plus) CHECK(r.family.size() == 1);
    for (const auto& r : s.deform_minus) CHECK(r.family.size() == 1);
  }
}

TEST_CASE("magic formulas") {
  for (int N = 1; N <= 6; ++N) {
    const auto basis = lie_algebra_basis(N);
    CHECK(basis.size() == static_cast<std::size_t>(N * N));
    Rng rng(41, N);
    for (int t = 0; t < 3; ++t) {
      const Eigen::MatrixXcd A = Eigen::MatrixXcd::Random(N, N);
      const Eigen::MatrixXcd B = Eigen::MatrixXcd::Random(N, N);
      const auto r = magic_formula_residuals(N, A, B);
      CHECK(r.sum_of_squares < 1e-12);
      CHECK(r.sandwich < 1e-12);
      CHECK(r.trace_pairs < 1e-12);
    }
  }
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2, 2);
  for (const auto& X : lie_algebra_basis(2)) s += X * X;
  CHECK((s + 2.0 * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("pointwise Laplacian identity") {
  const auto lat = build_lattice(2, {1, 2});
  for (int N : {1, 2, 3}) {
    Rng rng(5, N);
    for (const auto& loops : families(lat)) {
      for (int e = 0; e < lat.num_edges(); ++e) {
        for (int t = 0; t < 50; ++t) {
          const auto U = random_configuration(lat.num_edges(), N, rng);
          const auto r = loop_laplacian_pointwise(loops, e, U);
          CHECK(r.difference < 1e-10);
          if (loops.empty()) CHECK(std::abs(r.direct) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("recoupling basics") {
  const auto lat = build_lattice(2, {1, 1});
  const auto b = lat.plaquette(0).boundary;
  const int e = b.front().id;
  CHECK(recoupling_coefficients(lat, e, 0, HighestWeight::fundamental(2), {}).empty());
  const auto fund = recoupling_coefficients(lat, e, 0, HighestWeight::fundamental(2), {b});
  bool trivial_seen = false;
  for (const auto& t : fund) trivial_seen |= t.beta == HighestWeight::trivial(2);
  CHECK(trivial_seen);

  const auto p = power_sum_to_characters({1, 1}, 2);
  long total = 0;
  for (const auto& [beta, m] : p) total += m * weyl_dim(beta).get_si();
  CHECK(total == 4);
}

TEST_CASE("coefficientwise master equation") {
  for (const auto& ext : std::vector<std::vector<int>>{{1, 1}, {1, 2}}) {
    const auto lat = build_lattice(2, ext);
    const auto g = default_gauge(lat);
    for (int N : {1, 2}) {
      int nontrivial = 0;
      for (const auto& loops : families(lat)) {
        for (const auto& alpha : decorations(lat.num_plaquettes(), N, 1)) {
          for (int e = 0; e < lat.num_edges(); ++e) {
            const auto r = master_equation_residual(lat, g, loops, alpha, e);
            CHECK(r.residual < 1e-8);
            if (!r.terms.empty()) ++nontrivial;

            // every term references a family produced by the surgery or recoupling combinatorics
            const auto s = surgery_multisets(lat, loops, e);
            std::vector<std::vector<LoopWord>> allowed;
            std::vector<LoopWord> reduced;
            for (const auto& l : loops) reduced.push_back(cyclically_reduce(l));
            allowed.push_back(reduced);
            for (const auto* set : {&s.split_plus, &s.split_minus, &s.merge_plus, &s.merge_minus})
              for (const auto& x : *set) allowed.push_back(x.family);
            for (int p : lat.plaquettes_containing(e))
              for (const auto& t : recoupling_coefficients(lat, e, p, alpha[p], reduced)) allowed.push_back(t.family);
            for (const auto& t : r.terms) {
              CHECK(std::find(allowed.begin(), allowed.end(), t.family) != allowed.end());
              int changed = 0;
              for (std::size_t p = 0; p < alpha.size(); ++p) changed += !(t.alpha[p] == alpha[p]);
              CHECK(changed <= 1);
            }
          }
        }
      }
      CHECK(nontrivial > 0);
    }
  }
}

TEST_CASE("Wilson identity by Monte Carlo") {
  const auto lat = build_lattice(2, {1, 1});
  const auto r = wilson_master_residual(lat, {lat.plaquette(0).boundary}, 0.3, 2, 100000, 77);
  CHECK(std::abs(r.residual) <= 3.0 * r.stderr + 1e-12 * r.scale);
  const auto empty = wilson_master_residual(lat, {}, 0.3, 2, 1000, 78);
  CHECK(empty.residual == 0.0);
}
