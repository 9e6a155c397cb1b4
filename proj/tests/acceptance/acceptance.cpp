// SPDX-License-Identifier: MIT
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ymx/channel.hpp"
#include "ymx/master_loop.hpp"
#include "ymx/montecarlo.hpp"
#include "ymx/state_sum.hpp"
#include "ymx/surface.hpp"
#include "ymx/unitary_rep.hpp"
#include "ymx/weingarten.hpp"

using namespace ymx;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  int failures = 0;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures++ < 5) detail << " [fail: " << what << "]";
  }
};

Word word(std::initializer_list<std::pair<int, int>> letters) {
  Word w;
  for (auto [id, e] : letters) w.push_back({id, e});
  return w;
}

WordSpec spec_of(std::vector<Word> words, std::vector<HighestWeight> labels) {
  WordSpec s;
  s.words = std::move(words);
  s.labels = std::move(labels);
  return s;
}

ActionSpec action(ActionKind kind, double coupling) {
  ActionSpec a;
  a.kind = kind;
  a.coupling = coupling;
  return a;
}

std::vector<PlaquetteDecoration> decorations(int P, const std::vector<HighestWeight>& ws) {
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

std::vector<std::vector<LoopWord>> loop_suite(const Lattice& lat) {
  const auto b0 = lat.plaquette(0).boundary;
  std::vector<std::vector<LoopWord>> out{{}, {b0}, {inverse_word(b0)}, {b0, b0}, {b0, inverse_word(b0)}};
  if (lat.num_plaquettes() > 1) {
    const auto b1 = lat.plaquette(1).boundary;
    out.push_back({b1});
    out.push_back({b0, inverse_word(b1)});
  }
  return out;
}

// Fixed suite for word integrals and surface bookkeeping.
std::vector<std::pair<std::string, WordSpec>> word_suite() {
  const Word x = word({{0, 1}}), xi = word({{0, -1}});
  const Word comm = word({{0, 1}, {1, 1}, {0, -1}, {1, -1}});
  const auto f2 = HighestWeight::fundamental(2);
  const auto a2 = HighestWeight::antifundamental(2);
  const auto adj2 = HighestWeight({1}, {1}, 2);
  const auto adj3 = HighestWeight({1}, {1}, 3);
  const auto sym2 = HighestWeight({2}, {}, 2);
  const auto alt2 = HighestWeight({1, 1}, {}, 2);
  return {
      {"x, x^-1 fundamental N=2", spec_of({x, xi}, {f2, f2})},
      {"x fundamental N=2", spec_of({x}, {f2})},
      {"commutator adjoint N=2", spec_of({comm}, {adj2})},
      {"commutator adjoint N=3", spec_of({comm}, {adj3})},
      {"commutator fundamental N=2", spec_of({comm}, {f2})},
      {"commutator antifundamental N=2", spec_of({comm}, {a2})},
      {"x x, x^-1 x^-1 fundamental N=2", spec_of({word({{0, 1}, {0, 1}}), word({{0, -1}, {0, -1}})}, {f2, f2})},
      {"x, x^-1 mixed symmetry N=3", spec_of({x, xi}, {HighestWeight({2, 1}, {}, 3), HighestWeight({2, 1}, {}, 3)})},
      {"x, x^-1 symmetric vs antisymmetric N=2", spec_of({x, xi}, {sym2, alt2})},
      {"x y, y^-1 x^-1 fundamental N=2", spec_of({word({{0, 1}, {1, 1}}), word({{1, -1}, {0, -1}})}, {f2, f2})},
      {"x y, x^-1, y^-1 fundamental N=2", spec_of({word({{0, 1}, {1, 1}}), xi, word({{1, -1}})}, {f2, f2, f2})},
      {"x, x^-1 adjoint N=2", spec_of({x, xi}, {adj2, adj2})},
  };
}

bool trace_only(const WordSpec& s) {
  for (const auto& l : s.labels)
    if (!(l == HighestWeight::fundamental(l.N()))) return false;
  return true;
}

// Calls visit(tau, sigma) for every diagram choice per site and pairing per letter.
void for_each_term(const SpecLayout& layout, const std::function<void(const std::vector<int>&, const std::vector<int>&)>& visit) {
  if (!layout.balanced) return;
  const int sites = static_cast<int>(layout.sites.size());
  const int letters = static_cast<int>(layout.plus.size());
  std::vector<int> tau_size(sites), sigma_size(letters);
  for (int s = 0; s < sites; ++s) tau_size[s] = static_cast<int>(layout.expansions[layout.sites[s].first].size());
  for (int l = 0; l < letters; ++l) sigma_size[l] = static_cast<int>(letter_pairings(static_cast<int>(layout.plus[l].size())).size());
  std::vector<int> tau(sites, 0), sigma(letters, 0);
  while (true) {
    visit(tau, sigma);
    int k = letters - 1;
    while (k >= 0 && ++sigma[k] == sigma_size[k]) sigma[k--] = 0;
    if (k >= 0) continue;
    int s = sites - 1;
    while (s >= 0 && ++tau[s] == tau_size[s]) tau[s--] = 0;
    if (s < 0) break;
  }
}

Outcome criterion1() {
  Outcome o;
  int checked = 0;
  for (int n = 1; n <= 4; ++n) {
    const auto perms = all_permutations(n);
    for (int N = 1; N <= 5; ++N) {
      const WgTable table(n, N);
      oracle::RationalMatrix W(perms.size(), std::vector<Rational>(perms.size()));
      for (std::size_t i = 0; i < perms.size(); ++i)
        for (std::size_t j = 0; j < perms.size(); ++j) W[i][j] = table.value(perms[i].inverse().compose(perms[j]));
      const auto G = oracle::gram_matrix(n, N);
      o.require(W == oracle::pseudoinverse(G), "Wg n=" + std::to_string(n) + " N=" + std::to_string(N));
      if (n <= N) {
        const auto WG = oracle::multiply(W, G);
        bool identity = true;
        for (std::size_t i = 0; i < WG.size(); ++i)
          for (std::size_t j = 0; j < WG.size(); ++j) identity = identity && WG[i][j] == (i == j ? 1 : 0);
        o.require(identity, "Gram n=" + std::to_string(n) + " N=" + std::to_string(N));
      }
      ++checked;
    }
  }
  o.detail << checked << " tables exact";
  return o;
}

Outcome criterion2() {
  Outcome o;
  double worst = 0.0;
  int weights = 0;
  for (int N = 2; N <= 4; ++N) {
    Rng rng(2024, N);
    for (const auto& w : weights_in_box(N, 3)) {
      ++weights;
      const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(N, N);
      const auto d = projector_character(w, I);
      o.require(std::abs(d - Complex(weyl_dim(w).get_d())) < 1e-9 && weyl_dim(w) > 0, "dimension " + w.str());
      for (int t = 0; t < 100; ++t) {
        const auto U = haar_sample(N, rng);
        const double diff = std::abs(projector_character(w, U) - weyl_character(w, unitary_eigenvalues(U)));
        worst = std::max(worst, diff);
        if (diff > 1e-9) o.require(false, "character " + w.str());
      }
    }
  }
  o.detail << weights << " weights, max difference " << worst;
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst_z = 0.0;
  std::uint64_t seed = 300;
  for (const auto& [name, spec] : word_suite()) {
    const auto exact = character_word_integral(spec);
    const auto surf = surface_expansion(spec);
    o.require(exact.is_exact && surf.is_exact && surf.total == exact.exact, "surface " + name);
    const auto mc = mc_word_moment(spec, 1000000, ++seed);
    const double diff = std::abs(mc.value - Complex(exact.value));
    const double z = diff / std::max(mc.stderr, 1e-300);
    if (mc.stderr > 0) worst_z = std::max(worst_z, z);
    o.require(diff <= 3.0 * mc.stderr + 1e-12, "mc " + name);
  }
  const auto x2 = character_word_integral(word_suite()[2].second);
  const auto x3 = character_word_integral(word_suite()[3].second);
  o.require(x2.exact == Rational(1, 3) && x3.exact == Rational(1, 8), "commutator values");
  o.detail << "12 specs, max |z| " << worst_z;
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto lat = build_lattice(2, {1, 1});
  const auto g = default_gauge(lat);
  double worst = 0.0;
  for (double beta : {0.5, 1.0, 2.0}) {
    const auto r = wilson_expectation_statesum(lat, g, {lat.plaquette(0).boundary}, action(ActionKind::Wilson, beta), 1, {.box = 20});
    const double ref = oracle::bessel_i_quadrature(1, beta) / oracle::bessel_i_quadrature(0, beta);
    worst = std::max(worst, std::abs(r.value - ref));
    o.require(std::abs(r.value - ref) <= 1e-6, "beta " + std::to_string(beta));
  }
  o.detail << "max difference " << worst;
  return o;
}

Outcome criterion5() {
  Outcome o;
  double worst_exact = 0.0, worst_z = 0.0;
  int cases = 0;
  std::uint64_t seed = 500;
  for (const auto& ext : std::vector<std::vector<int>>{{1, 1}, {1, 2}, {2, 2}}) {
    const auto lat = build_lattice(2, ext);
    const auto g = default_gauge(lat);
    const std::vector<LoopWord> loops{lat.plaquette(0).boundary};
    for (int N : {1, 2}) {
      for (const auto& a : {action(ActionKind::Wilson, 0.3), action(ActionKind::Wilson, 0.5),
                            action(ActionKind::HeatKernel, 0.5), action(ActionKind::HeatKernel, 1.0)}) {
        const std::string tag = std::to_string(ext[0]) + "x" + std::to_string(ext[1]) + " N=" + std::to_string(N) + " " +
                                action_kind_name(a.kind) + " " + std::to_string(a.coupling);
        const auto s = wilson_expectation_statesum(lat, g, loops, a, N);
        const auto d = defect_ratio(lat, g, loops, a, N);
        const double sd = std::abs(s.value - d.value);
        worst_exact = std::max(worst_exact, sd);
        o.require(sd <= 1e-6 + s.shell + d.shell, "spinfoam " + tag);
        double shell = s.shell;
        if (a.kind == ActionKind::Wilson) {
          const auto e = epe_wilson_expectation(lat, g, loops, a.coupling, N, {.kmax = 10});
          const double se = std::abs(s.value - e.value);
          worst_exact = std::max(worst_exact, se);
          o.require(se <= 1e-6 + s.shell + e.shell, "epe " + tag);
        }
        McOptions mo;
        long samples = 1000000;
        if (a.kind == ActionKind::HeatKernel) {
          mo.metropolis = true;
          samples = 300000;
        }
        const auto mc = mc_lattice_expectation(lat, loops, a, N, samples, ++seed, mo);
        const double diff = std::abs(mc.value.real() - s.value);
        worst_z = std::max(worst_z, diff / mc.stderr);
        o.require(diff <= 3.0 * mc.stderr + shell, "mc " + tag);
        ++cases;
      }
    }
  }
  o.detail << cases << " cases, max exact-engine difference " << worst_exact << ", max MC |z| " << worst_z;
  return o;
}

Outcome criterion6() {
  Outcome o;
  long compared = 0, kernels = 0;
  double worst = 0.0;
  for (const auto& ext : std::vector<std::vector<int>>{{1, 1}, {1, 2}}) {
    const auto lat = build_lattice(2, ext);
    const auto g = default_gauge(lat);
    for (int N : {1, 2}) {
      const Truncation trunc;
      const auto alphas = decorations(lat.num_plaquettes(), weights_in_box(N, trunc.box_for(N)));
      for (const auto& loops : loop_suite(lat)) {
        std::set<int> support;
        for (const auto& w : loops)
          for (const auto& l : gauge_fix_word(w, g)) support.insert(l.id);
        for (const auto& alpha : alphas) {
          const auto with = build_factor_table(lat, g, loops, alpha);
          const double sf = spin_foam_sum(with);
          const double tc = topological_coeff(lat, g, loops, alpha).value;
          const double diff = std::abs(sf - tc);
          worst = std::max(worst, diff);
          o.require(diff <= 1e-9 * std::max(1.0, std::abs(tc)), "reconstruction");
          ++compared;
          if (loops.empty()) continue;
          const auto without = build_factor_table(lat, g, {}, alpha);
          for (const auto& [e, k] : without.kernels) {
            if (support.count(e) != 0) continue;
            const auto it = with.kernels.find(e);
            o.require(it != with.kernels.end() && it->second.vars == k.vars && it->second.data == k.data, "off-support kernel");
            ++kernels;
          }
        }
      }
    }
  }
  o.detail << compared << " decorations, max difference " << worst << ", " << kernels << " off-support kernels identical";
  return o;
}

Outcome criterion7() {
  Outcome o;
  // (a)
  double magic = 0.0;
  for (int N = 1; N <= 6; ++N) {
    for (int t = 0; t < 5; ++t) {
      const Eigen::MatrixXcd A = Eigen::MatrixXcd::Random(N, N), B = Eigen::MatrixXcd::Random(N, N);
      const auto r = magic_formula_residuals(N, A, B);
      magic = std::max({magic, r.sum_of_squares, r.sandwich, r.trace_pairs});
    }
  }
  o.require(magic < 1e-12, "magic formulas");
  // (b)
  double pointwise = 0.0;
  for (const auto& ext : std::vector<std::vector<int>>{{1, 1}, {1, 2}}) {
    const auto lat = build_lattice(2, ext);
    for (int N = 1; N <= 3; ++N) {
      Rng rng(700 + ext[1], N);
      for (const auto& loops : loop_suite(lat)) {
        for (int e = 0; e < lat.num_edges(); ++e) {
          for (int t = 0; t < 50; ++t) {
            Configuration U;
            for (int k = 0; k < lat.num_edges(); ++k) U.push_back(haar_sample(N, rng));
            pointwise = std::max(pointwise, loop_laplacian_pointwise(loops, e, U).difference);
          }
        }
      }
    }
  }
  o.require(pointwise < 1e-10, "pointwise Laplacian");
  // (c)
  double coefficient = 0.0;
  long cases = 0, nontrivial = 0;
  for (const auto& ext : std::vector<std::vector<int>>{{1, 1}, {1, 2}}) {
    const auto lat = build_lattice(2, ext);
    const auto g = default_gauge(lat);
    for (int N : {1, 2}) {
      for (const auto& loops : loop_suite(lat)) {
        for (const auto& alpha : decorations(lat.num_plaquettes(), weights_in_box(N, 2))) {
          for (int e = 0; e < lat.num_edges(); ++e) {
            const auto r = master_equation_residual(lat, g, loops, alpha, e);
            coefficient = std::max(coefficient, r.residual);
            ++cases;
            nontrivial += !r.terms.empty();
          }
        }
      }
    }
  }
  o.require(coefficient < 1e-8 && nontrivial > 0, "coefficientwise residual");
  // (d)
  double worst_z = 0.0;
  std::uint64_t seed = 770;
  for (const auto& ext : std::vector<std::vector<int>>{{1, 1}, {2, 2}}) {
    const auto lat = build_lattice(2, ext);
    for (double beta : {0.3, 0.5}) {
      const auto r = wilson_master_residual(lat, {lat.plaquette(0).boundary}, beta, 2, 1000000, ++seed);
      worst_z = std::max(worst_z, std::abs(r.residual) / r.stderr);
      o.require(std::abs(r.residual) <= 3.0 * r.stderr + 1e-12 * r.scale, "Wilson identity beta " + std::to_string(beta));
    }
  }
  o.detail << "magic " << magic << ", pointwise " << pointwise << ", coefficientwise " << coefficient << " over " << cases
           << " cases (" << nontrivial << " nonvacuous), Wilson MC max |z| " << worst_z;
  return o;
}

Outcome criterion8() {
  Outcome o;
  long surfaces = 0, maps = 0;
  for (const auto& [name, spec] : word_suite()) {
    const auto layout = build_layout(spec);
    const bool fundamental = trace_only(spec);
    Rational weighted = 0;
    for_each_term(layout, [&](const std::vector<int>& tau, const std::vector<int>& sigma) {
      const auto t = build_glued_surface(layout, tau, sigma);
      const auto& e = t.euler;
      o.require(e.chi == e.V - e.E + e.F, "chi " + name);
      o.require(t.capped_euler.chi == e.chi + e.boundary, "capped chi " + name);
      o.require(t.capped_euler.chi == t.capped_euler.V - t.capped_euler.E + t.capped_euler.F, "capped cells " + name);
      if (fundamental) {
        o.require(t.h == 0, "h " + name);
        Rational nk = 1;
        for (int k = 0; k < t.index_cycles; ++k) nk *= spec.N();
        weighted += t.coefficient * nk;
      }
      ++surfaces;
    });
    if (!fundamental) continue;
    const auto dbm = dbm_expansion(spec);
    std::vector<int> n_letters(spec.num_letters(), 0);
    for (const auto& w : spec.words)
      for (const auto& l : w)
        if (l.exponent > 0) ++n_letters[l.id];
    int twice = 0;
    for (int n : n_letters) twice += 2 * n;
    for (const auto& m : dbm.maps) {
      int lengths = 0;
      for (const auto& mu : m.mu) lengths += mu.length();
      o.require(m.E == twice, "E " + name);
      o.require(m.F == m.k + lengths, "F " + name);
      o.require(m.chi == m.V - m.E + m.F, "map chi " + name);
      Rational nv = 1;
      for (int k = 0; k < m.V; ++k) nv *= spec.N();
      Rational wg_product = 1;
      for (const auto& mu : m.mu) wg_product *= wg(mu, spec.N());
      o.require(m.raw_weight == wg_product * nv, "K_N " + name);
      ++maps;
    }
    const auto exact = character_word_integral(spec);
    o.require(dbm.total == exact.exact && weighted == exact.exact, "trace-only total " + name);
  }
  o.detail << surfaces << " surfaces, " << maps << " maps";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
  bool all = true;
  for (const auto& [id, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s (%s; %.1f s)\n", id, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(), seconds);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
