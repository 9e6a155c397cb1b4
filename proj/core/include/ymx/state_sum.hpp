// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ymx/action.hpp"
#include "ymx/lattice.hpp"
#include "ymx/rational.hpp"
#include "ymx/unitary_rep.hpp"

namespace ymx {

struct QuadratureResult {
  double value = 0.0;
  long points_per_axis = 0;
  bool converged = false;
};

// <exp(beta Re Tr U), chi_lambda> by Weyl integration on the torus, doubling the grid until the
// change falls below rel_tol relative to the trivial coefficient.
QuadratureResult wilson_coefficient_quadrature(const HighestWeight& w, double beta, double rel_tol = 1e-10,
                                               long max_points = 1L << 22);

// <Q, chi_lambda>; heat kernel uses c2(lambda) = sum s_i (s_i + N + 1 - 2i). Cached.
double action_coeff(const HighestWeight& w, const ActionSpec& action, int N, int plaquette = 0);

using PlaquetteDecoration = std::vector<HighestWeight>;

double kappa(const PlaquetteDecoration& alpha, const ActionSpec& action, int N);

enum class TopEngine { Abelian, Exact, Network };
std::string top_engine_name(TopEngine e);

struct TopCoeffResult {
  double value = 0.0;
  Rational exact = 0;
  bool is_exact = false;
  TopEngine engine = TopEngine::Exact;
};

struct TopCoeffOptions {
  double max_work = 1e6;
  bool use_cache = true;
};

// Integral of prod Tr U_loop prod chi_{alpha_p}(U_p) after gauge fixing along the tree.
TopCoeffResult topological_coeff(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                                 const PlaquetteDecoration& alpha, const TopCoeffOptions& opts = {});
// Same, with explicit plaquette boundary words (any closed representative of each boundary).
TopCoeffResult topological_coeff(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                                 const PlaquetteDecoration& alpha, const std::vector<LoopWord>& boundaries,
                                 const TopCoeffOptions& opts = {});

struct CacheStats {
  long hits = 0;
  long misses = 0;
  long size = 0;
};
CacheStats topological_cache_stats();
void clear_topological_cache();

struct Truncation {
  int box = -1;  // max |lambda+| + |lambda-| per plaquette; -1 selects 3 for N >= 2 and 20 for N = 1
  double floor = 1e-14;
  int box_for(int N) const { return box >= 0 ? box : (N == 1 ? 20 : 3); }
};

struct StateSumResult {
  double value = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double shell_numerator = 0.0;
  double shell_denominator = 0.0;
  double shell = 0.0;  // first-order effect of the last shell on the ratio
  long decorations = 0;
  long balanced = 0;
  int box = 0;
  CacheStats cache;
};

// Enumerates plaquette decorations in the truncation box, calling `visit(alpha, kappa, is_last_shell)`
// for every decoration that can be Haar balanced with the given gauge-fixed loops.
void for_each_balanced_decoration(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                                  const ActionSpec& action, int N, const Truncation& trunc,
                                  const std::function<void(const PlaquetteDecoration&, double, bool)>& visit,
                                  long* total = nullptr);

StateSumResult wilson_expectation_statesum(const Lattice& lattice, const GaugeFixing& gauge,
                                           const std::vector<LoopWord>& loops, const ActionSpec& action, int N,
                                           const Truncation& trunc = {});

}  // namespace ymx
