// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>
#include <vector>

#include "ymx/action.hpp"
#include "ymx/lattice.hpp"
#include "ymx/rational.hpp"
#include "ymx/state_sum.hpp"
#include "ymx/tensor_network.hpp"

namespace ymx {

// One term of the gauge-fixed plaquette character: coefficient times the diagram-decorated
// product of edge tensors along the gauge-fixed boundary word.
struct LocalResolution {
  int plaquette = 0;
  HighestWeight label;
  int id = 0;
  Rational coefficient = 1;
  WalledBrauerDiagram tau;
  // Per incidence in boundary order: "e<id>" ("^-1" when traversed backwards), then slot types V / V*.
  std::vector<std::string> legs;
  // Canonical boundary-channel tuple: legs joined with ';' then '|' and the diagram pattern.
  std::string channel;
};

struct ResolutionOptions {
  int probes = 20;
  double tolerance = 1e-8;
  std::uint64_t seed = 7;
};

std::vector<LocalResolution> local_resolutions(const Lattice& lattice, const GaugeFixing& gauge, int p,
                                               const HighestWeight& label, const ResolutionOptions& opts = {});

// Sum of coefficients over resolutions whose channel equals `channel`.
Rational plaquette_amplitude(const std::vector<LocalResolution>& resolutions, const std::string& channel);

// Weingarten pairing sum for one edge with plain legs (row, col) and conjugate legs (row, col).
Rational edge_kernel(const std::vector<std::pair<int, int>>& plain, const std::vector<std::pair<int, int>>& conjugate,
                     int N);

// Dense factors of the channel model for one decoration and loop family.
struct FactorTable {
  int N = 1;
  std::vector<DenseTensor> amplitudes;  // one per plaquette with a nontrivial label
  std::map<int, DenseTensor> kernels;   // non-tree edge -> moment tensor on its legs
  std::vector<int> unbalanced_edges;    // kernels that vanish identically
  double scalar = 1.0;                  // N per loop that gauge fixes to the empty word
};

FactorTable build_factor_table(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                               const PlaquetteDecoration& alpha);

// Sum over channel fields of prod A_p prod K_e.
double spin_foam_sum(const FactorTable& table);
double spin_foam_sum(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                     const PlaquetteDecoration& alpha);

struct DefectRatioResult {
  double value = 0.0;
  double z_loops = 0.0;
  double z_background = 0.0;
  double shell_loops = 0.0;
  double shell_background = 0.0;
  double shell = 0.0;
  std::vector<int> defect_support;
  long decorations = 0;
  long balanced = 0;
};

DefectRatioResult defect_ratio(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                               const ActionSpec& action, int N, const Truncation& trunc = {});

}  // namespace ymx
