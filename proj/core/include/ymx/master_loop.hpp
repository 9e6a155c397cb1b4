// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "ymx/lattice.hpp"
#include "ymx/montecarlo.hpp"
#include "ymx/rational.hpp"
#include "ymx/state_sum.hpp"

namespace ymx {

enum class SurgeryKind { SplitPlus, SplitMinus, MergePlus, MergeMinus, DeformPlus, DeformMinus };
std::string surgery_kind_name(SurgeryKind k);

struct SurgeryResult {
  SurgeryKind kind = SurgeryKind::SplitPlus;
  std::vector<LoopWord> family;  // reduced loops
  int multiplicity = 1;
  int edge = 0;
  int loop_i = -1;
  int loop_j = -1;     // second loop for mergers
  int x = -1;          // active position in loop_i
  int y = -1;          // active position in loop_j (mergers, splittings) or -1
  int plaquette = -1;  // deformations
};

struct SurgerySets {
  std::vector<SurgeryResult> split_plus, split_minus, merge_plus, merge_minus, deform_plus, deform_minus;
  int occurrences = 0;  // sum_i m_i(e)
};

// Splittings and mergers at edge e (ordered pairs), plus deformations by every plaquette containing e.
SurgerySets surgery_multisets(const Lattice& lattice, const std::vector<LoopWord>& loops, int e);
SurgerySets loop_surgeries(const std::vector<LoopWord>& loops, int e);

// Orthonormal basis of u(N) for <X, Y> = Tr(X Y^*).
std::vector<Eigen::MatrixXcd> lie_algebra_basis(int N);

struct MagicResiduals {
  double sum_of_squares = 0.0;  // |sum X^2 + N I|
  double sandwich = 0.0;        // |sum X A X + Tr(A) I|
  double trace_pairs = 0.0;     // |sum Tr(XA) Tr(XB) + Tr(AB)|
};
MagicResiduals magic_formula_residuals(int N, const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

using Configuration = std::vector<Eigen::MatrixXcd>;

std::complex<double> wilson_loops_value(const std::vector<LoopWord>& loops, const Configuration& U);

struct PointwiseLaplacian {
  std::complex<double> direct = 0.0;   // sum_a second Lie derivatives
  std::complex<double> surgery = 0.0;  // -N sum m_i W + S- - S+ + M- - M+
  double difference = 0.0;
};
PointwiseLaplacian loop_laplacian_pointwise(const std::vector<LoopWord>& loops, int e, const Configuration& U);

struct RecouplingTerm {
  int edge = 0;
  int plaquette = 0;
  std::vector<LoopWord> family;  // loop family after the loop-plaquette merger
  HighestWeight beta;
  Rational coefficient = 0;
  int sources = 0;  // raw (tau, cycle, x, copy) contributions merged into this term
};

// Terms b with I_mix(e, p) = sum b * W_{family}(alpha with alpha_p replaced by beta).
std::vector<RecouplingTerm> recoupling_coefficients(const Lattice& lattice, int e, int p, const HighestWeight& alpha_p,
                                                    const std::vector<LoopWord>& loops);

// Integer coefficients m_beta with prod_k Tr(g^{k}) = sum m_beta chi_beta(g).
std::vector<std::pair<HighestWeight, long>> power_sum_to_characters(const std::vector<int>& powers, int N);

struct MasterTerm {
  std::string kind;  // "diagonal", "split+", ..., "recoupling"
  std::vector<LoopWord> family;
  PlaquetteDecoration alpha;
  Rational coefficient = 0;
  TopCoeffResult value;
};

struct MasterResidual {
  double residual = 0.0;
  Rational exact = 0;
  bool is_exact = true;
  std::vector<MasterTerm> terms;
};

MasterResidual master_equation_residual(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                                        const PlaquetteDecoration& alpha, int e);

struct WilsonMasterResult {
  double residual = 0.0;
  double stderr = 0.0;
  long samples = 0;
  int terms = 0;
  double scale = 0.0;  // N |L|, magnitude of the leading coefficient
};

// Fully summed Wilson identity N|L| phi(L) = (beta/2)(D- - D+) + N (S- - S+) + (1/N)(M- - M+), residual by Monte Carlo.
WilsonMasterResult wilson_master_residual(const Lattice& lattice, const std::vector<LoopWord>& loops, double beta, int N,
                                          long samples, std::uint64_t seed, const McOptions& opts = {});

}  // namespace ymx
