// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ymx/algebra.hpp"
#include "ymx/brauer.hpp"
#include "ymx/rational.hpp"

namespace ymx {

using Complex = std::complex<double>;

// Rational U(N) weight [lambda+, lambda-]_N.
class HighestWeight {
 public:
  HighestWeight() = default;
  HighestWeight(Partition plus, Partition minus, int N);
  static HighestWeight trivial(int N) { return HighestWeight({}, {}, N); }
  static HighestWeight fundamental(int N) { return HighestWeight(Partition{1}, {}, N); }
  static HighestWeight antifundamental(int N) { return HighestWeight({}, Partition{1}, N); }
  static HighestWeight from_signature(const std::vector<int>& signature);
  // For N = 1: the character z^k.
  static HighestWeight u1(int k);

  const Partition& plus() const { return plus_; }
  const Partition& minus() const { return minus_; }
  int N() const { return N_; }
  int n() const { return plus_.size(); }
  int m() const { return minus_.size(); }
  int slots() const { return n() + m(); }
  int charge() const { return n() - m(); }
  bool is_trivial() const { return plus_.empty() && minus_.empty(); }
  // Nonincreasing signature of length N.
  std::vector<int> signature() const;
  HighestWeight dual() const { return HighestWeight(minus_, plus_, N_); }
  std::string str() const;

  friend bool operator==(const HighestWeight&, const HighestWeight&) = default;
  friend auto operator<=>(const HighestWeight& a, const HighestWeight& b) {
    if (auto c = a.N_ <=> b.N_; c != 0) return c;
    if (auto c = a.slots() <=> b.slots(); c != 0) return c;
    if (auto c = a.plus_ <=> b.plus_; c != 0) return c;
    return a.minus_ <=> b.minus_;
  }

 private:
  Partition plus_;
  Partition minus_;
  int N_ = 1;
};

// Admissible weights with |lambda+| + |lambda-| <= s, ordered by total size. For N = 1 the
// box is |k| <= s.
std::vector<HighestWeight> weights_in_box(int N, int s);

BigInt weyl_dim(const HighestWeight& w);

// Quadratic Casimir for the Hilbert-Schmidt inner product: sum_i s_i (s_i + N + 1 - 2i).
long casimir(const HighestWeight& w);

// chi at a unitary with the given eigenvalues. Uses the determinant ratio when the eigenvalues
// are well separated and the division-free Jacobi-Trudi form otherwise.
Complex weyl_character(const HighestWeight& w, const std::vector<Complex>& eigenvalues);
Complex weyl_character_bialternant(const HighestWeight& w, const std::vector<Complex>& eigenvalues);
Complex weyl_character_jacobi_trudi(const HighestWeight& w, const std::vector<Complex>& eigenvalues);

// chi(U) from power traces via Newton's identities and Jacobi-Trudi; no eigensolver.
Complex character_of_matrix(const HighestWeight& w, const Eigen::MatrixXcd& U);
std::vector<Complex> unitary_eigenvalues(const Eigen::MatrixXcd& U);

// U^{(x)n} (x) conj(U)^{(x)m}, slot 0 most significant.
Eigen::MatrixXcd rho_nm(const Eigen::MatrixXcd& U, int n, int m);

struct MixedTensorOperator {
  int n = 0;
  int m = 0;
  int N = 1;
  Eigen::MatrixXd entries;
  double tolerance = 1e-9;
};

MixedTensorOperator build_A(int n, int m, int N, long cap = 20000);

// Central idempotent of C[S_n x S_m] for (lambda, mu), as a walled Brauer element.
BrauerElement symmetric_idempotent(const Partition& lambda, const Partition& mu);

enum class ExpansionMethod { ExactLift, LeastSquares };

struct ProjectorData {
  HighestWeight weight;
  MixedTensorOperator projector;
  // Distinct nonzero eigenvalues of A restricted to the isotypic block.
  std::vector<double> contraction_spectrum;
  std::vector<std::pair<WalledBrauerDiagram, Rational>> expansion;
  // f^lambda f^mu: copies of the U(N) irreducible in the isotypic block, so Tr(P rho(U)) = multiplicity * chi(U).
  BigInt multiplicity = 1;
  ExpansionMethod method = ExpansionMethod::ExactLift;
  bool exact = true;
  double kernel_vs_product = 0.0;
  double reconstruction_error = 0.0;
};

struct ProjectorOptions {
  long dense_cap = 20000;
  double spectral_tolerance = 1e-7;
  double agreement_tolerance = 1e-8;
  double reconstruction_tolerance = 1e-9;
  ExpansionMethod method = ExpansionMethod::ExactLift;
};

// Cached per (weight, options.method); safe for concurrent use.
std::shared_ptr<const ProjectorData> isotypic_projector(const HighestWeight& w, const ProjectorOptions& opts = {});

// Coefficients c(tau) with P = sum_tau c(tau) rho_N(tau).
std::vector<std::pair<WalledBrauerDiagram, Rational>> expand_projector_in_diagrams(
    const HighestWeight& w, ExpansionMethod method = ExpansionMethod::ExactLift);

// Tr(P rho_{n,m}(U)) / multiplicity.
Complex projector_character(const HighestWeight& w, const Eigen::MatrixXcd& U);

}  // namespace ymx
