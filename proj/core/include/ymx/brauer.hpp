// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "ymx/algebra.hpp"
#include "ymx/rational.hpp"

namespace ymx {

// Walled Brauer diagram on n covariant and m contravariant slots.
// Slots 0..n-1 are covariant, n..n+m-1 contravariant. Vertex ids: top(s) = s (output side),
// bottom(s) = n+m+s (input side). Vertical strands stay on one side of the wall; horizontal
// strands join a covariant and a contravariant slot on the same row.
class WalledBrauerDiagram {
 public:
  WalledBrauerDiagram() = default;
  WalledBrauerDiagram(int n, int m, std::vector<int> mate);

  static WalledBrauerDiagram identity(int n, int m);
  // Diagrams are in bijection with S_{n+m} via X = {top cov, bottom contra} -> Y = {bottom cov, top contra}.
  static WalledBrauerDiagram from_bijection(int n, int m, const Permutation& pi);
  // sigma acts on covariant slots, pi on contravariant slots: top k joins bottom sigma(k).
  static WalledBrauerDiagram permutation(const Permutation& sigma, const Permutation& pi);
  // e_{i,j}: top and bottom caps joining covariant slot i and contravariant slot j (0-based, j in [0,m)).
  static WalledBrauerDiagram contraction(int n, int m, int i, int j);

  int n() const { return n_; }
  int m() const { return m_; }
  int slots() const { return n_ + m_; }
  int top(int s) const { return s; }
  int bottom(int s) const { return slots() + s; }
  bool is_top(int v) const { return v < slots(); }
  int slot_of(int v) const { return v < slots() ? v : v - slots(); }
  bool is_covariant_slot(int s) const { return s < n_; }
  int mate(int v) const { return mate_[v]; }
  const std::vector<int>& mates() const { return mate_; }

  int horizontal_strands() const;
  bool is_permutation() const { return horizontal_strands() == 0; }
  // Trace of rho_N(D): N^{cycles after joining top(s) to bottom(s)}.
  int closed_cycles() const;
  std::string str() const;

  friend bool operator==(const WalledBrauerDiagram&, const WalledBrauerDiagram&) = default;
  friend auto operator<=>(const WalledBrauerDiagram& a, const WalledBrauerDiagram& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    return a.mate_ <=> b.mate_;
  }

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<int> mate_;
};

struct BrauerProduct {
  WalledBrauerDiagram diagram;
  int loops = 0;
};

// D1 stacked above D2 (matrix product rho(D1) rho(D2) = N^loops rho(D1 o D2)).
BrauerProduct compose(const WalledBrauerDiagram& d1, const WalledBrauerDiagram& d2);

std::vector<WalledBrauerDiagram> enumerate_walled(int n, int m);

// One Kronecker delta per strand between the two endpoint index slots.
struct IndexConstraint {
  bool first_top;
  int first_slot;
  bool second_top;
  int second_slot;
};
std::vector<IndexConstraint> index_pattern(const WalledBrauerDiagram& d);

// Dense 0/1 matrix of rho_N(D) on (C^N)^{n+m}; rows are top multi-indices, slot 0 most significant.
Eigen::MatrixXd dense_matrix(const WalledBrauerDiagram& d, int N, long cap = 20000);

// Element of the walled Brauer algebra with delta = N.
using BrauerElement = std::map<WalledBrauerDiagram, Rational>;
BrauerElement multiply(const BrauerElement& a, const BrauerElement& b, int N);
Eigen::MatrixXd dense_matrix(const BrauerElement& x, int n, int m, int N, long cap = 20000);

// Total contraction-coevaluation element A = sum_{i,j} e_{i,j}.
BrauerElement contraction_sum(int n, int m);

long dense_dimension(int N, int slots);

}  // namespace ymx
