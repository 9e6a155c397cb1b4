// SPDX-License-Identifier: MIT
#pragma once

#include <memory>
#include <vector>

#include "ymx/weingarten.hpp"

namespace ymx {

// Dense tensor whose legs all have dimension d; data is row-major with vars[0] most significant.
struct DenseTensor {
  std::vector<int> vars;
  std::vector<double> data;
};

// Closed network of dense tensors; every variable must occur on exactly two legs overall.
class TensorNetwork {
 public:
  explicit TensorNetwork(int dim, std::size_t max_entries = std::size_t(1) << 25) : dim_(dim), max_entries_(max_entries) {}
  // Repeated variables within one tensor are reduced to the diagonal.
  void add(DenseTensor t);
  void scale(double s) { scalar_ *= s; }
  int dim() const { return dim_; }
  std::size_t size() const { return tensors_.size(); }
  // Greedy pairwise contraction minimizing intermediate size.
  double contract() const;

 private:
  int dim_;
  std::size_t max_entries_;
  double scalar_ = 1.0;
  std::vector<DenseTensor> tensors_;
};

// Haar moment tensor of one letter with n plain and n conjugate entries. Legs in order
// (plain rows, conjugate rows, plain cols, conjugate cols); value E[prod U_{r_k c_k} prod conj(U)_{r'_k c'_k}].
std::shared_ptr<const DenseTensor> haar_moment_tensor(int n, int N);

struct NetworkIntegralResult {
  double value = 0.0;
  std::size_t tensors = 0;
};

// Same integral as character_word_integral, contracted numerically with projector and moment tensors.
NetworkIntegralResult moment_network_integral(const WordSpec& spec);

}  // namespace ymx
