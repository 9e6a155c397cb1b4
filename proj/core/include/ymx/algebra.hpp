// SPDX-License-Identifier: MIT
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ymx/rational.hpp"

namespace ymx {

// Integer partition with strictly positive, nonincreasing parts.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  // Part i (0-based); zero past the end.
  int operator[](int i) const { return i < length() ? parts_[i] : 0; }

  Partition conjugate() const;
  // Multiplicity of each part size 1..size().
  std::vector<int> multiplicities() const;
  // "(2,1)"; the empty partition prints as "()".
  std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

// Bijection of {0..n-1} stored by images.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  // (this * other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const;
  int num_cycles() const;
  std::vector<std::vector<int>> cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<int> images_;
};

Partition cycle_type(const Permutation& p);

// All permutations of n points in lexicographic order of image arrays.
std::vector<Permutation> all_permutations(int n);

// Partitions of n with at most max_length parts (negative: unbounded), reverse lexicographic.
std::vector<Partition> partitions_of(int n, int max_length = -1);

// Irreducible character chi^lambda at cycle type mu (Murnaghan-Nakayama, memoized).
std::int64_t sym_character(const Partition& lambda, const Partition& mu);

// f^lambda = chi^lambda(1^n), by the hook length formula.
BigInt sym_dimension(const Partition& lambda);

// z_mu = prod_i i^{m_i} m_i!.
BigInt centralizer_order(const Partition& mu);

// n! / z_mu.
BigInt class_size(const Partition& mu);

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

}  // namespace ymx
