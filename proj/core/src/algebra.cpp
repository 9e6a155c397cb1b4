// SPDX-License-Identifier: MIT
#include "ymx/algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>

#include "ymx/errors.hpp"

namespace ymx {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw ValidationError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw ValidationError("partition parts must be nonincreasing");
    size_ += parts_[i];
  }
}

Partition Partition::conjugate() const {
  std::vector<int> out;
  if (!parts_.empty()) {
    for (int j = 1; j <= parts_[0]; ++j) {
      int c = 0;
      for (int p : parts_) c += (p >= j);
      out.push_back(c);
    }
  }
  return Partition(out);
}

std::vector<int> Partition::multiplicities() const {
  std::vector<int> m(static_cast<std::size_t>(size_) + 1, 0);
  for (int p : parts_) ++m[p];
  return m;
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int x : p.parts()) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
  return h;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int x : images_) {
    if (x < 0 || x >= degree() || seen[x]) throw ValidationError("image array is not a bijection");
    seen[x] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
  Permutation out;
  out.images_ = std::move(inv);
  return out;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.degree() != degree()) throw ValidationError("composing permutations of different degree");
  Permutation out;
  out.images_.resize(images_.size());
  for (int i = 0; i < degree(); ++i) out.images_[i] = images_[other.images_[i]];
  return out;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    std::vector<int> c;
    for (int j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

int Permutation::num_cycles() const {
  int count = 0;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    ++count;
    for (int j = i; !seen[j]; j = images_[j]) seen[j] = 1;
  }
  return count;
}

Partition cycle_type(const Permutation& p) {
  std::vector<int> lens;
  for (const auto& c : p.cycles()) lens.push_back(static_cast<int>(c.size()));
  std::sort(lens.rbegin(), lens.rend());
  return Partition(lens);
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

namespace {

void partitions_rec(int remaining, int max_part, int max_length, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (max_length >= 0 && static_cast<int>(cur.size()) >= max_length) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, max_length, cur, out);
    cur.pop_back();
  }
}

// Beta-set form of Murnaghan-Nakayama: a rim hook of length k is a bead moved from b to b-k.
std::int64_t mn_rec(const Partition& lambda, const std::vector<int>& mu_parts, std::size_t next);

struct CharacterMemo {
  std::shared_mutex mutex;
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::int64_t> values;
};

CharacterMemo& character_memo() {
  static CharacterMemo memo;
  return memo;
}

std::int64_t mn_rec(const Partition& lambda, const std::vector<int>& mu_parts, std::size_t next) {
  if (next == mu_parts.size()) return lambda.size() == 0 ? 1 : 0;
  std::vector<int> rest(mu_parts.begin() + static_cast<long>(next), mu_parts.end());
  auto key = std::make_pair(lambda.parts(), rest);
  auto& memo = character_memo();
  {
    std::shared_lock lock(memo.mutex);
    auto it = memo.values.find(key);
    if (it != memo.values.end()) return it->second;
  }
  const int k = mu_parts[next];
  const int len = lambda.length();
  std::vector<int> beta(len);
  for (int i = 0; i < len; ++i) beta[i] = lambda[i] + (len - 1 - i);
  std::int64_t total = 0;
  for (int i = 0; i < len; ++i) {
    const int target = beta[i] - k;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int between = 0;
    for (int b : beta) between += (b > target && b < beta[i]);
    std::vector<int> nb = beta;
    nb[i] = target;
    std::sort(nb.rbegin(), nb.rend());
    std::vector<int> parts;
    for (int j = 0; j < len; ++j) {
      const int part = nb[j] - (len - 1 - j);
      if (part > 0) parts.push_back(part);
    }
    const std::int64_t sub = mn_rec(Partition(parts), mu_parts, next + 1);
    total += (between % 2 ? -sub : sub);
  }
  std::unique_lock lock(memo.mutex);
  memo.values.emplace(std::move(key), total);
  return total;
}

}  // namespace

std::vector<Partition> partitions_of(int n, int max_length) {
  if (n < 0) throw ValidationError("partitions_of requires n >= 0");
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(n, n, max_length, cur, out);
  return out;
}

std::int64_t sym_character(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) throw ValidationError("sym_character: size mismatch");
  return mn_rec(lambda, mu.parts(), 0);
}

BigInt sym_dimension(const Partition& lambda) {
  BigInt hooks = 1;
  const Partition conj = lambda.conjugate();
  for (int i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < lambda[i]; ++j) hooks *= (lambda[i] - j - 1) + (conj[j] - i - 1) + 1;
  }
  return factorial(lambda.size()) / hooks;
}

BigInt centralizer_order(const Partition& mu) {
  BigInt z = 1;
  const auto m = mu.multiplicities();
  for (std::size_t i = 1; i < m.size(); ++i) {
    for (int k = 0; k < m[i]; ++k) z *= static_cast<unsigned long>(i);
    z *= factorial(m[i]);
  }
  return z;
}

BigInt class_size(const Partition& mu) { return factorial(mu.size()) / centralizer_order(mu); }

}  // namespace ymx
