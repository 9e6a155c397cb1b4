// SPDX-License-Identifier: MIT
#include "ymx/tensor_network.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bitset>
#include <map>
#include <mutex>
#include <numeric>

#include "ymx/errors.hpp"

namespace ymx {

namespace {

std::size_t ipow(int base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) out *= static_cast<std::size_t>(base);
  return out;
}

// Reorders legs so that vars appear as `order`.
DenseTensor permute(const DenseTensor& t, const std::vector<int>& order, int d) {
  if (order == t.vars) return t;
  const std::size_t rank = t.vars.size();
  std::vector<std::size_t> src_pos(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    src_pos[k] = static_cast<std::size_t>(std::find(t.vars.begin(), t.vars.end(), order[k]) - t.vars.begin());
  }
  std::vector<std::size_t> stride(rank);
  for (std::size_t k = 0; k < rank; ++k) stride[k] = ipow(d, rank - 1 - k);
  DenseTensor out;
  out.vars = order;
  out.data.assign(t.data.size(), 0.0);
  std::vector<int> idx(rank, 0);
  for (std::size_t flat = 0; flat < out.data.size(); ++flat) {
    std::size_t src = 0;
    for (std::size_t k = 0; k < rank; ++k) src += static_cast<std::size_t>(idx[k]) * stride[src_pos[k]];
    out.data[flat] = t.data[src];
    for (long k = static_cast<long>(rank) - 1; k >= 0; --k) {
      if (++idx[k] < d) break;
      idx[k] = 0;
    }
  }
  return out;
}

DenseTensor diagonalize(const DenseTensor& t, int d) {
  std::vector<int> unique;
  for (int v : t.vars) {
    if (std::find(unique.begin(), unique.end(), v) == unique.end()) unique.push_back(v);
  }
  if (unique.size() == t.vars.size()) return t;
  // Variables occurring twice inside one tensor are traced out.
  std::vector<int> kept;
  for (int v : unique) {
    if (std::count(t.vars.begin(), t.vars.end(), v) == 1) kept.push_back(v);
  }
  const std::size_t rank = t.vars.size();
  DenseTensor out;
  out.vars = kept;
  out.data.assign(ipow(d, kept.size()), 0.0);
  std::vector<int> vals(unique.size(), 0);
  std::vector<std::size_t> upos(rank), kpos(kept.size());
  for (std::size_t k = 0; k < rank; ++k) {
    upos[k] = static_cast<std::size_t>(std::find(unique.begin(), unique.end(), t.vars[k]) - unique.begin());
  }
  for (std::size_t k = 0; k < kept.size(); ++k) {
    kpos[k] = static_cast<std::size_t>(std::find(unique.begin(), unique.end(), kept[k]) - unique.begin());
  }
  const std::size_t total = ipow(d, unique.size());
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t src = 0, dst = 0;
    for (std::size_t k = 0; k < rank; ++k) src = src * d + static_cast<std::size_t>(vals[upos[k]]);
    for (std::size_t k = 0; k < kept.size(); ++k) dst = dst * d + static_cast<std::size_t>(vals[kpos[k]]);
    out.data[dst] += t.data[src];
    for (long k = static_cast<long>(unique.size()) - 1; k >= 0; --k) {
      if (++vals[k] < d) break;
      vals[k] = 0;
    }
  }
  return out;
}

DenseTensor contract_pair(const DenseTensor& a, const DenseTensor& b, int d) {
  std::vector<int> shared, free_a, free_b;
  for (int v : a.vars) {
    (std::find(b.vars.begin(), b.vars.end(), v) != b.vars.end() ? shared : free_a).push_back(v);
  }
  for (int v : b.vars) {
    if (std::find(shared.begin(), shared.end(), v) == shared.end()) free_b.push_back(v);
  }
  std::vector<int> order_a = free_a;
  order_a.insert(order_a.end(), shared.begin(), shared.end());
  std::vector<int> order_b = shared;
  order_b.insert(order_b.end(), free_b.begin(), free_b.end());
  const DenseTensor pa = permute(a, order_a, d);
  const DenseTensor pb = permute(b, order_b, d);
  const long rows = static_cast<long>(ipow(d, free_a.size()));
  const long inner = static_cast<long>(ipow(d, shared.size()));
  const long cols = static_cast<long>(ipow(d, free_b.size()));
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> ma(pa.data.data(), rows, inner);
  Eigen::Map<const RowMat> mb(pb.data.data(), inner, cols);
  DenseTensor out;
  out.vars = free_a;
  out.vars.insert(out.vars.end(), free_b.begin(), free_b.end());
  out.data.resize(static_cast<std::size_t>(rows * cols));
  Eigen::Map<RowMat> mo(out.data.data(), rows, cols);
  mo.noalias() = ma * mb;
  return out;
}

}  // namespace

void TensorNetwork::add(DenseTensor t) {
  if (t.data.size() != ipow(dim_, t.vars.size())) throw ValidationError("tensor data does not match its rank");
  tensors_.push_back(diagonalize(t, dim_));
}

double TensorNetwork::contract() const {
  std::vector<DenseTensor> pool = tensors_;
  double scalar = scalar_;
  while (!pool.empty()) {
    // Absorb scalars.
    for (auto it = pool.begin(); it != pool.end();) {
      if (it->vars.empty()) {
        scalar *= it->data[0];
        it = pool.erase(it);
      } else {
        ++it;
      }
    }
    if (pool.empty()) break;
    long best_i = -1, best_j = -1;
    std::size_t best_size = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        std::size_t shared = 0;
        for (int v : pool[i].vars) shared += std::count(pool[j].vars.begin(), pool[j].vars.end(), v);
        if (shared == 0) continue;
        const std::size_t result = pool[i].vars.size() + pool[j].vars.size() - 2 * shared;
        const std::size_t size = ipow(dim_, result);
        if (best_i < 0 || size < best_size) {
          best_i = static_cast<long>(i);
          best_j = static_cast<long>(j);
          best_size = size;
        }
      }
    }
    if (best_i < 0) throw ValidationError("tensor network has dangling legs");
    if (best_size > max_entries_) throw EngineRefusal("tensor network intermediate exceeds the size cap");
    DenseTensor merged = contract_pair(pool[best_i], pool[best_j], dim_);
    pool.erase(pool.begin() + best_j);
    pool[best_i] = diagonalize(merged, dim_);
  }
  return scalar;
}

std::shared_ptr<const DenseTensor> haar_moment_tensor(int n, int N) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const DenseTensor>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({n, N});
    if (it != cache.end()) return it->second;
  }
  auto t = std::make_shared<DenseTensor>();
  t->vars.resize(static_cast<std::size_t>(4 * n));
  std::iota(t->vars.begin(), t->vars.end(), 0);
  const std::size_t half = ipow(N, static_cast<std::size_t>(2 * n));
  if (half * half > (std::size_t(1) << 24)) throw EngineRefusal("Haar moment tensor exceeds the size cap");
  if (N == 1 || n == 0) {
    t->data.assign(half * half, 1.0);
  } else {
    const auto& pairs = letter_pairings(n);
    const auto perms = all_permutations(n);
    const std::size_t P = perms.size();
    const auto classes = partitions_of(n);
    std::vector<double> wgv;
    for (const auto& mu : classes) wgv.push_back(wg_table(n, N).value(mu).get_d());
    Eigen::MatrixXd W(static_cast<long>(P), static_cast<long>(P));
    for (std::size_t k = 0; k < pairs.size(); ++k) W(static_cast<long>(k / P), static_cast<long>(k % P)) = wgv[pairs[k].class_index];
    // Consistency of a (plain, conjugate) index assignment with each bijection.
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<long>(P), static_cast<long>(half));
    std::vector<int> vals(static_cast<std::size_t>(2 * n), 0);
    for (std::size_t a = 0; a < half; ++a) {
      std::size_t rest = a;
      for (long k = 2 * n - 1; k >= 0; --k) {
        vals[k] = static_cast<int>(rest % N);
        rest /= N;
      }
      for (std::size_t p = 0; p < P; ++p) {
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) ok = vals[k] == vals[n + perms[p](k)];
        if (ok) C(static_cast<long>(p), static_cast<long>(a)) = 1.0;
      }
    }
    const Eigen::MatrixXd M = C.transpose() * W * C;
    // Row index: (plain rows, conjugate rows); column index: (plain cols, conjugate cols).
    t->data.resize(half * half);
    for (std::size_t r = 0; r < half; ++r) {
      for (std::size_t c = 0; c < half; ++c) t->data[r * half + c] = M(static_cast<long>(r), static_cast<long>(c));
    }
  }
  std::lock_guard lock(mutex);
  return cache.emplace(std::make_pair(n, N), t).first->second;
}

NetworkIntegralResult moment_network_integral(const WordSpec& spec) {
  const SpecLayout layout = build_layout(spec);
  NetworkIntegralResult res;
  if (!layout.balanced) return res;
  const int N = layout.N;
  TensorNetwork net(N);
  // Identity gadgets merge T and B at positions without an insertion.
  std::vector<int> rep(layout.num_vars);
  std::iota(rep.begin(), rep.end(), 0);
  for (std::size_t i = 0; i < layout.words.size(); ++i) {
    const auto& wl = layout.words[i];
    for (int r = 1; r < wl.length; ++r) {
      for (int u = 0; u < wl.slots; ++u) rep[layout.B(static_cast<int>(i), r, u)] = layout.T(static_cast<int>(i), r, u);
    }
  }
  for (const auto& [i, r] : layout.sites) {
    const auto proj = isotypic_projector(layout.spec.labels[i]);
    const auto& P = proj->projector.entries;
    const int slots = layout.words[i].slots;
    DenseTensor t;
    for (int u = 0; u < slots; ++u) t.vars.push_back(rep[layout.T(i, r, u)]);
    for (int u = 0; u < slots; ++u) t.vars.push_back(rep[layout.B(i, r, u)]);
    const long dim = P.rows();
    t.data.resize(static_cast<std::size_t>(dim * dim));
    for (long I = 0; I < dim; ++I) {
      for (long J = 0; J < dim; ++J) t.data[static_cast<std::size_t>(I * dim + J)] = P(I, J);
    }
    net.add(std::move(t));
  }
  for (std::size_t a = 0; a < layout.plus.size(); ++a) {
    const int n = static_cast<int>(layout.plus[a].size());
    if (n == 0) continue;
    DenseTensor t = *haar_moment_tensor(n, N);
    std::vector<int> vars;
    for (int k : layout.plus[a]) vars.push_back(rep[layout.occurrences[k].row]);
    for (int k : layout.minus[a]) vars.push_back(rep[layout.occurrences[k].row]);
    for (int k : layout.plus[a]) vars.push_back(rep[layout.occurrences[k].col]);
    for (int k : layout.minus[a]) vars.push_back(rep[layout.occurrences[k].col]);
    t.vars = vars;
    net.add(std::move(t));
  }
  net.scale(layout.label_factor.get_d());
  res.tensors = net.size();
  res.value = net.contract();
  return res;
}

}  // namespace ymx
