// SPDX-License-Identifier: MIT
#include "ymx/brauer.hpp"

#include <numeric>
#include <sstream>

#include "ymx/errors.hpp"

namespace ymx {

WalledBrauerDiagram::WalledBrauerDiagram(int n, int m, std::vector<int> mate)
    : n_(n), m_(m), mate_(std::move(mate)) {
  if (n < 0 || m < 0) throw ValidationError("negative slot count");
  const int r = n + m;
  if (static_cast<int>(mate_.size()) != 2 * r) throw ValidationError("diagram needs 2(n+m) vertices");
  for (int v = 0; v < 2 * r; ++v) {
    const int w = mate_[v];
    if (w < 0 || w >= 2 * r || w == v || mate_[w] != v) throw ValidationError("diagram is not a perfect matching");
    const bool same_row = is_top(v) == is_top(w);
    const bool same_side = is_covariant_slot(slot_of(v)) == is_covariant_slot(slot_of(w));
    if (same_row == same_side) throw ValidationError("diagram violates the wall rule");
  }
}

WalledBrauerDiagram WalledBrauerDiagram::identity(int n, int m) {
  return from_bijection(n, m, Permutation::identity(n + m));
}

WalledBrauerDiagram WalledBrauerDiagram::from_bijection(int n, int m, const Permutation& pi) {
  const int r = n + m;
  if (pi.degree() != r) throw ValidationError("bijection degree must be n+m");
  std::vector<int> mate(2 * r, -1);
  for (int k = 0; k < r; ++k) {
    const int x = k < n ? k : r + k;
    const int j = pi(k);
    const int y = j < n ? r + j : j;
    mate[x] = y;
    mate[y] = x;
  }
  return WalledBrauerDiagram(n, m, std::move(mate));
}

WalledBrauerDiagram WalledBrauerDiagram::permutation(const Permutation& sigma, const Permutation& pi) {
  const int n = sigma.degree();
  const int m = pi.degree();
  const int r = n + m;
  std::vector<int> mate(2 * r);
  for (int k = 0; k < n; ++k) {
    mate[k] = r + sigma(k);
    mate[r + sigma(k)] = k;
  }
  for (int k = 0; k < m; ++k) {
    mate[n + k] = r + n + pi(k);
    mate[r + n + pi(k)] = n + k;
  }
  return WalledBrauerDiagram(n, m, std::move(mate));
}

WalledBrauerDiagram WalledBrauerDiagram::contraction(int n, int m, int i, int j) {
  if (i < 0 || i >= n || j < 0 || j >= m) throw ValidationError("contraction slots out of range");
  const int r = n + m;
  std::vector<int> mate(2 * r);
  for (int s = 0; s < r; ++s) {
    mate[s] = r + s;
    mate[r + s] = s;
  }
  const int c = n + j;
  mate[i] = c;
  mate[c] = i;
  mate[r + i] = r + c;
  mate[r + c] = r + i;
  return WalledBrauerDiagram(n, m, std::move(mate));
}

int WalledBrauerDiagram::horizontal_strands() const {
  int h = 0;
  for (int v = 0; v < 2 * slots(); ++v) {
    if (v < mate_[v] && is_top(v) == is_top(mate_[v])) ++h;
  }
  return h;
}

int WalledBrauerDiagram::closed_cycles() const {
  const int r = slots();
  std::vector<char> seen(2 * r, 0);
  int cycles = 0;
  for (int v = 0; v < 2 * r; ++v) {
    if (seen[v]) continue;
    ++cycles;
    int x = v;
    while (!seen[x]) {
      seen[x] = 1;
      const int y = mate_[x];
      seen[y] = 1;
      x = is_top(y) ? bottom(y) : top(slot_of(y));
    }
  }
  return cycles;
}

std::string WalledBrauerDiagram::str() const {
  std::ostringstream os;
  os << "B(" << n_ << "," << m_ << ")[";
  bool first = true;
  for (int v = 0; v < 2 * slots(); ++v) {
    const int w = mate_[v];
    if (w < v) continue;
    os << (first ? "" : " ") << (is_top(v) ? 't' : 'b') << slot_of(v) << '-' << (is_top(w) ? 't' : 'b')
       << slot_of(w);
    first = false;
  }
  os << ']';
  return os.str();
}

BrauerProduct compose(const WalledBrauerDiagram& d1, const WalledBrauerDiagram& d2) {
  if (d1.n() != d2.n() || d1.m() != d2.m()) throw ValidationError("compose: shape mismatch");
  const int r = d1.slots();
  // Local vertex ids: 0..r-1 top of d1, r..2r-1 middle, 2r..3r-1 bottom of d2.
  auto next = [&](int v, bool in_upper) -> int {
    if (in_upper) {
      return d1.mate(v);
    }
    const int w = d2.mate(v - r);
    return w + r;
  };
  std::vector<int> mate(2 * r, -1);
  std::vector<char> middle_seen(r, 0);
  auto external_out = [&](int local) { return local < r ? local : local - r; };
  for (int start : [&] {
         std::vector<int> ext;
         for (int s = 0; s < r; ++s) ext.push_back(s);
         for (int s = 0; s < r; ++s) ext.push_back(2 * r + s);
         return ext;
       }()) {
    const int out_start = external_out(start);
    if (mate[out_start] >= 0) continue;
    int v = start;
    bool upper = start < r;
    while (true) {
      const int w = next(v, upper);
      const bool is_mid = w >= r && w < 2 * r;
      if (!is_mid) {
        const int out_w = external_out(w);
        mate[out_start] = out_w;
        mate[out_w] = out_start;
        break;
      }
      middle_seen[w - r] = 1;
      v = w;
      upper = !upper;
    }
  }
  int loops = 0;
  for (int s = 0; s < r; ++s) {
    if (middle_seen[s]) continue;
    ++loops;
    int v = r + s;
    bool upper = true;
    do {
      middle_seen[v - r] = 1;
      v = next(v, upper);
      upper = !upper;
    } while (v != r + s);
  }
  return {WalledBrauerDiagram(d1.n(), d1.m(), std::move(mate)), loops};
}

std::vector<WalledBrauerDiagram> enumerate_walled(int n, int m) {
  if (n < 0 || m < 0) throw ValidationError("negative slot count");
  std::vector<WalledBrauerDiagram> out;
  for (const auto& pi : all_permutations(n + m)) out.push_back(WalledBrauerDiagram::from_bijection(n, m, pi));
  return out;
}

std::vector<IndexConstraint> index_pattern(const WalledBrauerDiagram& d) {
  std::vector<IndexConstraint> out;
  for (int v = 0; v < 2 * d.slots(); ++v) {
    const int w = d.mate(v);
    if (w < v) continue;
    out.push_back({d.is_top(v), d.slot_of(v), d.is_top(w), d.slot_of(w)});
  }
  return out;
}

long dense_dimension(int N, int slots) {
  long dim = 1;
  for (int i = 0; i < slots; ++i) {
    dim *= N;
    if (dim > (1L << 40)) break;
  }
  return dim;
}

Eigen::MatrixXd dense_matrix(const WalledBrauerDiagram& d, int N, long cap) {
  const int r = d.slots();
  const long dim = dense_dimension(N, r);
  if (dim > cap) throw EngineRefusal("dense Brauer matrix exceeds the size cap");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  const auto pattern = index_pattern(d);
  std::vector<int> values(r, 0);
  std::vector<int> top(r), bottom(r);
  // Enumerate one value per strand.
  std::vector<int> strand(r, 0);
  while (true) {
    for (int k = 0; k < r; ++k) {
      const auto& c = pattern[k];
      (c.first_top ? top : bottom)[c.first_slot] = strand[k];
      (c.second_top ? top : bottom)[c.second_slot] = strand[k];
    }
    long I = 0, J = 0;
    for (int s = 0; s < r; ++s) {
      I = I * N + top[s];
      J = J * N + bottom[s];
    }
    out(I, J) = 1.0;
    int k = r - 1;
    while (k >= 0 && ++strand[k] == N) strand[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

BrauerElement multiply(const BrauerElement& a, const BrauerElement& b, int N) {
  BrauerElement out;
  for (const auto& [da, ca] : a) {
    for (const auto& [db, cb] : b) {
      const auto prod = compose(da, db);
      Rational c = ca * cb;
      for (int k = 0; k < prod.loops; ++k) c *= N;
      out[prod.diagram] += c;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  }
  return out;
}

Eigen::MatrixXd dense_matrix(const BrauerElement& x, int n, int m, int N, long cap) {
  const long dim = dense_dimension(N, n + m);
  if (dim > cap) throw EngineRefusal("dense Brauer matrix exceeds the size cap");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [d, c] : x) out += c.get_d() * dense_matrix(d, N, cap);
  return out;
}

BrauerElement contraction_sum(int n, int m) {
  BrauerElement out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) out[WalledBrauerDiagram::contraction(n, m, i, j)] += 1;
  }
  return out;
}

}  // namespace ymx
