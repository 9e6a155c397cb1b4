// SPDX-License-Identifier: MIT
#include "ymx/master_loop.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "ymx/errors.hpp"
#include "ymx/unitary_rep.hpp"

namespace ymx {

namespace {

using Mat = Eigen::MatrixXcd;

Word rotated(const Word& w, int c) {
  Word out;
  const int L = static_cast<int>(w.size());
  if (L == 0) return out;
  c = ((c % L) + L) % L;
  out.insert(out.end(), w.begin() + c, w.end());
  out.insert(out.end(), w.begin(), w.begin() + c);
  return out;
}

Word segment(const Word& w, int a, int b) {
  // cyclic segment [a, b) with a, b in [0, L]
  const int L = static_cast<int>(w.size());
  Word out;
  if (L == 0) return out;
  int i = a % L;
  const int len = ((b - a) % L + L) % L;
  for (int k = 0; k < len; ++k) out.push_back(w[(i + k) % L]);
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

int cut_point(const Word& w, int pos) { return w[pos].exponent > 0 ? pos : pos + 1; }

std::vector<int> occurrences(const Word& w, int e) {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(w.size()); ++k)
    if (w[k].id == e) out.push_back(k);
  return out;
}

std::vector<Word> reduced_family(const std::vector<Word>& loops) {
  std::vector<Word> out;
  out.reserve(loops.size());
  for (const auto& w : loops) out.push_back(cyclically_reduce(w));
  return out;
}

std::vector<Word> replace_one(const std::vector<Word>& loops, int i, const std::vector<Word>& with) {
  std::vector<Word> out;
  for (int k = 0; k < static_cast<int>(loops.size()); ++k)
    if (k != i) out.push_back(loops[k]);
  for (const auto& w : with) out.push_back(cyclically_reduce(w));
  return out;
}

std::vector<Word> replace_two(const std::vector<Word>& loops, int i, int j, const Word& with) {
  std::vector<Word> out;
  for (int k = 0; k < static_cast<int>(loops.size()); ++k)
    if (k != i && k != j) out.push_back(loops[k]);
  out.push_back(cyclically_reduce(with));
  return out;
}

Word canonical_rotation(const Word& w) {
  Word best = w;
  for (int c = 1; c < static_cast<int>(w.size()); ++c) best = std::min(best, rotated(w, c));
  return best;
}

std::vector<Word> canonical_family(const std::vector<Word>& loops) {
  std::vector<Word> out;
  for (const auto& w : loops) out.push_back(canonical_rotation(cyclically_reduce(w)));
  std::sort(out.begin(), out.end());
  return out;
}

// Merge loop w cut at occurrence x with loop g cut at occurrence z.
Word merge_at(const Word& w, int x, const Word& g, int z) {
  return concat(rotated(w, cut_point(w, x)), rotated(g, cut_point(g, z)));
}

Word power_word(const Word& w, int k) {
  Word base = k >= 0 ? w : inverse_word(w);
  Word out;
  for (int r = 0; r < std::abs(k); ++r) out.insert(out.end(), base.begin(), base.end());
  return out;
}

void check_family(const SurgeryResult& r, std::size_t expected) {
  if (r.family.size() != expected)
    throw ConsistencyError("surgery produced " + std::to_string(r.family.size()) + " loops, expected " +
                           std::to_string(expected));
}

Mat holonomy(const Word& w, const Configuration& U) { return word_holonomy(w, U); }

// Truncated polynomial a0 + a1 t + a2 t^2 in matrices.
struct Jet {
  Mat a0, a1, a2;
};

Jet jet_mul(const Jet& x, const Jet& y) {
  return {x.a0 * y.a0, x.a0 * y.a1 + x.a1 * y.a0, x.a0 * y.a2 + x.a1 * y.a1 + x.a2 * y.a0};
}

}  // namespace

std::string surgery_kind_name(SurgeryKind k) {
  switch (k) {
    case SurgeryKind::SplitPlus: return "split+";
    case SurgeryKind::SplitMinus: return "split-";
    case SurgeryKind::MergePlus: return "merge+";
    case SurgeryKind::MergeMinus: return "merge-";
    case SurgeryKind::DeformPlus: return "deform+";
    case SurgeryKind::DeformMinus: return "deform-";
  }
  return "?";
}

SurgerySets loop_surgeries(const std::vector<LoopWord>& input, int e) {
  const auto loops = reduced_family(input);
  const std::size_t n = loops.size();
  SurgerySets out;
  for (int i = 0; i < static_cast<int>(n); ++i) {
    const Word& w = loops[i];
    const auto occ = occurrences(w, e);
    out.occurrences += static_cast<int>(occ.size());
    for (int x : occ) {
      for (int y : occ) {
        if (x == y) continue;
        const int cx = cut_point(w, x), cy = cut_point(w, y);
        SurgeryResult r;
        const bool same = w[x].exponent == w[y].exponent;
        r.kind = same ? SurgeryKind::SplitPlus : SurgeryKind::SplitMinus;
        r.family = replace_one(loops, i, {segment(w, cx, cy), segment(w, cy, cx)});
        r.edge = e;
        r.loop_i = i;
        r.x = x;
        r.y = y;
        check_family(r, n + 1);
        (same ? out.split_plus : out.split_minus).push_back(std::move(r));
      }
    }
    for (int j = 0; j < static_cast<int>(n); ++j) {
      if (j == i) continue;
      for (int x : occ) {
        for (int y : occurrences(loops[j], e)) {
          SurgeryResult r;
          const bool same = w[x].exponent == loops[j][y].exponent;
          r.kind = same ? SurgeryKind::MergePlus : SurgeryKind::MergeMinus;
          r.family = replace_two(loops, i, j, merge_at(w, x, loops[j], y));
          r.edge = e;
          r.loop_i = i;
          r.loop_j = j;
          r.x = x;
          r.y = y;
          check_family(r, n - 1);
          (same ? out.merge_plus : out.merge_minus).push_back(std::move(r));
        }
      }
    }
  }
  return out;
}

SurgerySets surgery_multisets(const Lattice& lattice, const std::vector<LoopWord>& input, int e) {
  if (e < 0 || e >= lattice.num_edges()) throw ValidationError("edge id out of range");
  for (const auto& w : input) lattice.check_loop(w);
  SurgerySets out = loop_surgeries(input, e);
  const auto loops = reduced_family(input);
  for (int p : lattice.plaquettes_containing(e)) {
    const Word& bd = lattice.plaquette(p).boundary;
    for (int sgn : {1, -1}) {
      const Word g = sgn > 0 ? bd : inverse_word(bd);
      const int z = occurrences(g, e).at(0);
      for (int i = 0; i < static_cast<int>(loops.size()); ++i) {
        for (int x : occurrences(loops[i], e)) {
          SurgeryResult r;
          const bool same = loops[i][x].exponent == g[z].exponent;
          r.kind = same ? SurgeryKind::DeformPlus : SurgeryKind::DeformMinus;
          r.family = replace_one(loops, i, {merge_at(loops[i], x, g, z)});
          r.edge = e;
          r.loop_i = i;
          r.x = x;
          r.y = z;
          r.plaquette = p;
          check_family(r, loops.size());
          (same ? out.deform_plus : out.deform_minus).push_back(std::move(r));
        }
      }
    }
  }
  return out;
}

std::vector<Mat> lie_algebra_basis(int N) {
  if (N < 1) throw ValidationError("N must be positive");
  std::vector<Mat> out;
  const double s = 1.0 / std::sqrt(2.0);
  const Complex I(0.0, 1.0);
  for (int j = 0; j < N; ++j) {
    Mat X = Mat::Zero(N, N);
    X(j, j) = I;
    out.push_back(X);
  }
  for (int j = 0; j < N; ++j) {
    for (int k = j + 1; k < N; ++k) {
      Mat A = Mat::Zero(N, N), B = Mat::Zero(N, N);
      A(j, k) = s;
      A(k, j) = -s;
      B(j, k) = I * s;
      B(k, j) = I * s;
      out.push_back(A);
      out.push_back(B);
    }
  }
  return out;
}

MagicResiduals magic_formula_residuals(int N, const Mat& A, const Mat& B) {
  const auto basis = lie_algebra_basis(N);
  Mat sq = Mat::Zero(N, N), sw = Mat::Zero(N, N);
  Complex tp = 0.0;
  for (const auto& X : basis) {
    sq += X * X;
    sw += X * A * X;
    tp += (X * A).trace() * (X * B).trace();
  }
  MagicResiduals r;
  r.sum_of_squares = (sq + static_cast<double>(N) * Mat::Identity(N, N)).norm();
  r.sandwich = (sw + A.trace() * Mat::Identity(N, N)).norm();
  r.trace_pairs = std::abs(tp + (A * B).trace());
  return r;
}

std::complex<double> wilson_loops_value(const std::vector<LoopWord>& loops, const Configuration& U) {
  Complex v = 1.0;
  const int N = U.empty() ? 1 : static_cast<int>(U.front().rows());
  for (const auto& w : loops) v *= w.empty() ? Complex(N) : holonomy(w, U).trace();
  return v;
}

PointwiseLaplacian loop_laplacian_pointwise(const std::vector<LoopWord>& loops, int e, const Configuration& U) {
  if (e < 0 || e >= static_cast<int>(U.size())) throw ValidationError("edge id out of range");
  const int N = static_cast<int>(U.front().rows());
  PointwiseLaplacian out;
  for (const auto& X : lie_algebra_basis(N)) {
    const Mat X2 = X * X / 2.0;
    // product of traces as a truncated series in t
    Complex p0 = 1.0, p1 = 0.0, p2 = 0.0;
    for (const auto& w : loops) {
      Jet h{Mat::Identity(N, N), Mat::Zero(N, N), Mat::Zero(N, N)};
      for (const auto& l : w) {
        Jet f;
        if (l.id != e) {
          const Mat u = l.exponent > 0 ? Mat(U[l.id]) : Mat(U[l.id].adjoint());
          f = {u, Mat::Zero(N, N), Mat::Zero(N, N)};
        } else if (l.exponent > 0) {
          f = {U[e], X * U[e], X2 * U[e]};
        } else {
          const Mat ui = U[e].adjoint();
          f = {ui, -ui * X, ui * X2};
        }
        h = jet_mul(h, f);
      }
      const Complex t0 = h.a0.trace(), t1 = h.a1.trace(), t2 = h.a2.trace();
      const Complex q0 = p0 * t0, q1 = p0 * t1 + p1 * t0, q2 = p0 * t2 + p1 * t1 + p2 * t0;
      p0 = q0;
      p1 = q1;
      p2 = q2;
    }
    out.direct += 2.0 * p2;
  }
  const auto s = loop_surgeries(loops, e);
  Complex v = -static_cast<double>(N) * s.occurrences * wilson_loops_value(reduced_family(loops), U);
  for (const auto& r : s.split_minus) v += wilson_loops_value(r.family, U);
  for (const auto& r : s.split_plus) v -= wilson_loops_value(r.family, U);
  for (const auto& r : s.merge_minus) v += wilson_loops_value(r.family, U);
  for (const auto& r : s.merge_plus) v -= wilson_loops_value(r.family, U);
  out.surgery = v;
  out.difference = std::abs(out.direct - out.surgery);
  return out;
}

std::vector<std::pair<HighestWeight, long>> power_sum_to_characters(const std::vector<int>& powers, int N) {
  if (N < 1) throw ValidationError("N must be positive");
  int kp = 0, km = 0, charge = 0;
  for (int k : powers) {
    (k > 0 ? kp : km) += std::abs(k);
    charge += k;
  }
  std::vector<HighestWeight> candidates;
  for (const auto& b : weights_in_box(N, kp + km))
    if (b.charge() == charge) candidates.push_back(b);
  const int M = 2 * (kp + km) + 2 * N + 3;
  long total = 1;
  for (int i = 0; i < N; ++i) total *= M;
  std::vector<Complex> acc(candidates.size(), 0.0);
  std::vector<Complex> z(N);
  std::vector<int> idx(N, 0);
  double nfact = 1.0;
  for (int i = 2; i <= N; ++i) nfact *= i;
  for (long t = 0; t < total; ++t) {
    long r = t;
    for (int i = 0; i < N; ++i) {
      idx[i] = static_cast<int>(r % M);
      r /= M;
      z[i] = std::polar(1.0, 2.0 * std::numbers::pi * idx[i] / M);
    }
    double vdm = 1.0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) vdm *= std::norm(z[i] - z[j]);
    if (vdm == 0.0) continue;
    Complex f = 1.0;
    for (int k : powers) {
      Complex p = 0.0;
      for (const auto& x : z) p += std::pow(x, k);
      f *= p;
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) acc[c] += f * std::conj(weyl_character(candidates[c], z)) * vdm;
  }
  std::vector<std::pair<HighestWeight, long>> out;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Complex m = acc[c] / (nfact * static_cast<double>(total));
    const long mi = std::lround(m.real());
    if (std::abs(m - Complex(static_cast<double>(mi))) > 1e-6)
      throw ConsistencyError("non-integral character multiplicity");
    if (mi != 0) out.emplace_back(candidates[c], mi);
  }
  // reconstruction check at fixed generic points
  for (int trial = 0; trial < 3; ++trial) {
    for (int i = 0; i < N; ++i) z[i] = std::polar(1.0, 0.7 + 1.3 * i + 2.1 * trial + 0.37 * i * i);
    Complex f = 1.0, g = 0.0;
    for (int k : powers) {
      Complex p = 0.0;
      for (const auto& x : z) p += std::pow(x, k);
      f *= p;
    }
    for (const auto& [b, m] : out) g += static_cast<double>(m) * weyl_character(b, z);
    if (std::abs(f - g) > 1e-8 * std::max(1.0, std::abs(f)))
      throw ConsistencyError("character projection residual above tolerance");
  }
  return out;
}

namespace {

// Cycles of the closed diagram with their net power of the group element.
std::vector<int> cycle_powers(const WalledBrauerDiagram& d) {
  std::vector<int> out;
  std::vector<char> seen(d.slots(), 0);
  for (int s0 = 0; s0 < d.slots(); ++s0) {
    if (seen[s0]) continue;
    seen[s0] = 1;
    int k = d.is_covariant_slot(s0) ? 1 : -1;
    int v = d.top(s0);
    while (true) {
      const int u = d.mate(v);
      const int t = d.slot_of(u);
      if (seen[t]) break;
      seen[t] = 1;
      k += d.is_covariant_slot(t) ? 1 : -1;
      v = d.is_top(u) ? d.bottom(t) : d.top(t);
    }
    out.push_back(k);
  }
  return out;
}

}  // namespace

std::vector<RecouplingTerm> recoupling_coefficients(const Lattice& lattice, int e, int p, const HighestWeight& alpha_p,
                                                    const std::vector<LoopWord>& input) {
  const auto& cont = lattice.plaquettes_containing(e);
  if (std::find(cont.begin(), cont.end(), p) == cont.end()) throw ValidationError("plaquette does not contain edge");
  for (const auto& w : input) lattice.check_loop(w);
  const auto loops = reduced_family(input);
  if (alpha_p.is_trivial()) return {};
  const int N = alpha_p.N();
  const Word& bd = lattice.plaquette(p).boundary;
  const int zb = occurrences(bd, e).at(0);
  const int eps = bd[zb].exponent;

  auto expansion = expand_projector_in_diagrams(alpha_p);
  const BigInt copies = sym_dimension(alpha_p.plus()) * sym_dimension(alpha_p.minus());
  for (auto& term : expansion) term.second /= Rational(copies);
  {
    // expansion reproduces the character at generic eigenphases
    std::vector<Complex> z;
    for (int i = 0; i < N; ++i) z.push_back(std::polar(1.0, 0.31 + 1.7 * i + 0.23 * i * i));
    Complex s = 0.0;
    for (const auto& [tau, c] : expansion) {
      Complex f = to_double(c);
      for (int k : cycle_powers(tau)) {
        Complex q = 0.0;
        for (const auto& x : z) q += std::pow(x, k);
        f *= q;
      }
      s += f;
    }
    if (std::abs(s - weyl_character(alpha_p, z)) > 1e-8 * std::max(1.0, std::abs(s)))
      throw ConsistencyError("diagram expansion does not reproduce the character");
  }

  std::map<std::pair<std::vector<Word>, HighestWeight>, RecouplingTerm> grouped;
  std::map<std::vector<int>, std::vector<std::pair<HighestWeight, long>>> projection_cache;
  for (const auto& [tau, c] : expansion) {
    const auto ks = cycle_powers(tau);
    for (std::size_t ci = 0; ci < ks.size(); ++ci) {
      const int k = ks[ci];
      if (k == 0) continue;
      std::vector<int> rest;
      for (std::size_t cj = 0; cj < ks.size(); ++cj)
        if (cj != ci) rest.push_back(ks[cj]);
      std::sort(rest.begin(), rest.end());
      auto it = projection_cache.find(rest);
      if (it == projection_cache.end()) it = projection_cache.emplace(rest, power_sum_to_characters(rest, N)).first;
      const Word g = power_word(bd, k);
      const int z = k > 0 ? zb : static_cast<int>(bd.size()) - 1 - zb;
      const int sz = (k > 0 ? 1 : -1) * eps;
      for (int i = 0; i < static_cast<int>(loops.size()); ++i) {
        for (int x : occurrences(loops[i], e)) {
          const int sx = loops[i][x].exponent;
          const auto family = replace_one(loops, i, {merge_at(loops[i], x, g, z)});
          const auto key_family = canonical_family(family);
          for (const auto& [beta, m] : it->second) {
            auto& term = grouped[{key_family, beta}];
            term.edge = e;
            term.plaquette = p;
            term.family = family;
            term.beta = beta;
            term.coefficient += -c * sx * sz * std::abs(k) * m;
            term.sources += 1;
          }
        }
      }
    }
  }
  std::vector<RecouplingTerm> out;
  for (auto& [key, t] : grouped)
    if (t.coefficient != 0) out.push_back(std::move(t));
  return out;
}

MasterResidual master_equation_residual(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& input,
                                        const PlaquetteDecoration& alpha, int e) {
  if (static_cast<int>(alpha.size()) != lattice.num_plaquettes())
    throw ValidationError("decoration must label every plaquette");
  const int N = alpha.front().N();
  const auto loops = reduced_family(input);
  const auto s = surgery_multisets(lattice, loops, e);
  std::map<std::pair<std::vector<Word>, PlaquetteDecoration>, MasterTerm> grouped;
  auto add = [&](const std::string& kind, const std::vector<Word>& family, const PlaquetteDecoration& a, const Rational& c) {
    auto& t = grouped[{canonical_family(family), a}];
    if (t.family.empty() && t.kind.empty()) {
      t.kind = kind;
      t.family = family;
      t.alpha = a;
    } else if (t.kind != kind) {
      t.kind = "combined";
    }
    t.coefficient += c;
  };
  add("diagonal", loops, alpha, Rational(-N * s.occurrences));
  for (const auto& r : s.split_minus) add("split-", r.family, alpha, 1);
  for (const auto& r : s.split_plus) add("split+", r.family, alpha, -1);
  for (const auto& r : s.merge_minus) add("merge-", r.family, alpha, 1);
  for (const auto& r : s.merge_plus) add("merge+", r.family, alpha, -1);
  for (int p : lattice.plaquettes_containing(e)) {
    for (const auto& t : recoupling_coefficients(lattice, e, p, alpha[p], loops)) {
      PlaquetteDecoration a = alpha;
      a[p] = t.beta;
      add("recoupling", t.family, a, t.coefficient);
    }
  }
  MasterResidual out;
  double total = 0.0;
  for (auto& [key, t] : grouped) {
    if (t.coefficient == 0) continue;
    t.value = topological_coeff(lattice, gauge, t.family, t.alpha);
    total += to_double(t.coefficient) * t.value.value;
    if (t.value.is_exact) {
      out.exact += t.coefficient * t.value.exact;
    } else {
      out.is_exact = false;
    }
    out.terms.push_back(std::move(t));
  }
  out.residual = out.is_exact ? std::abs(to_double(out.exact)) : std::abs(total);
  if (!out.is_exact) out.exact = 0;
  return out;
}

WilsonMasterResult wilson_master_residual(const Lattice& lattice, const std::vector<LoopWord>& input, double beta, int N,
                                          long samples, std::uint64_t seed, const McOptions& opts) {
  if (N < 1) throw ValidationError("N must be positive");
  const auto loops = reduced_family(input);
  for (const auto& w : loops) lattice.check_loop(w);
  std::set<int> edges;
  long length = 0;
  for (const auto& w : loops) {
    length += static_cast<long>(w.size());
    for (const auto& l : w) edges.insert(l.id);
  }
  std::vector<std::pair<double, std::vector<Word>>> terms;
  terms.emplace_back(static_cast<double>(N) * length, loops);
  for (int e : edges) {
    const auto s = surgery_multisets(lattice, loops, e);
    for (const auto& r : s.deform_minus) terms.emplace_back(-beta / 2.0, r.family);
    for (const auto& r : s.deform_plus) terms.emplace_back(beta / 2.0, r.family);
    for (const auto& r : s.split_minus) terms.emplace_back(-1.0, r.family);
    for (const auto& r : s.split_plus) terms.emplace_back(1.0, r.family);
    for (const auto& r : s.merge_minus) terms.emplace_back(-1.0, r.family);
    for (const auto& r : s.merge_plus) terms.emplace_back(1.0, r.family);
  }
  const double norm = std::pow(static_cast<double>(N), static_cast<double>(loops.size()));
  const LatticeObservable f = [&](const Configuration& U) {
    Complex v = 0.0;
    for (const auto& [c, fam] : terms) v += c * wilson_loops_value(fam, U);
    return v / norm;
  };
  ActionSpec action;
  action.kind = ActionKind::Wilson;
  action.coupling = beta;
  const auto est = mc_lattice_observable(lattice, action, N, f, samples, seed, opts);
  WilsonMasterResult out;
  out.residual = est.value.real();
  out.stderr = est.stderr_real;
  out.samples = est.samples;
  out.terms = static_cast<int>(terms.size());
  out.scale = static_cast<double>(N) * length;
  return out;
}

}  // namespace ymx
