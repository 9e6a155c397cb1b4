// SPDX-License-Identifier: MIT
#include "ymx/channel.hpp"

#include <cmath>

#include "ymx/errors.hpp"
#include "ymx/montecarlo.hpp"
#include "ymx/weingarten.hpp"

namespace ymx {

namespace {

SpecLayout single_word_layout(const Word& w, const HighestWeight& label) {
  WordSpec spec;
  spec.words = {w};
  spec.labels = {label};
  return build_layout(spec);
}

std::vector<std::string> leg_strings(const SpecLayout& layout) {
  std::vector<std::string> legs;
  const auto& wl = layout.words.front();
  for (int r = 0; r < wl.length; ++r) {
    const Letter l = layout.spec.words.front()[r];
    std::string s = "e" + std::to_string(l.id) + (l.exponent < 0 ? "^-1" : "") + ":";
    for (int u = 0; u < wl.slots; ++u) {
      const auto& x = layout.occurrences[r * wl.slots + u];
      s += std::string(u ? "," : "") + (x.covariant ? "V" : "V*");
    }
    legs.push_back(s);
  }
  return legs;
}

}  // namespace

std::vector<LocalResolution> local_resolutions(const Lattice& lattice, const GaugeFixing& gauge, int p,
                                               const HighestWeight& label, const ResolutionOptions& opts) {
  if (p < 0 || p >= lattice.num_plaquettes()) throw ValidationError("plaquette id out of range");
  std::vector<LocalResolution> out;
  if (label.is_trivial()) {
    LocalResolution r;
    r.plaquette = p;
    r.label = label;
    r.tau = WalledBrauerDiagram::identity(0, 0);
    r.channel = "|" + r.tau.str();
    out.push_back(r);
    return out;
  }
  const Word w = gauge_fix_word(lattice.plaquette(p).boundary, gauge);
  if (w.empty()) throw ValidationError("plaquette boundary is contractible in the tree");
  const SpecLayout layout = single_word_layout(w, label);
  const auto legs = leg_strings(layout);
  std::string joined;
  for (std::size_t k = 0; k < legs.size(); ++k) joined += (k ? ";" : "") + legs[k];
  for (const auto& [tau, c] : layout.expansions.front()) {
    if (c == 0) continue;
    LocalResolution r;
    r.plaquette = p;
    r.label = label;
    r.id = static_cast<int>(out.size());
    r.coefficient = c * layout.label_factor;
    r.tau = tau;
    r.legs = legs;
    r.channel = joined + "|" + tau.str();
    out.push_back(r);
  }
  // Reconstruction of chi(U_p) at random gauge-fixed configurations.
  const int N = label.N();
  Rng rng(opts.seed, static_cast<std::uint64_t>(p));
  std::vector<Eigen::MatrixXcd> U(lattice.num_edges(), Eigen::MatrixXcd::Identity(N, N));
  std::vector<Eigen::MatrixXd> rho;
  for (const auto& r : out) rho.push_back(dense_matrix(r.tau, N));
  for (int probe = 0; probe < opts.probes; ++probe) {
    for (int e : gauge.non_tree) U[e] = haar_sample(N, rng);
    const Eigen::MatrixXcd H = word_holonomy(w, U);
    const Eigen::MatrixXcd R = rho_nm(H, label.n(), label.m());
    Complex sum = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      sum += to_double(out[k].coefficient) * (rho[k].cast<Complex>() * R).trace();
    }
    const Complex expect = character_of_matrix(label, H);
    if (std::abs(sum - expect) > opts.tolerance * std::max(1.0, std::abs(expect))) {
      throw ConsistencyError("local resolutions do not reconstruct the plaquette character");
    }
  }
  return out;
}

Rational plaquette_amplitude(const std::vector<LocalResolution>& resolutions, const std::string& channel) {
  Rational a = 0;
  for (const auto& r : resolutions) {
    if (r.channel == channel) a += r.coefficient;
  }
  return a;
}

Rational edge_kernel(const std::vector<std::pair<int, int>>& plain, const std::vector<std::pair<int, int>>& conjugate,
                     int N) {
  if (plain.size() != conjugate.size()) return 0;
  return entrywise_moment(plain, conjugate, N);
}

FactorTable build_factor_table(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                               const PlaquetteDecoration& alpha) {
  const int P = lattice.num_plaquettes();
  if (static_cast<int>(alpha.size()) != P) throw ValidationError("one label per plaquette is required");
  FactorTable table;
  table.N = alpha.empty() ? 1 : alpha.front().N();
  const int N = table.N;
  // Legs per edge: (row var, col var) for plain and conjugate entries.
  std::map<int, std::vector<std::pair<int, int>>> plain, conj;
  int next_var = 0;
  auto add_legs = [&](const SpecLayout& layout, int offset, const std::vector<int>& rep) {
    for (const auto& x : layout.occurrences) {
      const std::pair<int, int> leg{rep[x.row] + offset, rep[x.col] + offset};
      (x.plain ? plain : conj)[x.letter].push_back(leg);
    }
  };
  for (int p = 0; p < P; ++p) {
    if (alpha[p].N() != N) throw ValidationError("labels must share N");
    if (alpha[p].is_trivial()) continue;
    const Word w = gauge_fix_word(lattice.plaquette(p).boundary, gauge);
    const SpecLayout layout = single_word_layout(w, alpha[p]);
    const int nv = layout.num_vars;
    if (nv == 0) {
      table.scalar *= weyl_dim(alpha[p]).get_d();
      continue;
    }
    DenseTensor A;
    for (int v = 0; v < nv; ++v) A.vars.push_back(next_var + v);
    std::size_t size = 1;
    for (int v = 0; v < nv; ++v) size *= static_cast<std::size_t>(N);
    if (size > (std::size_t(1) << 24)) throw EngineRefusal("plaquette amplitude tensor too large");
    A.data.assign(size, 0.0);
    const auto& expansion = layout.expansions.front();
    for (std::size_t t = 0; t < expansion.size(); ++t) {
      const double c = to_double(expansion[t].second * layout.label_factor);
      if (c == 0.0) continue;
      const auto g = gadget_partners(layout, {static_cast<int>(t)});
      std::vector<int> comps;
      for (int v = 0; v < nv; ++v) {
        if (v < g[v]) comps.push_back(v);
      }
      std::vector<int> value(comps.size(), 0);
      while (true) {
        std::size_t index = 0;
        std::vector<int> assign(nv, 0);
        for (std::size_t k = 0; k < comps.size(); ++k) assign[comps[k]] = assign[g[comps[k]]] = value[k];
        for (int v = 0; v < nv; ++v) index = index * N + static_cast<std::size_t>(assign[v]);
        A.data[index] += c;
        long k = static_cast<long>(comps.size()) - 1;
        while (k >= 0 && ++value[k] == N) value[k--] = 0;
        if (k < 0) break;
      }
    }
    std::vector<int> rep(nv);
    for (int v = 0; v < nv; ++v) rep[v] = v;
    add_legs(layout, next_var, rep);
    next_var += nv;
    table.amplitudes.push_back(std::move(A));
  }
  for (const auto& l : loops) {
    lattice.check_loop(l);
    const Word w = gauge_fix_word(l, gauge);
    if (w.empty()) {
      table.scalar *= N;
      continue;
    }
    const SpecLayout layout = single_word_layout(w, HighestWeight::fundamental(N));
    // Junction deltas T_r = B_r are absorbed by relabeling.
    std::vector<int> rep(layout.num_vars);
    for (int r = 0; r < layout.words.front().length; ++r) {
      rep[layout.T(0, r, 0)] = layout.B(0, r, 0);
      rep[layout.B(0, r, 0)] = layout.B(0, r, 0);
    }
    add_legs(layout, next_var, rep);
    next_var += layout.num_vars;
  }
  for (int e : gauge.non_tree) {
    const auto& P_ = plain[e];
    const auto& M_ = conj[e];
    if (P_.size() != M_.size()) {
      table.unbalanced_edges.push_back(e);
      continue;
    }
    if (P_.empty()) continue;
    const int n = static_cast<int>(P_.size());
    const auto moment = haar_moment_tensor(n, N);
    DenseTensor K;
    for (const auto& leg : P_) K.vars.push_back(leg.first);
    for (const auto& leg : M_) K.vars.push_back(leg.first);
    for (const auto& leg : P_) K.vars.push_back(leg.second);
    for (const auto& leg : M_) K.vars.push_back(leg.second);
    K.data = moment->data;
    table.kernels.emplace(e, std::move(K));
  }
  return table;
}

double spin_foam_sum(const FactorTable& table) {
  if (!table.unbalanced_edges.empty()) return 0.0;
  TensorNetwork net(table.N);
  for (const auto& A : table.amplitudes) net.add(A);
  for (const auto& [e, K] : table.kernels) net.add(K);
  net.scale(table.scalar);
  return net.contract();
}

double spin_foam_sum(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                     const PlaquetteDecoration& alpha) {
  return spin_foam_sum(build_factor_table(lattice, gauge, loops, alpha));
}

DefectRatioResult defect_ratio(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                               const ActionSpec& action, int N, const Truncation& trunc) {
  DefectRatioResult res;
  res.defect_support = dual_incidence(lattice, gauge, loops).defect_support;
  auto in_support = [&](int e) {
    return std::find(res.defect_support.begin(), res.defect_support.end(), e) != res.defect_support.end();
  };
  auto partition = [&](const std::vector<LoopWord>& L, double& z, double& shell) {
    double shell_sum = 0.0;
    for_each_balanced_decoration(lattice, gauge, L, action, N, trunc,
                                 [&](const PlaquetteDecoration& alpha, double k, bool last) {
                                   ++res.balanced;
                                   const FactorTable table = build_factor_table(lattice, gauge, L, alpha);
                                   if (!L.empty()) {
                                     const FactorTable background = build_factor_table(lattice, gauge, {}, alpha);
                                     for (const auto& [e, K] : background.kernels) {
                                       if (in_support(e)) continue;
                                       auto it = table.kernels.find(e);
                                       if (it == table.kernels.end() || it->second.vars != K.vars || it->second.data != K.data) {
                                         throw ConsistencyError("edge kernel off the defect support depends on the loops");
                                       }
                                     }
                                   }
                                   const double term = k * spin_foam_sum(table);
                                   z += term;
                                   if (last) shell_sum += term;
                                 },
                                 &res.decorations);
    shell = std::abs(shell_sum);
  };
  partition({}, res.z_background, res.shell_background);
  if (std::abs(res.z_background) < trunc.floor) throw EngineRefusal("defect ratio: background partition function vanishes");
  if (loops.empty()) {
    res.z_loops = res.z_background;
    res.value = 1.0;
    return res;
  }
  partition(loops, res.z_loops, res.shell_loops);
  res.value = res.z_loops / res.z_background;
  res.shell = (res.shell_loops + std::abs(res.value) * res.shell_background) / std::abs(res.z_background);
  return res;
}

}  // namespace ymx
