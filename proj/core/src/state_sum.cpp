// SPDX-License-Identifier: MIT
#include "ymx/state_sum.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>

#include "ymx/errors.hpp"
#include "ymx/tensor_network.hpp"
#include "ymx/weingarten.hpp"

namespace ymx {

QuadratureResult wilson_coefficient_quadrature(const HighestWeight& w, double beta, double rel_tol, long max_points) {
  const int N = w.N();
  QuadratureResult res;
  double nfact = 1.0;
  for (int k = 2; k <= N; ++k) nfact *= k;
  double previous = 0.0;
  bool have_previous = false;
  for (long M = 16;; M *= 2) {
    double total_points = 1.0;
    for (int k = 0; k < N; ++k) total_points *= static_cast<double>(M);
    if (total_points > static_cast<double>(max_points)) break;
    std::vector<long> idx(N, 0);
    std::vector<Complex> z(N);
    double sum = 0.0, mass = 0.0;
    const double h = 2.0 * std::numbers::pi / static_cast<double>(M);
    while (true) {
      double re = 0.0;
      for (int k = 0; k < N; ++k) {
        const double th = h * (static_cast<double>(idx[k]) + 0.5 * k / N);
        z[k] = std::polar(1.0, th);
        re += std::cos(th);
      }
      double vdm = 1.0;
      for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) vdm *= std::norm(z[i] - z[j]);
      }
      const double base = vdm * std::exp(beta * re);
      sum += base * std::conj(weyl_character(w, z)).real();
      mass += base;
      int k = N - 1;
      while (k >= 0 && ++idx[k] == M) idx[k--] = 0;
      if (k < 0) break;
    }
    const double value = sum / total_points / nfact;
    const double floor = 1e-15 * mass / total_points / nfact;
    if (have_previous && std::abs(value - previous) <= rel_tol * std::abs(value) + floor) {
      res.value = value;
      res.points_per_axis = M;
      res.converged = true;
      return res;
    }
    previous = value;
    have_previous = true;
    res.value = value;
    res.points_per_axis = M;
  }
  return res;
}

namespace {

std::string coupling_key(double c) {
  std::ostringstream os;
  os << std::hexfloat << c;
  return os.str();
}

std::shared_mutex coeff_mutex;
std::map<std::string, double> coeff_cache;

}  // namespace

double action_coeff(const HighestWeight& w, const ActionSpec& action, int N, int plaquette) {
  if (w.N() != N) throw ValidationError("label does not match N");
  const double c = action.coupling_at(plaquette);
  if (!(c > 0)) throw ValidationError("coupling must be positive");
  if (action.kind == ActionKind::HeatKernel) {
    return weyl_dim(w).get_d() * std::exp(-static_cast<double>(casimir(w)) * c / 2.0);
  }
  const std::string key = w.str() + "|" + coupling_key(c);
  {
    std::shared_lock lock(coeff_mutex);
    auto it = coeff_cache.find(key);
    if (it != coeff_cache.end()) return it->second;
  }
  const auto q = wilson_coefficient_quadrature(w, c);
  if (!q.converged) throw EngineRefusal("Wilson coefficient quadrature did not converge for " + w.str());
  std::unique_lock lock(coeff_mutex);
  coeff_cache[key] = q.value;
  return q.value;
}

double kappa(const PlaquetteDecoration& alpha, const ActionSpec& action, int N) {
  double k = 1.0;
  for (std::size_t p = 0; p < alpha.size(); ++p) {
    k *= action_coeff(alpha[p], action, N, static_cast<int>(p));
    if (k == 0.0) return 0.0;
  }
  return k;
}

std::string top_engine_name(TopEngine e) {
  switch (e) {
    case TopEngine::Abelian: return "abelian";
    case TopEngine::Exact: return "exact";
    case TopEngine::Network: return "network";
  }
  return "?";
}

namespace {

std::shared_mutex top_mutex;
std::map<std::string, TopCoeffResult> top_cache;
long top_hits = 0, top_misses = 0;

}  // namespace

CacheStats topological_cache_stats() {
  std::shared_lock lock(top_mutex);
  return {top_hits, top_misses, static_cast<long>(top_cache.size())};
}

void clear_topological_cache() {
  std::unique_lock lock(top_mutex);
  top_cache.clear();
  top_hits = top_misses = 0;
}

TopCoeffResult topological_coeff(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                                 const PlaquetteDecoration& alpha, const TopCoeffOptions& opts) {
  std::vector<LoopWord> boundaries;
  for (int p = 0; p < lattice.num_plaquettes(); ++p) boundaries.push_back(lattice.plaquette(p).boundary);
  return topological_coeff(lattice, gauge, loops, alpha, boundaries, opts);
}

TopCoeffResult topological_coeff(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                                 const PlaquetteDecoration& alpha, const std::vector<LoopWord>& boundaries,
                                 const TopCoeffOptions& opts) {
  const int P = lattice.num_plaquettes();
  if (static_cast<int>(alpha.size()) != P || static_cast<int>(boundaries.size()) != P) {
    throw ValidationError("one label and one boundary word per plaquette are required");
  }
  const int N = alpha.empty() ? 1 : alpha.front().N();
  WordSpec spec;
  for (int p = 0; p < P; ++p) {
    lattice.check_loop(boundaries[p]);
    if (alpha[p].N() != N) throw ValidationError("labels must share N");
    if (alpha[p].is_trivial()) continue;
    spec.words.push_back(gauge_fix_word(boundaries[p], gauge));
    spec.labels.push_back(alpha[p]);
  }
  for (const auto& l : loops) {
    lattice.check_loop(l);
    spec.words.push_back(gauge_fix_word(l, gauge));
    spec.labels.push_back(HighestWeight::fundamental(N));
  }

  std::string key = "N" + std::to_string(N);
  for (std::size_t i = 0; i < spec.words.size(); ++i) key += "|" + word_string(spec.words[i]) + ":" + spec.labels[i].str();
  if (opts.use_cache) {
    std::unique_lock lock(top_mutex);
    auto it = top_cache.find(key);
    if (it != top_cache.end()) {
      ++top_hits;
      return it->second;
    }
    ++top_misses;
  }

  TopCoeffResult res;
  if (N == 1) {
    // Every character is z^k: the integral is 1 exactly when each letter's net power vanishes.
    std::map<int, long> net;
    for (std::size_t i = 0; i < spec.words.size(); ++i) {
      const int k = spec.labels[i].charge();
      for (const auto& l : spec.words[i]) net[l.id] += static_cast<long>(k) * l.exponent;
    }
    bool balanced = true;
    for (const auto& [id, v] : net) balanced = balanced && v == 0;
    res.engine = TopEngine::Abelian;
    res.is_exact = true;
    res.exact = balanced ? 1 : 0;
    res.value = balanced ? 1.0 : 0.0;
  } else {
    const SpecLayout layout = build_layout(spec);
    if (!layout.balanced || word_integral_work(layout) <= opts.max_work) {
      WordIntegralOptions wopts;
      wopts.max_work = std::max(opts.max_work, 1.0);
      const auto r = layout.balanced ? character_word_integral(spec, wopts) : WordIntegralResult{};
      res.engine = TopEngine::Exact;
      res.is_exact = r.is_exact;
      res.exact = r.exact;
      res.value = r.value;
    } else {
      res.engine = TopEngine::Network;
      res.is_exact = false;
      res.value = moment_network_integral(spec).value;
    }
  }
  if (opts.use_cache) {
    std::unique_lock lock(top_mutex);
    top_cache.emplace(key, res);
  }
  return res;
}

void for_each_balanced_decoration(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                                  const ActionSpec& action, int N, const Truncation& trunc,
                                  const std::function<void(const PlaquetteDecoration&, double, bool)>& visit,
                                  long* total) {
  action.validate(lattice.num_plaquettes());
  const int P = lattice.num_plaquettes();
  const int E = lattice.num_edges();
  const int s = trunc.box_for(N);
  const auto box = weights_in_box(N, s);
  const int W = static_cast<int>(box.size());
  std::vector<int> size(W), charge(W);
  for (int k = 0; k < W; ++k) {
    size[k] = N == 1 ? std::abs(box[k].charge()) : box[k].n() + box[k].m();
    charge[k] = box[k].charge();
  }
  std::vector<std::vector<double>> coeff(P, std::vector<double>(W));
  double trivial = 1.0;
  for (int p = 0; p < P; ++p) {
    for (int k = 0; k < W; ++k) coeff[p][k] = action_coeff(box[k], action, N, p);
    trivial *= coeff[p][0];
  }
  std::vector<std::vector<int>> pnet(P, std::vector<int>(E, 0));
  for (int p = 0; p < P; ++p) {
    for (const auto& l : gauge_fix_word(lattice.plaquette(p).boundary, gauge)) pnet[p][l.id] += l.exponent;
  }
  std::vector<int> lnet(E, 0);
  for (const auto& l : loops) {
    lattice.check_loop(l);
    for (const auto& x : gauge_fix_word(l, gauge)) lnet[x.id] += x.exponent;
  }
  std::vector<int> idx(P, 0);
  PlaquetteDecoration alpha(P, box[0]);
  long count = 0;
  std::vector<int> net(E);
  while (true) {
    ++count;
    net = lnet;
    for (int p = 0; p < P; ++p) {
      if (charge[idx[p]] == 0) continue;
      for (int e = 0; e < E; ++e) net[e] += charge[idx[p]] * pnet[p][e];
    }
    bool balanced = true;
    for (int e = 0; e < E && balanced; ++e) balanced = net[e] == 0;
    if (balanced) {
      double k = 1.0;
      int largest = 0;
      for (int p = 0; p < P; ++p) {
        k *= coeff[p][idx[p]];
        largest = std::max(largest, size[idx[p]]);
      }
      if (std::abs(k) >= trunc.floor * std::abs(trivial)) {
        for (int p = 0; p < P; ++p) alpha[p] = box[idx[p]];
        visit(alpha, k, largest == s);
      }
    }
    int p = P - 1;
    while (p >= 0 && ++idx[p] == W) idx[p--] = 0;
    if (p < 0) break;
  }
  if (total) *total = count;
}

StateSumResult wilson_expectation_statesum(const Lattice& lattice, const GaugeFixing& gauge,
                                           const std::vector<LoopWord>& loops, const ActionSpec& action, int N,
                                           const Truncation& trunc) {
  StateSumResult res;
  res.box = trunc.box_for(N);
  auto accumulate = [&](const std::vector<LoopWord>& L, double& sum, double& shell, long& balanced) {
    double shell_sum = 0.0;
    for_each_balanced_decoration(lattice, gauge, L, action, N, trunc,
                                 [&](const PlaquetteDecoration& alpha, double k, bool last) {
                                   ++balanced;
                                   const double term = k * topological_coeff(lattice, gauge, L, alpha).value;
                                   sum += term;
                                   if (last) shell_sum += term;
                                 },
                                 &res.decorations);
    shell = std::abs(shell_sum);
  };
  long bal_num = 0, bal_den = 0;
  accumulate({}, res.denominator, res.shell_denominator, bal_den);
  if (std::abs(res.denominator) < trunc.floor) {
    throw EngineRefusal("state sum: background partition function below the magnitude floor");
  }
  if (loops.empty()) {
    res.numerator = res.denominator;
    res.shell_numerator = res.shell_denominator;
    res.value = 1.0;
    res.shell = 0.0;
  } else {
    accumulate(loops, res.numerator, res.shell_numerator, bal_num);
    res.value = res.numerator / res.denominator;
    res.shell = (res.shell_numerator + std::abs(res.value) * res.shell_denominator) / std::abs(res.denominator);
  }
  res.balanced = bal_num + bal_den;
  res.cache = topological_cache_stats();
  return res;
}

}  // namespace ymx
