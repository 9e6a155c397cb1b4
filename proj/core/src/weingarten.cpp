// SPDX-License-Identifier: MIT
#include "ymx/weingarten.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "ymx/errors.hpp"

namespace ymx {

Rational wg(const Partition& mu, int N) {
  const int n = mu.size();
  if (n < 1 || N < 1) throw ValidationError("wg requires n >= 1 and N >= 1");
  const BigInt nfact = factorial(n);
  Rational total = 0;
  for (const auto& lambda : partitions_of(n, N)) {
    const BigInt f = sym_dimension(lambda);
    const Partition conj = lambda.conjugate();
    Rational s_ones = 1;
    for (int i = 0; i < lambda.length(); ++i) {
      for (int j = 0; j < lambda[i]; ++j) {
        const int hook = (lambda[i] - j - 1) + (conj[j] - i - 1) + 1;
        s_ones *= Rational(N + j - i, hook);
      }
    }
    total += Rational(f * f) / (Rational(nfact * nfact) * s_ones) * Rational(sym_character(lambda, mu));
  }
  total.canonicalize();
  return total;
}

WgTable::WgTable(int n, int N) : n_(n), N_(N) {
  for (const auto& mu : partitions_of(n)) values_.emplace(mu, wg(mu, N));
}

const WgTable& wg_table(int n, int N) {
  static std::shared_mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<WgTable>> tables;
  const auto key = std::make_pair(n, N);
  {
    std::shared_lock lock(mutex);
    auto it = tables.find(key);
    if (it != tables.end()) return *it->second;
  }
  auto table = std::make_unique<WgTable>(n, N);
  std::unique_lock lock(mutex);
  return *tables.emplace(key, std::move(table)).first->second;
}

std::string word_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t k = 0; k < w.size(); ++k) {
    os << (k ? " " : "") << 'x' << w[k].id << (w[k].exponent < 0 ? "^-1" : "");
  }
  return os.str();
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return out;
}

Word cyclically_reduce(const Word& w) {
  Word stack;
  for (const auto& l : w) {
    if (!stack.empty() && stack.back().id == l.id && stack.back().exponent == -l.exponent) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  std::size_t a = 0, b = stack.size();
  while (b - a >= 2 && stack[a].id == stack[b - 1].id && stack[a].exponent == -stack[b - 1].exponent) {
    ++a;
    --b;
  }
  return Word(stack.begin() + static_cast<long>(a), stack.begin() + static_cast<long>(b));
}

int WordSpec::num_letters() const {
  int m = 0;
  for (const auto& w : words) {
    for (const auto& l : w) m = std::max(m, l.id + 1);
  }
  return m;
}

void validate(const WordSpec& spec) {
  if (spec.words.size() != spec.labels.size()) throw ValidationError("one label per word is required");
  for (const auto& label : spec.labels) {
    if (label.N() != spec.N()) throw ValidationError("all labels must share the same N");
  }
  for (const auto& w : spec.words) {
    for (const auto& l : w) {
      if (l.id < 0) throw ValidationError("letter ids must be nonnegative");
      if (l.exponent != 1 && l.exponent != -1) throw ValidationError("letter exponents must be +1 or -1");
    }
    if (cyclically_reduce(w).size() != w.size()) throw ValidationError("word is not cyclically reduced: " + word_string(w));
  }
}

int SpecLayout::T(int word, int position, int slot) const {
  const auto& L = words[word];
  const int r = ((position % L.length) + L.length) % L.length;
  return L.var_base + 2 * (r * L.slots + slot);
}

int SpecLayout::B(int word, int position, int slot) const { return T(word, position, slot) + 1; }

SpecLayout build_layout(const WordSpec& spec, const LayoutOptions& opts) {
  validate(spec);
  SpecLayout layout;
  layout.spec = spec;
  layout.N = spec.N();
  const int letters = spec.num_letters();
  layout.plus.assign(letters, {});
  layout.minus.assign(letters, {});
  layout.expansions.resize(spec.words.size());
  for (std::size_t i = 0; i < spec.words.size(); ++i) {
    const auto& label = spec.labels[i];
    WordLayout wl;
    wl.length = static_cast<int>(spec.words[i].size());
    wl.slots = label.slots();
    wl.covariant = label.n();
    if (wl.slots > 0 && wl.length == 0) {
      layout.label_factor *= Rational(weyl_dim(label));
      wl.slots = 0;
    }
    if (wl.slots == 0) {
      wl.length = 0;
      layout.words.push_back(wl);
      continue;
    }
    wl.var_base = layout.num_vars;
    layout.num_vars += 2 * wl.length * wl.slots;
    layout.words.push_back(wl);
    ProjectorOptions popts;
    popts.method = opts.method;
    const auto proj = isotypic_projector(label, popts);
    layout.expansions[i] = proj->expansion;
    layout.label_factor /= Rational(proj->multiplicity);
    layout.exact_coefficients = layout.exact_coefficients && proj->exact;
    const int positions = opts.insert_at_every_position ? wl.length : 1;
    for (int r = 0; r < positions; ++r) layout.sites.emplace_back(static_cast<int>(i), r);
  }
  for (std::size_t i = 0; i < spec.words.size(); ++i) {
    const auto& wl = layout.words[i];
    for (int r = 0; r < wl.length; ++r) {
      const Letter l = spec.words[i][r];
      for (int u = 0; u < wl.slots; ++u) {
        Occurrence x;
        x.word = static_cast<int>(i);
        x.position = r;
        x.slot = u;
        x.letter = l.id;
        x.exponent = l.exponent;
        x.covariant = u < wl.covariant;
        x.plain = x.covariant == (l.exponent == 1);
        const int in = layout.B(x.word, r, u);
        const int out = layout.T(x.word, r + 1, u);
        x.row = l.exponent == 1 ? in : out;
        x.col = l.exponent == 1 ? out : in;
        const int idx = static_cast<int>(layout.occurrences.size());
        layout.occurrences.push_back(x);
        (x.plain ? layout.plus : layout.minus)[l.id].push_back(idx);
      }
    }
  }
  for (int a = 0; a < letters; ++a) {
    if (layout.plus[a].size() != layout.minus[a].size()) layout.balanced = false;
  }
  return layout;
}

const std::vector<LetterPairing>& letter_pairings(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<std::vector<LetterPairing>>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto list = std::make_unique<std::vector<LetterPairing>>();
  const auto perms = all_permutations(n);
  const auto classes = partitions_of(n);
  for (const auto& a : perms) {
    const Permutation ainv = a.inverse();
    for (const auto& b : perms) {
      const Partition ct = cycle_type(ainv.compose(b));
      const int idx = static_cast<int>(std::find(classes.begin(), classes.end(), ct) - classes.begin());
      list->push_back({a, b, idx});
    }
  }
  return *cache.emplace(n, std::move(list)).first->second;
}

std::vector<int> gadget_partners(const SpecLayout& layout, const std::vector<int>& tau) {
  std::vector<int> g(layout.num_vars, -1);
  for (std::size_t i = 0; i < layout.words.size(); ++i) {
    const auto& wl = layout.words[i];
    for (int r = 0; r < wl.length; ++r) {
      for (int u = 0; u < wl.slots; ++u) {
        const int t = layout.T(static_cast<int>(i), r, u);
        const int b = layout.B(static_cast<int>(i), r, u);
        g[t] = b;
        g[b] = t;
      }
    }
  }
  for (std::size_t s = 0; s < layout.sites.size(); ++s) {
    const auto [i, r] = layout.sites[s];
    const auto& d = layout.expansions[i][tau[s]].first;
    auto var = [&](int v) {
      const int slot = d.slot_of(v);
      return d.is_top(v) ? layout.T(i, r, slot) : layout.B(i, r, slot);
    };
    for (int v = 0; v < 2 * d.slots(); ++v) g[var(v)] = var(d.mate(v));
  }
  return g;
}

void haar_partners(const SpecLayout& layout, int letter, const LetterPairing& p, std::vector<int>& partner) {
  const auto& P = layout.plus[letter];
  const auto& M = layout.minus[letter];
  for (std::size_t k = 0; k < P.size(); ++k) {
    const auto& x = layout.occurrences[P[k]];
    const auto& y = layout.occurrences[M[p.alpha(static_cast<int>(k))]];
    const auto& z = layout.occurrences[M[p.beta(static_cast<int>(k))]];
    partner[x.row] = y.row;
    partner[y.row] = x.row;
    partner[x.col] = z.col;
    partner[z.col] = x.col;
  }
}

int index_cycles(const std::vector<int>& gadget, const std::vector<int>& haar) {
  const std::size_t V = gadget.size();
  std::vector<char> seen(V, 0);
  int cycles = 0;
  for (std::size_t v = 0; v < V; ++v) {
    if (seen[v]) continue;
    ++cycles;
    int x = static_cast<int>(v);
    do {
      seen[x] = 1;
      const int y = gadget[x];
      seen[y] = 1;
      x = haar[y];
    } while (x != static_cast<int>(v));
  }
  return cycles;
}

Rational entrywise_moment(const std::vector<std::pair<int, int>>& plain,
                          const std::vector<std::pair<int, int>>& conjugated, int N) {
  const int n = static_cast<int>(plain.size());
  if (static_cast<int>(conjugated.size()) != n) return 0;
  for (const auto& [i, j] : plain) {
    if (i < 0 || i >= N || j < 0 || j >= N) throw ValidationError("matrix index out of range");
  }
  for (const auto& [i, j] : conjugated) {
    if (i < 0 || i >= N || j < 0 || j >= N) throw ValidationError("matrix index out of range");
  }
  if (n == 0) return 1;
  const auto& table = wg_table(n, N);
  const auto classes = partitions_of(n);
  Rational total = 0;
  for (const auto& p : letter_pairings(n)) {
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      ok = plain[k].first == conjugated[p.alpha(k)].first && plain[k].second == conjugated[p.beta(k)].second;
    }
    if (ok) total += table.value(classes[p.class_index]);
  }
  return total;
}

double word_integral_work(const SpecLayout& layout) {
  double tau = 1.0, sigma = 1.0;
  for (const auto& [i, r] : layout.sites) tau *= static_cast<double>(layout.expansions[i].size());
  for (const auto& P : layout.plus) {
    double f = 1.0;
    for (std::size_t k = 2; k <= P.size(); ++k) f *= static_cast<double>(k);
    sigma *= f * f;
  }
  return tau * sigma;
}

WordIntegralResult character_word_integral(const WordSpec& spec, const WordIntegralOptions& opts) {
  const SpecLayout layout = build_layout(spec, opts.layout);
  WordIntegralResult res;
  res.full_index_count = 1.0;
  for (const auto& wl : layout.words) {
    double f = 1.0;
    for (int k = 2; k <= wl.slots; ++k) f *= k;
    for (int r = 0; r < wl.length; ++r) res.full_index_count *= f;
  }
  res.is_exact = layout.exact_coefficients;
  if (!layout.balanced) {
    res.short_circuited = true;
    return res;
  }
  if (layout.sites.empty()) {
    res.exact = layout.label_factor;
    res.value = res.exact.get_d();
    return res;
  }
  res.tau_terms = 1.0;
  for (const auto& [i, r] : layout.sites) res.tau_terms *= static_cast<double>(layout.expansions[i].size());
  res.sigma_terms = word_integral_work(layout) / res.tau_terms;
  if (res.tau_terms * res.sigma_terms > opts.max_work) {
    throw EngineRefusal("character_word_integral: " + std::to_string(res.tau_terms * res.sigma_terms) +
                        " terms exceed the enumeration guard");
  }

  const int letters = static_cast<int>(layout.plus.size());
  const int N = layout.N;
  std::vector<const std::vector<LetterPairing>*> pairings(letters);
  std::vector<std::vector<Rational>> wg_values(letters);
  std::vector<std::uint64_t> radix(letters);
  for (int a = 0; a < letters; ++a) {
    const int n = static_cast<int>(layout.plus[a].size());
    pairings[a] = &letter_pairings(n);
    const auto classes = partitions_of(n);
    radix[a] = classes.size();
    for (const auto& mu : classes) wg_values[a].push_back(n == 0 ? Rational(1) : wg_table(n, N).value(mu));
  }
  const std::uint64_t cycle_radix = static_cast<std::uint64_t>(layout.num_vars) + 1;

  std::vector<int> site_radix;
  for (const auto& [i, r] : layout.sites) site_radix.push_back(static_cast<int>(layout.expansions[i].size()));
  const long total_tau = static_cast<long>(res.tau_terms);

  auto decode_tau = [&](long index) {
    std::vector<int> tau(site_radix.size());
    for (long s = static_cast<long>(site_radix.size()) - 1; s >= 0; --s) {
      tau[s] = static_cast<int>(index % site_radix[s]);
      index /= site_radix[s];
    }
    return tau;
  };

  auto worker = [&](long begin, long end, std::map<std::uint64_t, Rational>& acc) {
    std::vector<int> haar(layout.num_vars, -1);
    std::unordered_map<std::uint64_t, long> hist;
    std::vector<int> sigma(letters, 0);
    for (long t = begin; t < end; ++t) {
      const auto tau = decode_tau(t);
      Rational coeff = 1;
      for (std::size_t s = 0; s < tau.size(); ++s) coeff *= layout.expansions[layout.sites[s].first][tau[s]].second;
      if (coeff == 0) continue;
      const auto gadget = gadget_partners(layout, tau);
      hist.clear();
      std::fill(sigma.begin(), sigma.end(), 0);
      for (int a = 0; a < letters; ++a) {
        if (!layout.plus[a].empty()) haar_partners(layout, a, (*pairings[a])[0], haar);
      }
      while (true) {
        std::uint64_t key = 0;
        for (int a = 0; a < letters; ++a) key = key * radix[a] + static_cast<std::uint64_t>((*pairings[a])[sigma[a]].class_index);
        key = key * cycle_radix + static_cast<std::uint64_t>(index_cycles(gadget, haar));
        ++hist[key];
        int a = letters - 1;
        while (a >= 0) {
          if (++sigma[a] < static_cast<int>(pairings[a]->size())) {
            haar_partners(layout, a, (*pairings[a])[sigma[a]], haar);
            break;
          }
          sigma[a] = 0;
          if (!layout.plus[a].empty()) haar_partners(layout, a, (*pairings[a])[0], haar);
          --a;
        }
        if (a < 0) break;
      }
      for (const auto& [key, count] : hist) acc[key] += coeff * Rational(count);
    }
  };

  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(total_tau)));
  std::vector<std::map<std::uint64_t, Rational>> partial(threads);
  if (threads == 1) {
    worker(0, total_tau, partial[0]);
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) {
      const long b = total_tau * k / threads;
      const long e = total_tau * (k + 1) / threads;
      pool.emplace_back(worker, b, e, std::ref(partial[k]));
    }
    for (auto& th : pool) th.join();
  }
  std::map<std::uint64_t, Rational> acc;
  for (const auto& part : partial) {
    for (const auto& [key, c] : part) acc[key] += c;
  }

  Rational total = 0;
  for (const auto& [key, c] : acc) {
    if (c == 0) continue;
    std::uint64_t rest = key;
    const int cycles = static_cast<int>(rest % cycle_radix);
    rest /= cycle_radix;
    Rational term = c * rational_pow(Rational(N), cycles);
    for (int a = letters - 1; a >= 0; --a) {
      term *= wg_values[a][rest % radix[a]];
      rest /= radix[a];
    }
    total += term;
  }
  total *= layout.label_factor;
  total.canonicalize();
  res.exact = total;
  res.value = total.get_d();
  return res;
}

}  // namespace ymx
