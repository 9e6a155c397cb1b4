// SPDX-License-Identifier: MIT
#include "ymx/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ymx/errors.hpp"
#include "ymx/tensor_network.hpp"

namespace ymx {

char face_tag_char(FaceTag tag) {
  switch (tag) {
    case FaceTag::P: return 'P';
    case FaceTag::G: return 'G';
    case FaceTag::H: return 'H';
    case FaceTag::C: return 'C';
    case FaceTag::Y: return 'Y';
    case FaceTag::B: return 'B';
  }
  return '?';
}

int GluedSurface::add_face(FaceTag tag, const std::vector<std::string>& side_labels) {
  if (side_labels.empty()) throw ConsistencyError("faces need at least one side");
  const int f = static_cast<int>(faces_.size());
  SurfaceFace face;
  face.tag = tag;
  for (std::size_t k = 0; k < side_labels.size(); ++k) {
    face.sides.push_back(static_cast<int>(sides_.size()));
    sides_.push_back({f, static_cast<int>(k), -1, side_labels[k]});
  }
  faces_.push_back(std::move(face));
  return f;
}

void GluedSurface::glue(int a, int b) {
  if (a == b || sides_.at(a).mate != -1 || sides_.at(b).mate != -1) throw ConsistencyError("inconsistent gluing");
  sides_[a].mate = b;
  sides_[b].mate = a;
}

int GluedSurface::count_faces(FaceTag tag) const {
  return static_cast<int>(std::count_if(faces_.begin(), faces_.end(), [&](const SurfaceFace& f) { return f.tag == tag; }));
}

namespace {

int next_in_face(const std::vector<SurfaceFace>& faces, const std::vector<SurfaceSide>& sides, int s) {
  const auto& f = faces[sides[s].face];
  return f.sides[(sides[s].position + 1) % f.sides.size()];
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

std::vector<std::vector<int>> GluedSurface::boundary_cycles() const {
  std::vector<std::vector<int>> cycles;
  std::vector<char> seen(sides_.size(), 0);
  for (std::size_t s0 = 0; s0 < sides_.size(); ++s0) {
    if (sides_[s0].mate != -1 || seen[s0]) continue;
    std::vector<int> cycle;
    int s = static_cast<int>(s0);
    do {
      seen[s] = 1;
      cycle.push_back(s);
      int t = next_in_face(faces_, sides_, s);
      std::size_t guard = 0;
      while (sides_[t].mate != -1) {
        t = next_in_face(faces_, sides_, sides_[t].mate);
        if (++guard > sides_.size()) throw ConsistencyError("boundary walk does not close");
      }
      s = t;
      if (seen[s] && s != static_cast<int>(s0)) throw ConsistencyError("boundary walk revisits a side");
    } while (s != static_cast<int>(s0));
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

EulerData GluedSurface::euler() const {
  const int S = static_cast<int>(sides_.size());
  std::vector<int> parent(2 * S);
  std::iota(parent.begin(), parent.end(), 0);
  auto unite = [&](int a, int b) { parent[find_root(parent, a)] = find_root(parent, b); };
  int glued = 0, free_sides = 0;
  for (int s = 0; s < S; ++s) {
    unite(2 * s + 1, 2 * next_in_face(faces_, sides_, s));
    const int t = sides_[s].mate;
    if (t == -1) {
      ++free_sides;
    } else {
      if (sides_[t].mate != s) throw ConsistencyError("gluing is not an involution");
      if (s < t) ++glued;
      unite(2 * s, 2 * t + 1);
      unite(2 * s + 1, 2 * t);
    }
  }
  EulerData d;
  for (int x = 0; x < 2 * S; ++x) d.V += find_root(parent, x) == x;
  d.E = glued + free_sides;
  d.F = static_cast<int>(faces_.size());
  d.chi = d.V - d.E + d.F;
  d.boundary = free_sides == 0 ? 0 : static_cast<int>(boundary_cycles().size());
  return d;
}

GluedSurface GluedSurface::capped() const {
  GluedSurface out = *this;
  for (const auto& cycle : boundary_cycles()) {
    std::vector<std::string> labels;
    for (auto it = cycle.rbegin(); it != cycle.rend(); ++it) labels.push_back("c(" + sides_[*it].label + ")");
    const int f = out.add_face(FaceTag::C, labels);
    const auto& cs = out.faces_[f].sides;
    for (std::size_t k = 0; k < cycle.size(); ++k) out.glue(cs[cycle.size() - 1 - k], cycle[k]);
  }
  return out;
}

GluedSurface GluedSurface::uncapped() const {
  GluedSurface out;
  std::vector<int> new_id(sides_.size(), -1);
  for (const auto& f : faces_) {
    if (f.tag == FaceTag::C) continue;
    std::vector<std::string> labels;
    for (int s : f.sides) labels.push_back(sides_[s].label);
    const int g = out.add_face(f.tag, labels);
    for (std::size_t k = 0; k < f.sides.size(); ++k) new_id[f.sides[k]] = out.faces_[g].sides[k];
  }
  for (std::size_t s = 0; s < sides_.size(); ++s) {
    const int t = sides_[s].mate;
    if (new_id[s] == -1 || t == -1 || new_id[t] == -1 || static_cast<int>(s) > t) continue;
    out.glue(new_id[s], new_id[t]);
  }
  return out;
}

std::string GluedSurface::canonical_form() const {
  std::vector<std::string> words;
  for (const auto& f : faces_) {
    std::vector<std::string> items;
    for (int s : f.sides) {
      const int t = sides_[s].mate;
      items.push_back(sides_[s].label + ">" + (t == -1 ? std::string("*") : sides_[t].label));
    }
    std::string best;
    for (std::size_t rot = 0; rot < items.size(); ++rot) {
      std::string cand;
      for (std::size_t k = 0; k < items.size(); ++k) cand += items[(rot + k) % items.size()] + ",";
      if (rot == 0 || cand < best) best = cand;
    }
    words.push_back(std::string(1, face_tag_char(f.tag)) + "[" + best + "]");
  }
  std::sort(words.begin(), words.end());
  std::string out;
  for (const auto& w : words) out += w + ";";
  return out;
}

namespace {

std::string slot_label(int i, int r, int u) {
  return std::to_string(i) + "." + std::to_string(r) + "." + std::to_string(u);
}

Rational pairing_weight(int n, const LetterPairing& p, int N) {
  if (n == 0) return 1;
  return wg_table(n, N).value(partitions_of(n)[p.class_index]);
}

}  // namespace

SurfaceTerm build_glued_surface(const SpecLayout& layout, const std::vector<int>& tau, const std::vector<int>& sigma) {
  if (tau.size() != layout.sites.size()) throw ValidationError("one diagram index per gadget site is required");
  if (sigma.size() != layout.plus.size()) throw ValidationError("one pairing index per letter is required");
  if (!layout.balanced) throw ValidationError("unbalanced specification has no Haar pairings");
  SurfaceTerm term;
  GluedSurface& S = term.surface;
  const int num_occ = static_cast<int>(layout.occurrences.size());
  std::vector<int> port_side(layout.num_vars, -1);  // P side of the port at T(i,r,u)
  std::vector<int> occ_side(num_occ, -1);
  std::vector<int> occ_of_B(layout.num_vars, -1);
  for (int x = 0; x < num_occ; ++x) {
    const auto& o = layout.occurrences[x];
    occ_of_B[layout.B(o.word, o.position, o.slot)] = x;
  }

  for (std::size_t w = 0; w < layout.words.size(); ++w) {
    const int i = static_cast<int>(w);
    const auto& wl = layout.words[i];
    for (int u = 0; u < wl.slots; ++u) {
      std::vector<std::string> labels;
      std::vector<std::pair<bool, int>> kinds;  // (is port, var or occurrence)
      auto add_port = [&](int r) {
        labels.push_back("q" + slot_label(i, r, u));
        kinds.emplace_back(true, layout.T(i, r, u));
      };
      auto add_occ = [&](int r) {
        labels.push_back("o" + slot_label(i, r, u));
        kinds.emplace_back(false, occ_of_B[layout.B(i, r, u)]);
      };
      if (u < wl.covariant) {
        for (int r = 0; r < wl.length; ++r) {
          add_port(r);
          add_occ(r);
        }
      } else {
        for (int r = wl.length - 1; r >= 0; --r) {
          add_occ(r);
          add_port(r);
        }
      }
      const int f = S.add_face(FaceTag::P, labels);
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        (kinds[k].first ? port_side : occ_side)[kinds[k].second] = S.faces()[f].sides[k];
      }
    }
  }

  std::map<std::pair<int, int>, int> site_index;
  for (std::size_t s = 0; s < layout.sites.size(); ++s) site_index[layout.sites[s]] = static_cast<int>(s);
  for (std::size_t w = 0; w < layout.words.size(); ++w) {
    const int i = static_cast<int>(w);
    const auto& wl = layout.words[i];
    for (int r = 0; r < wl.length; ++r) {
      WalledBrauerDiagram d = WalledBrauerDiagram::identity(wl.covariant, wl.slots - wl.covariant);
      auto it = site_index.find({i, r});
      if (it != site_index.end()) {
        const auto& [diagram, c] = layout.expansions[i].at(tau[it->second]);
        d = diagram;
        term.coefficient *= c;
        term.h += d.horizontal_strands();
      }
      std::vector<char> visited(wl.slots, 0);
      for (int u0 = 0; u0 < wl.slots; ++u0) {
        if (visited[u0]) continue;
        std::vector<std::string> labels;
        std::vector<int> ports;
        int u = u0;
        do {
          visited[u] = 1;
          labels.push_back("q" + slot_label(i, r, u));
          ports.push_back(layout.T(i, r, u));
          const int v = d.is_covariant_slot(u) ? d.top(u) : d.bottom(u);
          const int m = d.mate(v);
          labels.push_back("w" + slot_label(i, r, v));
          const int next = d.slot_of(m);
          if (d.is_covariant_slot(next) == d.is_top(m)) throw ConsistencyError("gadget strand enters a port at the wrong end");
          u = next;
        } while (u != u0);
        const int f = S.add_face(FaceTag::G, labels);
        for (std::size_t k = 0; k < ports.size(); ++k) S.glue(S.faces()[f].sides[2 * k], port_side[ports[k]]);
      }
    }
  }

  for (std::size_t a = 0; a < layout.plus.size(); ++a) {
    const auto& P = layout.plus[a];
    const auto& M = layout.minus[a];
    const int n = static_cast<int>(P.size());
    if (n == 0) continue;
    const auto& p = letter_pairings(n).at(sigma[a]);
    term.coefficient *= pairing_weight(n, p, layout.N);
    const Permutation step = p.beta.inverse().compose(p.alpha);
    std::vector<char> visited(n, 0);
    for (int k0 = 0; k0 < n; ++k0) {
      if (visited[k0]) continue;
      std::vector<std::string> labels;
      std::vector<int> occs;
      int k = k0;
      do {
        visited[k] = 1;
        const int x = P[k];
        const int y = M[p.alpha(k)];
        const auto& ox = layout.occurrences[x];
        const auto& oy = layout.occurrences[y];
        labels.push_back("o" + slot_label(ox.word, ox.position, ox.slot));
        occs.push_back(x);
        labels.push_back("r" + slot_label(ox.word, ox.position, ox.slot));
        labels.push_back("o" + slot_label(oy.word, oy.position, oy.slot));
        occs.push_back(y);
        labels.push_back("c" + slot_label(oy.word, oy.position, oy.slot));
        k = step(k);
      } while (k != k0);
      const int f = S.add_face(FaceTag::H, labels);
      for (std::size_t j = 0; j < occs.size(); ++j) S.glue(S.faces()[f].sides[2 * j], occ_side[occs[j]]);
    }
  }
  term.coefficient *= layout.label_factor;

  std::vector<int> haar(layout.num_vars, -1);
  for (std::size_t a = 0; a < layout.plus.size(); ++a) {
    if (!layout.plus[a].empty()) haar_partners(layout, static_cast<int>(a), letter_pairings(layout.plus[a].size())[sigma[a]], haar);
  }
  term.index_cycles = layout.num_vars == 0 ? 0 : index_cycles(gadget_partners(layout, tau), haar);
  term.euler = S.euler();
  term.capped = S.capped();
  term.capped_euler = term.capped.euler();
  if (term.euler.boundary != term.index_cycles) throw ConsistencyError("boundary components differ from index cycles");
  if (term.capped_euler.boundary != 0) throw ConsistencyError("capping left free sides");
  if (term.capped_euler.chi != term.euler.chi + term.euler.boundary) throw ConsistencyError("capping changed the vertex set");
  return term;
}

SurfaceExpansion surface_expansion(const WordSpec& spec, const SurfaceExpansionOptions& opts) {
  const SpecLayout layout = build_layout(spec, opts.layout);
  SurfaceExpansion out;
  out.is_exact = layout.exact_coefficients;
  if (!layout.balanced) return out;
  if (layout.sites.empty()) {
    out.total = layout.label_factor;
    return out;
  }
  if (word_integral_work(layout) > opts.max_terms) {
    throw EngineRefusal("surface_expansion: " + std::to_string(word_integral_work(layout)) + " terms exceed the enumeration guard");
  }
  const int N = layout.N;
  const int letters = static_cast<int>(layout.plus.size());
  std::vector<int> tau(layout.sites.size(), 0), sigma(letters, 0);
  std::map<std::string, SurfaceClass> classes;
  auto advance = [](std::vector<int>& digits, const std::function<int(std::size_t)>& radix) {
    for (long k = static_cast<long>(digits.size()) - 1; k >= 0; --k) {
      if (++digits[k] < radix(k)) return true;
      digits[k] = 0;
    }
    return false;
  };
  auto tau_radix = [&](std::size_t s) { return static_cast<int>(layout.expansions[layout.sites[s].first].size()); };
  auto sigma_radix = [&](std::size_t a) { return static_cast<int>(letter_pairings(layout.plus[a].size()).size()); };
  do {
    std::fill(sigma.begin(), sigma.end(), 0);
    do {
      const SurfaceTerm term = build_glued_surface(layout, tau, sigma);
      ++out.terms;
      if (opts.check_round_trip && term.capped.uncapped().canonical_form() != term.surface.canonical_form()) {
        throw ConsistencyError("uncapping does not recover the glued surface");
      }
      std::string key;
      if (opts.coarse) {
        std::ostringstream os;
        os << "chi=" << term.capped_euler.chi << "|b=" << term.euler.boundary << "|h=" << term.h;
        for (int a = 0; a < letters; ++a) {
          const int n = static_cast<int>(layout.plus[a].size());
          if (n == 0) continue;
          os << "|x" << a << ":" << partitions_of(n)[letter_pairings(n)[sigma[a]].class_index].str();
        }
        key = os.str();
      } else {
        key = term.capped.canonical_form();
      }
      auto& cls = classes[key];
      if (cls.members == 0) {
        cls.key = key;
        cls.chi = term.capped_euler.chi;
        cls.h = term.h;
        cls.boundary = term.euler.boundary;
        cls.faces_P = term.capped.count_faces(FaceTag::P);
        cls.faces_G = term.capped.count_faces(FaceTag::G);
        cls.faces_H = term.capped.count_faces(FaceTag::H);
        cls.faces_C = term.capped.count_faces(FaceTag::C);
      }
      ++cls.members;
      cls.omega += term.coefficient * rational_pow(Rational(N), term.index_cycles - term.capped_euler.chi + term.h);
    } while (advance(sigma, sigma_radix));
  } while (advance(tau, tau_radix));
  for (auto& [key, cls] : classes) {
    cls.omega.canonicalize();
    out.total += cls.omega * rational_pow(Rational(N), cls.chi - cls.h);
    out.classes.push_back(std::move(cls));
  }
  out.total.canonicalize();
  return out;
}

DbmExpansion dbm_expansion(const WordSpec& spec, int max_letters) {
  validate(spec);
  const int N = spec.N();
  for (const auto& label : spec.labels) {
    if (label != HighestWeight::fundamental(N)) throw ValidationError("trace-only expansion requires fundamental labels");
  }
  const SpecLayout layout = build_layout(spec);
  DbmExpansion out;
  if (!layout.balanced) return out;
  int total_n = 0;
  for (const auto& P : layout.plus) total_n += static_cast<int>(P.size());
  if (total_n > max_letters) throw EngineRefusal("dbm_expansion: more than " + std::to_string(max_letters) + " paired letters");
  // Empty words contribute Tr(I) = N each and carry no polygon.
  int k = 0, empty = 0;
  for (const auto& w : spec.words) (w.empty() ? empty : k) += 1;
  const Rational empty_factor = rational_pow(Rational(N), empty);
  if (k == 0) {
    out.total = empty_factor;
    return out;
  }
  const int letters = static_cast<int>(layout.plus.size());
  const int num_occ = static_cast<int>(layout.occurrences.size());
  const std::vector<int> identity_tau(layout.sites.size(), 0);
  const auto gadget = gadget_partners(layout, identity_tau);
  std::vector<int> sigma(letters, 0);
  std::vector<int> haar(layout.num_vars, -1);
  while (true) {
    GluedSurface S;
    std::vector<int> occ_side(num_occ, -1);
    for (std::size_t i = 0; i < spec.words.size(); ++i) {
      if (layout.words[i].length == 0) continue;
      std::vector<std::string> labels;
      std::vector<int> occs;
      for (int x = 0; x < num_occ; ++x) {
        if (layout.occurrences[x].word != static_cast<int>(i)) continue;
        labels.push_back("o" + slot_label(static_cast<int>(i), layout.occurrences[x].position, 0));
        occs.push_back(x);
      }
      const int f = S.add_face(FaceTag::Y, labels);
      for (std::size_t j = 0; j < occs.size(); ++j) occ_side[occs[j]] = S.faces()[f].sides[j];
    }
    DbmMap map;
    map.k = k;
    Rational wg_product = 1, wg_tilde_product = 1;
    int cycles_total = 0;
    for (int a = 0; a < letters; ++a) {
      const auto& P = layout.plus[a];
      const auto& M = layout.minus[a];
      const int n = static_cast<int>(P.size());
      if (n == 0) continue;
      const auto& p = letter_pairings(n)[sigma[a]];
      haar_partners(layout, a, p, haar);
      const Partition mu = partitions_of(n)[p.class_index];
      map.mu.push_back(mu);
      const Rational w = pairing_weight(n, p, N);
      wg_product *= w;
      wg_tilde_product *= w * rational_pow(Rational(N), 2 * n - mu.length());
      cycles_total += mu.length();
      const Permutation step = p.beta.inverse().compose(p.alpha);
      std::vector<char> visited(n, 0);
      for (int k0 = 0; k0 < n; ++k0) {
        if (visited[k0]) continue;
        std::vector<std::string> labels;
        std::vector<int> occs;
        int kk = k0;
        do {
          visited[kk] = 1;
          for (int x : {P[kk], M[p.alpha(kk)]}) {
            labels.push_back("o" + slot_label(layout.occurrences[x].word, layout.occurrences[x].position, 0));
            occs.push_back(x);
          }
          kk = step(kk);
        } while (kk != k0);
        const int f = S.add_face(FaceTag::B, labels);
        for (std::size_t j = 0; j < occs.size(); ++j) S.glue(S.faces()[f].sides[j], occ_side[occs[j]]);
      }
    }
    const EulerData e = S.euler();
    map.V = e.V;
    map.E = e.E;
    map.F = e.F;
    map.chi = e.chi;
    if (e.boundary != 0) throw ConsistencyError("dual bipartite map has free sides");
    if (map.E != 2 * total_n) throw ConsistencyError("edge count differs from the number of letters");
    if (map.F != k + cycles_total) throw ConsistencyError("face count differs from k plus the pairing cycles");
    if (index_cycles(gadget, haar) != map.V) throw ConsistencyError("index cycles differ from map vertices");
    map.raw_weight = wg_product * rational_pow(Rational(N), map.V) * empty_factor;
    map.renormalized_weight = wg_tilde_product * rational_pow(Rational(N), map.chi - k) * empty_factor;
    if (map.raw_weight != map.renormalized_weight) throw ConsistencyError("raw and renormalized map weights differ");
    out.total += map.raw_weight;
    out.maps.push_back(std::move(map));
    int a = letters - 1;
    while (a >= 0) {
      if (layout.plus[a].empty()) {
        --a;
        continue;
      }
      if (++sigma[a] < static_cast<int>(letter_pairings(layout.plus[a].size()).size())) break;
      sigma[a] = 0;
      --a;
    }
    if (a < 0) break;
  }
  out.total.canonicalize();
  return out;
}

DbmExpansion dbm_expansion(const std::vector<Word>& words, int N, int max_letters) {
  WordSpec spec;
  spec.words = words;
  spec.labels.assign(words.size(), HighestWeight::fundamental(N));
  return dbm_expansion(spec, max_letters);
}

EpeResult epe_expansion(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops, double beta,
                        int N, const EpeOptions& opts) {
  if (opts.kmax < 0) throw ValidationError("cutoff must be nonnegative");
  if (!(beta > 0)) throw ValidationError("coupling must be positive");
  const int P = lattice.num_plaquettes();
  std::vector<Word> plaquette_words(P), loop_words;
  for (int p = 0; p < P; ++p) plaquette_words[p] = gauge_fix_word(lattice.plaquette(p).boundary, gauge);
  for (const auto& l : loops) {
    lattice.check_loop(l);
    loop_words.push_back(gauge_fix_word(l, gauge));
  }
  const int E = lattice.num_edges();
  std::vector<std::vector<int>> plaquette_net(P, std::vector<int>(E, 0));
  std::vector<int> loop_net(E, 0);
  for (int p = 0; p < P; ++p) {
    for (const auto& l : plaquette_words[p]) plaquette_net[p][l.id] += l.exponent;
  }
  for (const auto& w : loop_words) {
    for (const auto& l : w) loop_net[l.id] += l.exponent;
  }

  EpeResult res;
  std::vector<double> shell(opts.kmax + 1, 0.0);
  const HighestWeight fund = HighestWeight::fundamental(N);
  // Odometer over (K+_p, K-_p) with total at most kmax.
  std::vector<int> digits(2 * P, 0);
  auto total_of = [&]() { return std::accumulate(digits.begin(), digits.end(), 0); };
  while (true) {
    ++res.fields;
    const int K = total_of();
    std::vector<int> net = loop_net;
    for (int p = 0; p < P; ++p) {
      const int q = digits[2 * p] - digits[2 * p + 1];
      if (q == 0) continue;
      for (int e = 0; e < E; ++e) net[e] += q * plaquette_net[p][e];
    }
    if (std::all_of(net.begin(), net.end(), [](int v) { return v == 0; })) {
      WordSpec spec;
      double weight = std::pow(beta / 2.0, K);
      for (int p = 0; p < P; ++p) {
        weight /= std::tgamma(digits[2 * p] + 1.0) * std::tgamma(digits[2 * p + 1] + 1.0);
        for (int c = 0; c < digits[2 * p]; ++c) spec.words.push_back(plaquette_words[p]);
        for (int c = 0; c < digits[2 * p + 1]; ++c) spec.words.push_back(inverse_word(plaquette_words[p]));
      }
      for (const auto& w : loop_words) spec.words.push_back(w);
      spec.labels.assign(spec.words.size(), fund);
      double moment = 1.0;
      if (!spec.words.empty()) {
        const SpecLayout layout = build_layout(spec);
        if (word_integral_work(layout) <= opts.exact_work) {
          moment = character_word_integral(spec).value;
        } else {
          moment = moment_network_integral(spec).value;
        }
      }
      ++res.evaluated;
      const double term = weight * moment;
      res.value += term;
      shell[K] += term;
    }
    // Next field with total <= kmax.
    int k = 2 * P - 1;
    while (k >= 0) {
      ++digits[k];
      if (total_of() <= opts.kmax) break;
      digits[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  res.last_shell = std::abs(shell[opts.kmax]);
  res.previous_shell = opts.kmax > 0 ? std::abs(shell[opts.kmax - 1]) : 0.0;
  return res;
}

EpeRatio epe_wilson_expectation(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                                double beta, int N, const EpeOptions& opts) {
  const EpeResult num = epe_expansion(lattice, gauge, loops, beta, N, opts);
  const EpeResult den = epe_expansion(lattice, gauge, {}, beta, N, opts);
  EpeRatio out;
  out.numerator = num.value;
  out.denominator = den.value;
  out.value = num.value / den.value;
  out.kmax = opts.kmax;
  const double sn = std::max(num.last_shell, num.previous_shell);
  const double sd = std::max(den.last_shell, den.previous_shell);
  out.shell = (sn + std::abs(out.value) * sd) / std::abs(den.value);
  return out;
}

}  // namespace ymx
