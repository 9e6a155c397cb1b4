// SPDX-License-Identifier: MIT
#include "ymx/lattice.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "ymx/errors.hpp"

namespace ymx {

Lattice::Lattice(int d, std::vector<int> extents) : d_(d), extents_(std::move(extents)) {
  if (d < 2) throw ValidationError("lattice dimension must be at least 2");
  if (static_cast<int>(extents_.size()) != d) throw ValidationError("one extent per axis is required");
  for (int n : extents_) {
    if (n < 1) throw ValidationError("extents must be at least 1");
  }
  // Vertices in lexicographic order of coordinates.
  std::vector<int> x(d, 0);
  while (true) {
    coords_.push_back(x);
    int k = d - 1;
    while (k >= 0 && ++x[k] > extents_[k]) x[k--] = 0;
    if (k < 0) break;
  }
  edge_at_.assign(coords_.size(), std::vector<int>(d, -1));
  for (int v = 0; v < num_vertices(); ++v) {
    for (int a = 0; a < d; ++a) {
      if (coords_[v][a] >= extents_[a]) continue;
      auto y = coords_[v];
      ++y[a];
      edge_at_[v][a] = static_cast<int>(edges_.size());
      edges_.push_back({v, vertex_id(y), a});
    }
  }
  for (int v = 0; v < num_vertices(); ++v) {
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        if (coords_[v][i] >= extents_[i] || coords_[v][j] >= extents_[j]) continue;
        auto xi = coords_[v];
        ++xi[i];
        auto xj = coords_[v];
        ++xj[j];
        LatticePlaquette p;
        p.base = v;
        p.axis_i = i;
        p.axis_j = j;
        p.boundary = {{edge_at_[v][i], 1}, {edge_at_[vertex_id(xi)][j], 1}, {edge_at_[vertex_id(xj)][i], -1}, {edge_at_[v][j], -1}};
        plaquettes_.push_back(p);
      }
    }
  }
}

int Lattice::vertex_id(const std::vector<int>& x) const {
  int id = 0;
  for (int a = 0; a < d_; ++a) {
    if (x[a] < 0 || x[a] > extents_[a]) return -1;
    id = id * (extents_[a] + 1) + x[a];
  }
  return id;
}

int Lattice::edge_at(int v, int axis) const { return edge_at_[v][axis]; }

std::vector<int> Lattice::incident_edges(int v) const {
  std::vector<int> out;
  for (int e = 0; e < num_edges(); ++e) {
    if (edges_[e].tail == v || edges_[e].head == v) out.push_back(e);
  }
  return out;
}

std::vector<int> Lattice::plaquettes_containing(int e) const {
  std::vector<int> out;
  for (int p = 0; p < num_plaquettes(); ++p) {
    for (const auto& l : plaquettes_[p].boundary) {
      if (l.id == e) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

bool Lattice::is_closed(const LoopWord& w) const {
  if (w.empty()) return true;
  for (const auto& l : w) {
    if (l.id < 0 || l.id >= num_edges() || (l.exponent != 1 && l.exponent != -1)) return false;
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (end_of(w[k]) != start_of(w[(k + 1) % w.size()])) return false;
  }
  return true;
}

void Lattice::check_loop(const LoopWord& w) const {
  if (!is_closed(w)) throw ValidationError("not a closed lattice loop: " + loop_string(w));
}

std::string Lattice::vertex_string(int v) const {
  std::ostringstream os;
  os << '(';
  for (int a = 0; a < d_; ++a) os << (a ? "," : "") << coords_[v][a];
  os << ')';
  return os.str();
}

Lattice build_lattice(int d, const std::vector<int>& extents) { return Lattice(d, extents); }

std::vector<int> spanning_tree(const Lattice& lattice, int root, TreeStrategy strategy) {
  const int V = lattice.num_vertices();
  if (root < 0 || root >= V) throw ValidationError("spanning tree root out of range");
  std::vector<std::vector<int>> incident(V);
  for (int e = 0; e < lattice.num_edges(); ++e) {
    incident[lattice.edge(e).tail].push_back(e);
    incident[lattice.edge(e).head].push_back(e);
  }
  std::vector<char> seen(V, 0);
  std::vector<int> tree;
  if (strategy == TreeStrategy::BreadthFirst) {
    std::deque<int> queue{root};
    seen[root] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int e : incident[v]) {
        const int w = lattice.edge(e).tail == v ? lattice.edge(e).head : lattice.edge(e).tail;
        if (seen[w]) continue;
        seen[w] = 1;
        tree.push_back(e);
        queue.push_back(w);
      }
    }
  } else {
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    seen[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == incident[v].size()) {
        stack.pop_back();
        continue;
      }
      const int e = incident[v][next++];
      const int w = lattice.edge(e).tail == v ? lattice.edge(e).head : lattice.edge(e).tail;
      if (seen[w]) continue;
      seen[w] = 1;
      tree.push_back(e);
      stack.emplace_back(w, 0);
    }
  }
  if (static_cast<int>(tree.size()) != V - 1) throw ValidationError("lattice is not connected");
  std::sort(tree.begin(), tree.end());
  return tree;
}

GaugeFixing make_gauge(const Lattice& lattice, const std::vector<int>& tree) {
  GaugeFixing g;
  g.tree = tree;
  std::sort(g.tree.begin(), g.tree.end());
  g.in_tree.assign(lattice.num_edges(), 0);
  for (int e : g.tree) {
    if (e < 0 || e >= lattice.num_edges() || g.in_tree[e]) throw ValidationError("invalid tree edge list");
    g.in_tree[e] = 1;
  }
  if (static_cast<int>(g.tree.size()) != lattice.num_vertices() - 1) throw ValidationError("tree has the wrong size");
  for (int e = 0; e < lattice.num_edges(); ++e) {
    if (!g.in_tree[e]) g.non_tree.push_back(e);
  }
  return g;
}

GaugeFixing default_gauge(const Lattice& lattice) { return make_gauge(lattice, spanning_tree(lattice)); }

LoopWord gauge_fix_word(const LoopWord& w, const GaugeFixing& gauge) {
  LoopWord kept;
  for (const auto& l : w) {
    if (!gauge.in_tree.at(l.id)) kept.push_back(l);
  }
  return cyclically_reduce(kept);
}

DualIncidenceGraph dual_incidence(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops) {
  DualIncidenceGraph g;
  g.edges = gauge.non_tree;
  for (int p = 0; p < lattice.num_plaquettes(); ++p) {
    g.plaquettes.push_back(p);
    for (const auto& l : lattice.plaquette(p).boundary) {
      if (!gauge.in_tree[l.id]) g.incidences.emplace_back(p, l.id);
    }
  }
  for (const auto& loop : loops) {
    lattice.check_loop(loop);
    for (const auto& l : gauge_fix_word(loop, gauge)) g.defect_support.push_back(l.id);
  }
  std::sort(g.defect_support.begin(), g.defect_support.end());
  g.defect_support.erase(std::unique(g.defect_support.begin(), g.defect_support.end()), g.defect_support.end());
  return g;
}

Letter parse_traversal(const std::string& text) {
  if (text.size() < 3 || (text[0] != '+' && text[0] != '-') || text[1] != 'e') {
    throw ValidationError("edge traversal must look like +e3 or -e0: " + text);
  }
  int id = 0;
  try {
    std::size_t used = 0;
    id = std::stoi(text.substr(2), &used);
    if (used != text.size() - 2 || id < 0) throw ValidationError("");
  } catch (...) {
    throw ValidationError("bad edge id in traversal: " + text);
  }
  return {id, text[0] == '+' ? 1 : -1};
}

std::string traversal_string(const Letter& l) { return std::string(l.exponent > 0 ? "+" : "-") + "e" + std::to_string(l.id); }

std::string loop_string(const LoopWord& w) {
  if (w.empty()) return "()";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) out += (k ? " " : "") + traversal_string(w[k]);
  return out;
}

}  // namespace ymx
