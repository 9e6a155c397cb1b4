// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "ymx/weingarten.hpp"

namespace ymx {

// Loops and plaquette boundaries are words whose letter ids are edge ids.
using LoopWord = Word;

struct LatticeEdge {
  int tail = 0;
  int head = 0;
  int axis = 0;
};

struct LatticePlaquette {
  int base = 0;
  int axis_i = 0;
  int axis_j = 0;
  // e_i at base, e_j at base+e_i, e_i at base+e_j reversed, e_j at base reversed.
  LoopWord boundary;
};

// Open-boundary box [0,n_1] x ... x [0,n_d] of Z^d with unit cells as plaquettes.
class Lattice {
 public:
  Lattice(int d, std::vector<int> extents);

  int dimension() const { return d_; }
  const std::vector<int>& extents() const { return extents_; }
  int num_vertices() const { return static_cast<int>(coords_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_plaquettes() const { return static_cast<int>(plaquettes_.size()); }
  const std::vector<int>& coords(int v) const { return coords_[v]; }
  const LatticeEdge& edge(int e) const { return edges_[e]; }
  const LatticePlaquette& plaquette(int p) const { return plaquettes_[p]; }
  // -1 if the point lies outside the box.
  int vertex_id(const std::vector<int>& x) const;
  // Edge leaving v in the positive axis direction, or -1.
  int edge_at(int v, int axis) const;
  // Incident edges of v in increasing id order.
  std::vector<int> incident_edges(int v) const;
  // Plaquettes whose boundary contains edge e.
  std::vector<int> plaquettes_containing(int e) const;

  // Start and end vertex of a signed traversal.
  int start_of(const Letter& l) const { return l.exponent > 0 ? edges_[l.id].tail : edges_[l.id].head; }
  int end_of(const Letter& l) const { return l.exponent > 0 ? edges_[l.id].head : edges_[l.id].tail; }
  // True when consecutive traversals share endpoints and the word closes up.
  bool is_closed(const LoopWord& w) const;
  void check_loop(const LoopWord& w) const;

  std::string vertex_string(int v) const;

 private:
  int d_;
  std::vector<int> extents_;
  std::vector<std::vector<int>> coords_;
  std::vector<LatticeEdge> edges_;
  std::vector<LatticePlaquette> plaquettes_;
  std::vector<std::vector<int>> edge_at_;
};

Lattice build_lattice(int d, const std::vector<int>& extents);

enum class TreeStrategy { BreadthFirst, DepthFirst };

// Edge ids of a spanning tree grown from `root`, visiting incident edges in id order.
std::vector<int> spanning_tree(const Lattice& lattice, int root = 0, TreeStrategy strategy = TreeStrategy::BreadthFirst);

struct GaugeFixing {
  std::vector<int> tree;
  std::vector<char> in_tree;  // per edge
  std::vector<int> non_tree;  // edge ids, increasing
};

GaugeFixing make_gauge(const Lattice& lattice, const std::vector<int>& tree);
GaugeFixing default_gauge(const Lattice& lattice);

// Deletes tree letters and reduces; letters keep their edge ids.
LoopWord gauge_fix_word(const LoopWord& w, const GaugeFixing& gauge);

struct DualIncidenceGraph {
  std::vector<int> plaquettes;
  std::vector<int> edges;  // non-tree edges
  std::vector<std::pair<int, int>> incidences;  // (plaquette, edge)
  std::vector<int> defect_support;  // non-tree edges traversed by gauge-fixed loops
};

DualIncidenceGraph dual_incidence(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops);

// "+e3" / "-e0" traversal syntax.
Letter parse_traversal(const std::string& text);
std::string traversal_string(const Letter& l);
std::string loop_string(const LoopWord& w);

}  // namespace ymx
