// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>
#include <vector>

#include "ymx/lattice.hpp"
#include "ymx/weingarten.hpp"

namespace ymx {

enum class FaceTag { P, G, H, C, Y, B };

char face_tag_char(FaceTag tag);

struct SurfaceSide {
  int face = -1;
  int position = 0;
  int mate = -1;  // -1 for a free side
  std::string label;
};

struct SurfaceFace {
  FaceTag tag = FaceTag::P;
  std::vector<int> sides;  // cyclic order
};

struct EulerData {
  int V = 0;
  int E = 0;
  int F = 0;
  int chi = 0;
  int boundary = 0;
};

// Cell complex given by polygons whose sides are glued pairwise and orientation reversing:
// gluing s with t identifies start(s) with end(t) and end(s) with start(t).
class GluedSurface {
 public:
  int add_face(FaceTag tag, const std::vector<std::string>& side_labels);
  void glue(int a, int b);

  const std::vector<SurfaceFace>& faces() const { return faces_; }
  const std::vector<SurfaceSide>& sides() const { return sides_; }
  int count_faces(FaceTag tag) const;

  // Free sides grouped into boundary cycles, each in traversal order.
  std::vector<std::vector<int>> boundary_cycles() const;
  EulerData euler() const;

  // One C face per boundary cycle.
  GluedSurface capped() const;
  // Removes C faces and frees their partners.
  GluedSurface uncapped() const;
  // Deterministic string of the labeled complex.
  std::string canonical_form() const;

 private:
  std::vector<SurfaceFace> faces_;
  std::vector<SurfaceSide> sides_;
};

// Sigma(tau, sigma) for one term of the character word integral.
struct SurfaceTerm {
  GluedSurface surface;  // uncapped
  GluedSurface capped;
  EulerData euler;        // uncapped
  EulerData capped_euler;
  int h = 0;              // horizontal strands over all gadgets
  int index_cycles = 0;   // exponent of K_N
  Rational coefficient = 1;  // prod c(tau) prod Wg
};

// tau: diagram index per layout site; sigma: pairing index per letter.
SurfaceTerm build_glued_surface(const SpecLayout& layout, const std::vector<int>& tau, const std::vector<int>& sigma);

struct SurfaceClass {
  std::string key;
  Rational omega = 0;  // sum over members of c prod Wg N^{b - chi_hat + h}
  int chi = 0;         // capped
  int h = 0;
  int boundary = 0;
  int faces_P = 0, faces_G = 0, faces_H = 0, faces_C = 0;
  long members = 0;
};

struct SurfaceExpansionOptions {
  bool coarse = false;
  double max_terms = 2e5;
  bool check_round_trip = true;
  LayoutOptions layout;
};

struct SurfaceExpansion {
  std::vector<SurfaceClass> classes;  // sorted by key
  Rational total = 0;
  long terms = 0;
  bool is_exact = true;
};

SurfaceExpansion surface_expansion(const WordSpec& spec, const SurfaceExpansionOptions& opts = {});

struct DbmMap {
  std::vector<Partition> mu;  // per letter with occurrences
  int V = 0, E = 0, F = 0, chi = 0;
  int k = 0;
  Rational raw_weight = 0;           // prod Wg N^V
  Rational renormalized_weight = 0;  // prod Wg~ N^{chi - k}
};

struct DbmExpansion {
  std::vector<DbmMap> maps;
  Rational total = 0;
};

// Trace-only expansion; every label must be the fundamental weight.
DbmExpansion dbm_expansion(const WordSpec& spec, int max_letters = 6);
DbmExpansion dbm_expansion(const std::vector<Word>& words, int N, int max_letters = 6);

struct EpeOptions {
  int kmax = 8;
  // Exact pairing enumeration below this work estimate, network contraction above.
  double exact_work = 2e5;
};

struct EpeResult {
  double value = 0.0;       // truncated Z * E[W_L]
  double last_shell = 0.0;  // |contribution of |K| = kmax|
  double previous_shell = 0.0;
  long fields = 0;
  long evaluated = 0;
};

EpeResult epe_expansion(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops, double beta,
                        int N, const EpeOptions& opts = {});

struct EpeRatio {
  double value = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double shell = 0.0;  // ratio uncertainty from the two outermost shells
  int kmax = 0;
};

// E[W_L] as a ratio of truncated expansions.
EpeRatio epe_wilson_expectation(const Lattice& lattice, const GaugeFixing& gauge, const std::vector<LoopWord>& loops,
                                double beta, int N, const EpeOptions& opts = {});

}  // namespace ymx
