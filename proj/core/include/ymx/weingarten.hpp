// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ymx/algebra.hpp"
#include "ymx/brauer.hpp"
#include "ymx/rational.hpp"
#include "ymx/unitary_rep.hpp"

namespace ymx {

// Wg_N^{(n)} on the class mu, via the character sum.
Rational wg(const Partition& mu, int N);

class WgTable {
 public:
  WgTable(int n, int N);
  int n() const { return n_; }
  int N() const { return N_; }
  const Rational& value(const Partition& mu) const { return values_.at(mu); }
  Rational value(const Permutation& p) const { return values_.at(cycle_type(p)); }
  const std::map<Partition, Rational>& values() const { return values_; }

 private:
  int n_;
  int N_;
  std::map<Partition, Rational> values_;
};

// Cached, thread safe.
const WgTable& wg_table(int n, int N);

// One factor of a word: letter id >= 0 and exponent +1 or -1.
struct Letter {
  int id = 0;
  int exponent = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

std::string word_string(const Word& w);
Word inverse_word(const Word& w);
// Free reduction followed by cyclic reduction.
Word cyclically_reduce(const Word& w);

struct WordSpec {
  std::vector<Word> words;
  std::vector<HighestWeight> labels;
  int N() const { return labels.empty() ? 1 : labels.front().N(); }
  int num_letters() const;
};

// Throws ValidationError on non-reduced words, mismatched N, or label/word count mismatch.
void validate(const WordSpec& spec);

// Occurrence x = (word, position, slot) of a letter in the expanded tensor product.
// Entry of rho(x_r) on that slot: plain U for (covariant, +1) and (contravariant, -1), conj(U)
// otherwise. Input index variable B(word, position, slot), output T(word, position+1, slot);
// exponent +1 uses row B, column T and exponent -1 uses row T, column B.
struct Occurrence {
  int word = 0;
  int position = 0;
  int slot = 0;
  int letter = 0;
  int exponent = 1;
  bool covariant = true;
  bool plain = true;
  int row = 0;
  int col = 0;
};

struct WordLayout {
  int length = 0;
  int slots = 0;
  int covariant = 0;
  int var_base = 0;
};

struct LetterPairing {
  Permutation alpha;  // rows: plus occurrence k pairs with minus occurrence alpha(k)
  Permutation beta;   // columns
  int class_index = 0;
};

// Bookkeeping shared by the exact engine, the surface builder and the network fallback.
struct SpecLayout {
  WordSpec spec;
  int N = 1;
  std::vector<WordLayout> words;
  std::vector<Occurrence> occurrences;
  std::vector<std::vector<int>> plus;   // per letter, occurrence indices in (word, position, slot) order
  std::vector<std::vector<int>> minus;
  int num_vars = 0;
  bool balanced = true;
  // Gadget sites (word, position) carrying a projector insertion.
  std::vector<std::pair<int, int>> sites;
  std::vector<std::vector<std::pair<WalledBrauerDiagram, Rational>>> expansions;  // per word
  bool exact_coefficients = true;
  // Product of dimensions of empty labeled words and of 1 / multiplicity over projector sites.
  Rational label_factor = 1;

  int T(int word, int position, int slot) const;
  int B(int word, int position, int slot) const;
};

struct LayoutOptions {
  bool insert_at_every_position = false;
  ExpansionMethod method = ExpansionMethod::ExactLift;
};

SpecLayout build_layout(const WordSpec& spec, const LayoutOptions& opts = {});

// All (alpha, beta) pairs for a letter with n plus occurrences; class_index indexes partitions_of(n).
const std::vector<LetterPairing>& letter_pairings(int n);

// Gadget partner of every index variable for a choice of diagram index per site.
std::vector<int> gadget_partners(const SpecLayout& layout, const std::vector<int>& tau);
// Haar partner of every index variable for a choice of pairing index per letter.
void haar_partners(const SpecLayout& layout, int letter, const LetterPairing& p, std::vector<int>& partner);
// Number of index cycles of the 2-regular graph formed by the two partner maps.
int index_cycles(const std::vector<int>& gadget, const std::vector<int>& haar);

// E[prod_k U_{plain_k} prod_k conj(U)_{conj_k}] for a single Haar unitary; (row, col) pairs, 0-based.
Rational entrywise_moment(const std::vector<std::pair<int, int>>& plain,
                          const std::vector<std::pair<int, int>>& conjugated, int N);

struct WordIntegralOptions {
  double max_work = 1e7;
  int threads = 1;
  LayoutOptions layout;
};

struct WordIntegralResult {
  Rational exact = 0;
  bool is_exact = true;
  double value = 0.0;
  double tau_terms = 0.0;
  double sigma_terms = 0.0;
  // Number of tuples in the per-position index set, prod (r_i)!^{l_i}.
  double full_index_count = 0.0;
  bool short_circuited = false;
};

// Work estimate tau_terms * sigma_terms for the guard, without enumerating.
double word_integral_work(const SpecLayout& layout);

// Integral of prod_i chi_{label_i}(w_i(U)) over independent Haar letters.
WordIntegralResult character_word_integral(const WordSpec& spec, const WordIntegralOptions& opts = {});

}  // namespace ymx
