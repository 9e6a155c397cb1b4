// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ymx/action.hpp"
#include "ymx/lattice.hpp"
#include "ymx/weingarten.hpp"

namespace ymx {

// mt19937_64 keyed by (seed, stream); streams are independent and reproducible.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Gram-Schmidt on a complex Ginibre matrix; the triangular factor has positive diagonal.
Eigen::MatrixXcd haar_sample(int N, Rng& rng);

struct McEstimate {
  std::complex<double> value = 0.0;
  double stderr = 0.0;
  double stderr_real = 0.0;
  double stderr_imag = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
  double ess_fraction = 1.0;  // effective sample size over samples (reweighting)
  double tau_int = 0.5;       // integrated autocorrelation time (Metropolis)
};

// Holonomy of a word: product of U_letter^{+-1} left to right.
Eigen::MatrixXcd word_holonomy(const Word& w, const std::vector<Eigen::MatrixXcd>& U);

struct McOptions {
  int threads = 1;
  int blocks = 100;
  bool gauge_fixed = true;
  bool metropolis = false;
  long thermalization = 1000;
  double step = 1.0;
  double min_ess_fraction = 0.01;
};

// Mean of prod chi_{label_i}(w_i(U)) over independent Haar letters.
McEstimate mc_word_moment(const WordSpec& spec, long samples, std::uint64_t seed, const McOptions& opts = {});

// Observable on a full edge configuration.
using LatticeObservable = std::function<std::complex<double>(const std::vector<Eigen::MatrixXcd>&)>;

// E_Q[f] by Haar reweighting (ratio estimator, jackknife over blocks) or Metropolis.
McEstimate mc_lattice_observable(const Lattice& lattice, const ActionSpec& action, int N, const LatticeObservable& f,
                                 long samples, std::uint64_t seed, const McOptions& opts = {});

// E_Q[prod Tr U_loop].
McEstimate mc_lattice_expectation(const Lattice& lattice, const std::vector<LoopWord>& loops, const ActionSpec& action,
                                  int N, long samples, std::uint64_t seed, const McOptions& opts = {});

// Integrated autocorrelation time with automatic windowing (c = 6).
double integrated_autocorrelation(const std::vector<double>& series);

}  // namespace ymx
