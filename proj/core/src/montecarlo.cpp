// SPDX-License-Identifier: MIT
#include "ymx/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ymx/errors.hpp"
#include "ymx/unitary_rep.hpp"

namespace ymx {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::seed_seq make_seq(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t a = splitmix(seed), b = splitmix(a ^ splitmix(stream + 0x632be59bd9b4e019ULL));
  return std::seed_seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
                       static_cast<std::uint32_t>(b >> 32)};
}

using Cplx = std::complex<double>;

struct BlockSums {
  Cplx f = 0.0;       // sum f w
  double w = 0.0;     // sum w
  double w2 = 0.0;    // sum w^2
  double fr2 = 0.0;   // sum Re(f)^2 (unweighted runs)
  double fi2 = 0.0;   // sum Im(f)^2
  long n = 0;
};

// Runs blocks [0, B) on `threads` workers; block k uses stream k.
template <class Body>
std::vector<BlockSums> run_blocks(int blocks, int threads, const Body& body) {
  std::vector<BlockSums> out(blocks);
  threads = std::max(1, std::min(threads, blocks));
  auto work = [&](int t) {
    for (int k = t; k < blocks; k += threads) out[k] = body(k);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

long block_size(long samples, int blocks, int k) { return samples * (k + 1) / blocks - samples * k / blocks; }

// Jackknife over blocks for sum f w / sum w.
McEstimate ratio_estimate(const std::vector<BlockSums>& b, long samples, std::uint64_t seed) {
  Cplx F = 0.0;
  double W = 0.0, W2 = 0.0;
  for (const auto& s : b) {
    F += s.f;
    W += s.w;
    W2 += s.w2;
  }
  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.value = F / W;
  est.ess_fraction = W * W / W2 / static_cast<double>(samples);
  const int B = static_cast<int>(b.size());
  std::vector<Cplx> loo(B);
  Cplx mean = 0.0;
  for (int k = 0; k < B; ++k) {
    loo[k] = (F - b[k].f) / (W - b[k].w);
    mean += loo[k];
  }
  mean /= double(B);
  double vr = 0.0, vi = 0.0;
  for (const auto& x : loo) {
    vr += std::pow(x.real() - mean.real(), 2);
    vi += std::pow(x.imag() - mean.imag(), 2);
  }
  vr *= double(B - 1) / B;
  vi *= double(B - 1) / B;
  est.stderr_real = std::sqrt(vr);
  est.stderr_imag = std::sqrt(vi);
  est.stderr = std::sqrt(vr + vi);
  return est;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  auto seq = make_seq(seed, stream);
  engine_.seed(seq);
}

Eigen::MatrixXcd haar_sample(int N, Rng& rng) {
  if (N < 1) throw ValidationError("N must be positive");
  const double s = std::sqrt(0.5);
  Eigen::MatrixXcd Z(N, N);
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) Z(i, j) = Cplx(s * rng.normal(), s * rng.normal());
  }
  // Modified Gram-Schmidt; r_jj = |v| > 0 fixes the phases.
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < j; ++k) {
      const Cplx r = Z.col(k).dot(Z.col(j));
      Z.col(j) -= r * Z.col(k);
    }
    Z.col(j) /= Z.col(j).norm();
  }
  return Z;
}

Eigen::MatrixXcd word_holonomy(const Word& w, const std::vector<Eigen::MatrixXcd>& U) {
  const int N = static_cast<int>(U.empty() ? 1 : U.front().rows());
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Identity(N, N);
  for (const auto& l : w) H = l.exponent > 0 ? Eigen::MatrixXcd(H * U.at(l.id)) : Eigen::MatrixXcd(H * U.at(l.id).adjoint());
  return H;
}

McEstimate mc_word_moment(const WordSpec& spec, long samples, std::uint64_t seed, const McOptions& opts) {
  validate(spec);
  if (samples < 2) throw ValidationError("at least two samples are required");
  const int N = spec.N();
  const int letters = spec.num_letters();
  const int B = static_cast<int>(std::min<long>(opts.blocks, samples));
  auto body = [&](int k) {
    Rng rng(seed, static_cast<std::uint64_t>(k));
    BlockSums s;
    std::vector<Eigen::MatrixXcd> U(letters);
    for (long t = 0; t < block_size(samples, B, k); ++t) {
      for (auto& u : U) u = haar_sample(N, rng);
      Cplx f = 1.0;
      for (std::size_t i = 0; i < spec.words.size(); ++i) {
        if (spec.labels[i].is_trivial()) continue;
        f *= character_of_matrix(spec.labels[i], word_holonomy(spec.words[i], U));
      }
      s.f += f;
      s.fr2 += f.real() * f.real();
      s.fi2 += f.imag() * f.imag();
      s.w += 1.0;
      ++s.n;
    }
    return s;
  };
  const auto b = run_blocks(B, opts.threads, body);
  Cplx F = 0.0;
  double R2 = 0.0, I2 = 0.0;
  McEstimate est;
  for (const auto& s : b) {
    F += s.f;
    R2 += s.fr2;
    I2 += s.fi2;
  }
  const double n = static_cast<double>(samples);
  est.value = F / n;
  est.samples = samples;
  est.seed = seed;
  const double vr = std::max(0.0, (R2 - n * est.value.real() * est.value.real()) / (n - 1));
  const double vi = std::max(0.0, (I2 - n * est.value.imag() * est.value.imag()) / (n - 1));
  est.stderr_real = std::sqrt(vr / n);
  est.stderr_imag = std::sqrt(vi / n);
  est.stderr = std::sqrt((vr + vi) / n);
  return est;
}

namespace {

struct Configuration {
  std::vector<int> sampled;  // edges carrying Haar variables
  std::vector<Word> plaquettes;
};

Configuration lattice_configuration(const Lattice& lattice, const McOptions& opts) {
  Configuration c;
  const GaugeFixing g = default_gauge(lattice);
  for (int e = 0; e < lattice.num_edges(); ++e) {
    if (!opts.gauge_fixed || !g.in_tree[e]) c.sampled.push_back(e);
  }
  for (int p = 0; p < lattice.num_plaquettes(); ++p) c.plaquettes.push_back(lattice.plaquette(p).boundary);
  return c;
}

// Cayley transform of a Hermitian Gaussian: symmetric proposal under H -> -H.
Eigen::MatrixXcd cayley_step(int N, double step, Rng& rng) {
  Eigen::MatrixXcd H(N, N);
  for (int i = 0; i < N; ++i) {
    H(i, i) = rng.normal();
    for (int j = i + 1; j < N; ++j) {
      const Cplx z(rng.normal() * std::sqrt(0.5), rng.normal() * std::sqrt(0.5));
      H(i, j) = z;
      H(j, i) = std::conj(z);
    }
  }
  const Cplx half(0.0, step / 2.0);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(N, N);
  return (I - half * H).partialPivLu().solve(I + half * H);
}

}  // namespace

double integrated_autocorrelation(const std::vector<double>& series) {
  const long n = static_cast<long>(series.size());
  if (n < 4) return 0.5;
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= n;
  double c0 = 0.0;
  for (double x : series) c0 += (x - mean) * (x - mean);
  c0 /= n;
  if (c0 == 0.0) return 0.5;
  double tau = 0.5;
  for (long t = 1; t < n / 2; ++t) {
    double c = 0.0;
    for (long i = 0; i + t < n; ++i) c += (series[i] - mean) * (series[i + t] - mean);
    c /= (n - t);
    tau += c / c0;
    if (t >= 6.0 * tau) break;
  }
  return std::max(tau, 0.5);
}

McEstimate mc_lattice_observable(const Lattice& lattice, const ActionSpec& action, int N, const LatticeObservable& f,
                                 long samples, std::uint64_t seed, const McOptions& opts) {
  action.validate(lattice.num_plaquettes());
  if (samples < 2) throw ValidationError("at least two samples are required");
  const Configuration conf = lattice_configuration(lattice, opts);
  const int P = lattice.num_plaquettes();
  std::vector<PlaquetteWeight> weights;
  for (int p = 0; p < P; ++p) weights.emplace_back(action.kind, action.coupling_at(p), N);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(N, N);

  if (opts.metropolis) {
    Rng rng(seed, 0);
    std::vector<Eigen::MatrixXcd> U(lattice.num_edges(), I);
    for (int e : conf.sampled) U[e] = haar_sample(N, rng);
    std::vector<std::vector<int>> touching(lattice.num_edges());
    for (int e : conf.sampled) touching[e] = lattice.plaquettes_containing(e);
    std::vector<double> q(P);
    for (int p = 0; p < P; ++p) q[p] = weights[p](word_holonomy(conf.plaquettes[p], U));
    std::vector<double> re, im;
    re.reserve(samples);
    im.reserve(samples);
    for (long sweep = 0; sweep < opts.thermalization + samples; ++sweep) {
      for (int e : conf.sampled) {
        const Eigen::MatrixXcd old = U[e];
        U[e] = cayley_step(N, opts.step, rng) * old;
        double ratio = 1.0;
        std::vector<double> fresh;
        for (int p : touching[e]) {
          fresh.push_back(weights[p](word_holonomy(conf.plaquettes[p], U)));
          ratio *= fresh.back() / q[p];
        }
        if (rng.uniform() < ratio) {
          for (std::size_t k = 0; k < fresh.size(); ++k) q[touching[e][k]] = fresh[k];
        } else {
          U[e] = old;
        }
      }
      if (sweep >= opts.thermalization) {
        const Cplx v = f(U);
        re.push_back(v.real());
        im.push_back(v.imag());
      }
    }
    McEstimate est;
    est.samples = samples;
    est.seed = seed;
    double mr = 0.0, mi = 0.0;
    for (long t = 0; t < samples; ++t) {
      mr += re[t];
      mi += im[t];
    }
    mr /= samples;
    mi /= samples;
    auto stderr_of = [&](const std::vector<double>& s, double m, double& tau) {
      double v = 0.0;
      for (double x : s) v += (x - m) * (x - m);
      v /= (samples - 1);
      tau = integrated_autocorrelation(s);
      return std::sqrt(2.0 * tau * v / samples);
    };
    double tr = 0.5, ti = 0.5;
    est.value = Cplx(mr, mi);
    est.stderr_real = stderr_of(re, mr, tr);
    est.stderr_imag = stderr_of(im, mi, ti);
    est.stderr = std::hypot(est.stderr_real, est.stderr_imag);
    est.tau_int = std::max(tr, ti);
    return est;
  }

  const int B = static_cast<int>(std::min<long>(opts.blocks, samples));
  auto body = [&](int k) {
    Rng rng(seed, static_cast<std::uint64_t>(k));
    BlockSums s;
    std::vector<Eigen::MatrixXcd> U(lattice.num_edges(), I);
    for (long t = 0; t < block_size(samples, B, k); ++t) {
      for (int e : conf.sampled) U[e] = haar_sample(N, rng);
      double w = 1.0;
      for (int p = 0; p < P; ++p) w *= weights[p](word_holonomy(conf.plaquettes[p], U));
      s.f += w * f(U);
      s.w += w;
      s.w2 += w * w;
      ++s.n;
    }
    return s;
  };
  const auto b = run_blocks(B, opts.threads, body);
  McEstimate est = ratio_estimate(b, samples, seed);
  if (est.ess_fraction < opts.min_ess_fraction) {
    throw EngineRefusal("reweighting collapsed: effective sample fraction " + std::to_string(est.ess_fraction) +
                        "; use the Metropolis sampler");
  }
  return est;
}

McEstimate mc_lattice_expectation(const Lattice& lattice, const std::vector<LoopWord>& loops, const ActionSpec& action,
                                  int N, long samples, std::uint64_t seed, const McOptions& opts) {
  for (const auto& l : loops) lattice.check_loop(l);
  auto f = [&](const std::vector<Eigen::MatrixXcd>& U) {
    Cplx v = 1.0;
    for (const auto& l : loops) v *= word_holonomy(l, U).trace();
    return v;
  };
  if (loops.empty()) {
    McEstimate est;
    est.value = 1.0;
    est.samples = samples;
    est.seed = seed;
    return est;
  }
  return mc_lattice_observable(lattice, action, N, f, samples, seed, opts);
}

}  // namespace ymx
