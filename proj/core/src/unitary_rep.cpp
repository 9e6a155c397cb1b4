// SPDX-License-Identifier: MIT
#include "ymx/unitary_rep.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "ymx/errors.hpp"

namespace ymx {

HighestWeight::HighestWeight(Partition plus, Partition minus, int N)
    : plus_(std::move(plus)), minus_(std::move(minus)), N_(N) {
  if (N < 1) throw ValidationError("N must be at least 1");
  if (plus_.length() + minus_.length() > N) {
    throw ValidationError("inadmissible weight " + str() + ": l(lambda+) + l(lambda-) > N");
  }
}

HighestWeight HighestWeight::from_signature(const std::vector<int>& s) {
  const int N = static_cast<int>(s.size());
  if (N < 1) throw ValidationError("empty signature");
  for (int i = 1; i < N; ++i) {
    if (s[i] > s[i - 1]) throw ValidationError("signature must be nonincreasing");
  }
  std::vector<int> plus, minus;
  for (int x : s) {
    if (x > 0) plus.push_back(x);
  }
  for (int i = N - 1; i >= 0; --i) {
    if (s[i] < 0) minus.push_back(-s[i]);
  }
  return HighestWeight(Partition(plus), Partition(minus), N);
}

HighestWeight HighestWeight::u1(int k) { return from_signature({k}); }

std::vector<int> HighestWeight::signature() const {
  std::vector<int> s(N_, 0);
  for (int i = 0; i < plus_.length(); ++i) s[i] = plus_[i];
  for (int j = 0; j < minus_.length(); ++j) s[N_ - 1 - j] = -minus_[j];
  return s;
}

std::string HighestWeight::str() const {
  auto part = [](const Partition& p) { return p.empty() ? std::string("0") : p.str(); };
  std::ostringstream os;
  os << '[' << part(plus_) << ',' << part(minus_) << "]_" << N_;
  return os.str();
}

std::vector<HighestWeight> weights_in_box(int N, int s) {
  std::vector<HighestWeight> out;
  if (N == 1) {
    out.push_back(HighestWeight::u1(0));
    for (int k = 1; k <= s; ++k) {
      out.push_back(HighestWeight::u1(k));
      out.push_back(HighestWeight::u1(-k));
    }
    return out;
  }
  for (int total = 0; total <= s; ++total) {
    for (int n = total; n >= 0; --n) {
      const int m = total - n;
      for (const auto& lp : partitions_of(n, N)) {
        for (const auto& lm : partitions_of(m, N - lp.length())) out.emplace_back(lp, lm, N);
      }
    }
  }
  return out;
}

BigInt weyl_dim(const HighestWeight& w) {
  const auto s = w.signature();
  const int N = w.N();
  BigInt num = 1, den = 1;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      num *= (s[i] - i) - (s[j] - j);
      den *= j - i;
    }
  }
  return num / den;
}

long casimir(const HighestWeight& w) {
  const auto s = w.signature();
  const int N = w.N();
  long c = 0;
  for (int i = 1; i <= N; ++i) c += static_cast<long>(s[i - 1]) * (s[i - 1] + N + 1 - 2 * i);
  return c;
}

namespace {

void check_eigenvalues(const HighestWeight& w, const std::vector<Complex>& z) {
  if (static_cast<int>(z.size()) != w.N()) throw ValidationError("weyl_character needs exactly N eigenvalues");
  for (const auto& x : z) {
    if (std::abs(std::abs(x) - 1.0) > 1e-9) throw ValidationError("eigenvalues must lie on the unit circle");
  }
}

Complex int_pow(Complex z, int k) {
  if (k < 0) {
    z = 1.0 / z;
    k = -k;
  }
  Complex out = 1.0;
  while (k > 0) {
    if (k & 1) out *= z;
    z *= z;
    k >>= 1;
  }
  return out;
}

// det of h_{kappa_i - i + j}; h given for degrees 0..size-1, zero elsewhere.
Complex jacobi_trudi_det(const std::vector<int>& kappa, const std::vector<Complex>& h) {
  const int L = static_cast<int>(kappa.size());
  if (L == 0) return 1.0;
  Eigen::MatrixXcd M(L, L);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      const int k = kappa[i] - i + j;
      M(i, j) = (k < 0 || k >= static_cast<int>(h.size())) ? Complex(0.0) : h[k];
    }
  }
  return M.determinant();
}

// Shifted partition kappa = signature - s_N and the determinant power -s_N.
std::pair<std::vector<int>, int> shifted(const HighestWeight& w) {
  const auto s = w.signature();
  const int shift = -s.back();
  std::vector<int> kappa;
  for (int x : s) {
    if (x + shift > 0) kappa.push_back(x + shift);
  }
  return {kappa, shift};
}

}  // namespace

Complex weyl_character_bialternant(const HighestWeight& w, const std::vector<Complex>& z) {
  check_eigenvalues(w, z);
  const int N = w.N();
  const auto s = w.signature();
  Eigen::MatrixXcd M(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) M(i, j) = int_pow(z[j], s[i] + N - 1 - i);
  }
  Complex vandermonde = 1.0;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) vandermonde *= z[i] - z[j];
  }
  return M.determinant() / vandermonde;
}

Complex weyl_character_jacobi_trudi(const HighestWeight& w, const std::vector<Complex>& z) {
  check_eigenvalues(w, z);
  const auto [kappa, shift] = shifted(w);
  const int top = kappa.empty() ? 1 : kappa[0] + static_cast<int>(kappa.size());
  std::vector<Complex> h(top, 0.0);
  h[0] = 1.0;
  for (const auto& x : z) {
    for (int k = 1; k < top; ++k) h[k] += x * h[k - 1];
  }
  Complex det = 1.0;
  for (const auto& x : z) det *= x;
  return jacobi_trudi_det(kappa, h) * int_pow(det, -shift);
}

Complex weyl_character(const HighestWeight& w, const std::vector<Complex>& z) {
  double gap = 2.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) gap = std::min(gap, std::abs(z[i] - z[j]));
  }
  return gap > 5e-2 ? weyl_character_bialternant(w, z) : weyl_character_jacobi_trudi(w, z);
}

std::vector<Complex> unitary_eigenvalues(const Eigen::MatrixXcd& U) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(U, false);
  std::vector<Complex> out;
  for (int i = 0; i < U.rows(); ++i) {
    const Complex x = es.eigenvalues()(i);
    out.push_back(x / std::abs(x));
  }
  return out;
}

Complex character_of_matrix(const HighestWeight& w, const Eigen::MatrixXcd& U) {
  if (U.rows() != w.N() || U.cols() != w.N()) throw ValidationError("matrix size does not match N");
  if (w.is_trivial()) return 1.0;
  const auto [kappa, shift] = shifted(w);
  const int top = kappa.empty() ? 1 : kappa[0] + static_cast<int>(kappa.size());
  std::vector<Complex> p(top, 0.0), h(top, 0.0);
  h[0] = 1.0;
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(U.rows(), U.cols());
  for (int k = 1; k < top; ++k) {
    power = power * U;
    p[k] = power.trace();
  }
  for (int k = 1; k < top; ++k) {
    Complex acc = 0.0;
    for (int i = 1; i <= k; ++i) acc += p[i] * h[k - i];
    h[k] = acc / static_cast<double>(k);
  }
  Complex out = jacobi_trudi_det(kappa, h);
  if (shift != 0) out *= int_pow(U.determinant(), -shift);
  return out;
}

Eigen::MatrixXcd rho_nm(const Eigen::MatrixXcd& U, int n, int m) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  const Eigen::MatrixXcd Ub = U.conjugate();
  for (int k = 0; k < n + m; ++k) {
    const Eigen::MatrixXcd& F = k < n ? U : Ub;
    Eigen::MatrixXcd next(out.rows() * F.rows(), out.cols() * F.cols());
    for (int i = 0; i < out.rows(); ++i) {
      for (int j = 0; j < out.cols(); ++j) next.block(i * F.rows(), j * F.cols(), F.rows(), F.cols()) = out(i, j) * F;
    }
    out = std::move(next);
  }
  return out;
}

MixedTensorOperator build_A(int n, int m, int N, long cap) {
  MixedTensorOperator op;
  op.n = n;
  op.m = m;
  op.N = N;
  op.entries = dense_matrix(contraction_sum(n, m), n, m, N, cap);
  if (op.entries.size() == 0) op.entries = Eigen::MatrixXd::Zero(dense_dimension(N, n + m), dense_dimension(N, n + m));
  return op;
}

BrauerElement symmetric_idempotent(const Partition& lambda, const Partition& mu) {
  const int n = lambda.size();
  const int m = mu.size();
  BrauerElement out;
  const auto perms_n = all_permutations(n);
  const auto perms_m = all_permutations(m);
  const Rational scale = Rational(BigInt(sym_dimension(lambda) * sym_dimension(mu)), BigInt(factorial(n) * factorial(m)));
  std::vector<std::int64_t> chi_n, chi_m;
  for (const auto& s : perms_n) chi_n.push_back(sym_character(lambda, cycle_type(s)));
  for (const auto& p : perms_m) chi_m.push_back(sym_character(mu, cycle_type(p)));
  for (std::size_t a = 0; a < perms_n.size(); ++a) {
    if (chi_n[a] == 0) continue;
    for (std::size_t b = 0; b < perms_m.size(); ++b) {
      if (chi_m[b] == 0) continue;
      out[WalledBrauerDiagram::permutation(perms_n[a], perms_m[b])] += scale * Rational(chi_n[a] * chi_m[b]);
    }
  }
  return out;
}

namespace {

std::vector<std::pair<WalledBrauerDiagram, Rational>> least_squares_expansion(const HighestWeight& w,
                                                                             const Eigen::MatrixXd& P, long cap) {
  const auto diagrams = enumerate_walled(w.n(), w.m());
  const long dim = P.rows();
  Eigen::MatrixXd cols(dim * dim, static_cast<long>(diagrams.size()));
  for (std::size_t k = 0; k < diagrams.size(); ++k) {
    const Eigen::MatrixXd D = dense_matrix(diagrams[k], w.N(), cap);
    cols.col(static_cast<long>(k)) = Eigen::Map<const Eigen::VectorXd>(D.data(), D.size());
  }
  const Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(P.data(), P.size());
  const Eigen::VectorXd c = cols.completeOrthogonalDecomposition().solve(target);
  std::vector<std::pair<WalledBrauerDiagram, Rational>> out;
  for (std::size_t k = 0; k < diagrams.size(); ++k) {
    if (std::abs(c(static_cast<long>(k))) > 1e-13) out.emplace_back(diagrams[k], Rational(c(static_cast<long>(k))));
  }
  return out;
}

std::shared_ptr<const ProjectorData> build_projector(const HighestWeight& w, const ProjectorOptions& opts) {
  auto data = std::make_shared<ProjectorData>();
  data->weight = w;
  data->method = opts.method;
  const int n = w.n();
  const int m = w.m();
  const int N = w.N();
  data->projector.n = n;
  data->projector.m = m;
  data->projector.N = N;
  data->multiplicity = sym_dimension(w.plus()) * sym_dimension(w.minus());
  if (N == 1) {
    // The mixed tensor space is one-dimensional and every admissible weight occupies it.
    data->projector.entries = Eigen::MatrixXd::Identity(1, 1);
    data->expansion.emplace_back(WalledBrauerDiagram::identity(n, m), Rational(1));
    return data;
  }
  const long dim = dense_dimension(N, n + m);
  if (dim > opts.dense_cap) throw EngineRefusal("isotypic projector for " + w.str() + " exceeds the dense cap");

  const BrauerElement pi = symmetric_idempotent(w.plus(), w.minus());
  const Eigen::MatrixXd Pi = dense_matrix(pi, n, m, N, opts.dense_cap);
  const Eigen::MatrixXd A = build_A(n, m, N, opts.dense_cap).entries;

  // Route 1: traceless kernel of all contractions, intersected with the isotypic block.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esA(A);
  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(dim, dim);
  for (long k = 0; k < dim; ++k) {
    if (std::abs(esA.eigenvalues()(k)) < opts.spectral_tolerance) {
      kernel += esA.eigenvectors().col(k) * esA.eigenvectors().col(k).transpose();
    }
  }
  const Eigen::MatrixXd P_kernel = kernel * Pi;

  // Route 2: product over the nonzero spectrum of A on the isotypic block.
  const Eigen::MatrixXd PAP = Pi * A * Pi;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esB(0.5 * (PAP + PAP.transpose()), Eigen::EigenvaluesOnly);
  std::vector<double> spectrum;
  for (long k = 0; k < dim; ++k) {
    const double a = esB.eigenvalues()(k);
    if (std::abs(a) < opts.spectral_tolerance) continue;
    if (std::none_of(spectrum.begin(), spectrum.end(), [&](double b) { return std::abs(a - b) < opts.spectral_tolerance; })) {
      spectrum.push_back(a);
    }
  }
  std::sort(spectrum.begin(), spectrum.end());
  data->contraction_spectrum = spectrum;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd P_product = Pi;
  for (double a : spectrum) P_product = P_product * (I - A / a);
  data->kernel_vs_product = (P_kernel - P_product).norm();
  if (data->kernel_vs_product > opts.agreement_tolerance) {
    throw ConsistencyError("kernel and product constructions of the projector for " + w.str() + " disagree");
  }
  data->projector.entries = P_product;

  bool integral = true;
  for (double a : spectrum) integral = integral && std::abs(a - std::round(a)) < 1e-6;
  if (opts.method == ExpansionMethod::ExactLift && integral) {
    BrauerElement x = pi;
    const BrauerElement contractions = contraction_sum(n, m);
    for (double a : spectrum) {
      const Rational inv_a(1, static_cast<long>(std::lround(a)));
      BrauerElement xa = multiply(x, contractions, N);
      for (auto& [d, c] : xa) x[d] -= c * inv_a;
      for (auto it = x.begin(); it != x.end();) it = (it->second == 0) ? x.erase(it) : std::next(it);
    }
    data->expansion.assign(x.begin(), x.end());
    data->exact = true;
    data->method = ExpansionMethod::ExactLift;
  } else {
    data->expansion = least_squares_expansion(w, P_product, opts.dense_cap);
    data->exact = false;
    data->method = ExpansionMethod::LeastSquares;
  }
  BrauerElement check(data->expansion.begin(), data->expansion.end());
  data->reconstruction_error = (dense_matrix(check, n, m, N, opts.dense_cap) - P_product).norm();
  if (data->reconstruction_error > opts.reconstruction_tolerance) {
    throw ConsistencyError("diagram expansion does not reconstruct the projector for " + w.str());
  }
  return data;
}

struct ProjectorCache {
  std::shared_mutex mutex;
  std::map<std::pair<HighestWeight, int>, std::shared_ptr<const ProjectorData>> entries;
};

ProjectorCache& projector_cache() {
  static ProjectorCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const ProjectorData> isotypic_projector(const HighestWeight& w, const ProjectorOptions& opts) {
  auto key = std::make_pair(w, static_cast<int>(opts.method));
  auto& cache = projector_cache();
  {
    std::shared_lock lock(cache.mutex);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end()) return it->second;
  }
  auto built = build_projector(w, opts);
  std::unique_lock lock(cache.mutex);
  return cache.entries.emplace(key, built).first->second;
}

std::vector<std::pair<WalledBrauerDiagram, Rational>> expand_projector_in_diagrams(const HighestWeight& w,
                                                                                   ExpansionMethod method) {
  ProjectorOptions opts;
  opts.method = method;
  return isotypic_projector(w, opts)->expansion;
}

Complex projector_character(const HighestWeight& w, const Eigen::MatrixXcd& U) {
  const auto data = isotypic_projector(w);
  const Eigen::MatrixXcd R = rho_nm(U, w.n(), w.m());
  return (data->projector.entries.cast<Complex>() * R).trace() / data->multiplicity.get_d();
}

}  // namespace ymx
