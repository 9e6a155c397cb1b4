// SPDX-License-Identifier: MIT
#include "ymx/action.hpp"

#include <cmath>
#include <complex>

#include "ymx/errors.hpp"
#include "ymx/unitary_rep.hpp"

namespace ymx {

ActionKind parse_action_kind(const std::string& name) {
  if (name == "wilson") return ActionKind::Wilson;
  if (name == "heat" || name == "heatkernel" || name == "heat-kernel") return ActionKind::HeatKernel;
  throw ValidationError("unknown action: " + name);
}

std::string action_kind_name(ActionKind kind) { return kind == ActionKind::Wilson ? "wilson" : "heat-kernel"; }

double ActionSpec::coupling_at(int p) const {
  if (per_plaquette.empty()) return coupling;
  return per_plaquette.at(p);
}

bool ActionSpec::constant() const {
  for (double c : per_plaquette) {
    if (c != per_plaquette.front()) return false;
  }
  return true;
}

void ActionSpec::validate(int num_plaquettes) const {
  if (per_plaquette.empty()) {
    if (!(coupling > 0) || !std::isfinite(coupling)) throw ValidationError("coupling must be positive");
    return;
  }
  if (static_cast<int>(per_plaquette.size()) != num_plaquettes) throw ValidationError("one coupling per plaquette is required");
  for (double c : per_plaquette) {
    if (!(c > 0) || !std::isfinite(c)) throw ValidationError("couplings must be positive");
  }
}

// Heat kernel in closed form: with m_j = s_j + N - j, c2 = sum m_j^2 + (1 - N) sum m_j + const and
// d = Vandermonde(m) / prod (j - i), so the character sum collapses to
// Q = C det[F_k(z_i)] / det[z_i^{N-1-k}], F_k(z) = sum_m m^{N-1-k} w(m) z^m.
PlaquetteWeight::PlaquetteWeight(ActionKind kind, double coupling, int N) : kind_(kind), coupling_(coupling), N_(N) {
  if (!(coupling > 0)) throw ValidationError("coupling must be positive");
  if (N < 1) throw ValidationError("N must be positive");
  if (kind_ == ActionKind::Wilson) return;
  const double t = coupling;
  range_ = static_cast<int>(std::ceil(std::sqrt(2.0 * 60.0 / t))) + 2 * N;
  a_.assign(N, std::vector<double>(2 * range_ + 1, 0.0));
  for (int m = -range_; m <= range_; ++m) {
    const double w = std::exp(-t * (double(m) * m + (1.0 - N) * m) / 2.0);
    for (int k = 0; k < N; ++k) a_[k][m + range_] = std::pow(double(m), N - 1 - k) * w;
  }
  double c = 0.0;
  for (int j = 1; j <= N; ++j) c += double(j - N) * (1 - j);
  prefactor_ = std::exp(-t * c / 2.0);
  for (int i = 1; i <= N; ++i) {
    for (int j = i + 1; j <= N; ++j) prefactor_ /= (j - i);
  }
}

double PlaquetteWeight::from_eigenvalues(const std::vector<std::complex<double>>& z) const {
  using C = std::complex<double>;
  if (kind_ == ActionKind::Wilson) {
    double re = 0.0;
    for (const auto& x : z) re += x.real();
    return std::exp(coupling_ * re);
  }
  const int N = N_;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      if (std::abs(z[i] - z[j]) < 1e-3) return series_value(z);
    }
  }
  Eigen::MatrixXcd num(N, N), den(N, N);
  for (int i = 0; i < N; ++i) {
    C power = std::pow(z[i], -range_);
    std::vector<C> F(N, 0.0);
    for (int m = -range_; m <= range_; ++m) {
      for (int k = 0; k < N; ++k) F[k] += a_[k][m + range_] * power;
      power *= z[i];
    }
    for (int k = 0; k < N; ++k) {
      num(i, k) = F[k];
      den(i, k) = std::pow(z[i], N - 1 - k);
    }
  }
  if (N == 1) return (prefactor_ * num(0, 0)).real();
  return (prefactor_ * num.determinant() / den.determinant()).real();
}

double PlaquetteWeight::series_value(const std::vector<std::complex<double>>& z) const {
  std::call_once(series_->once, [&] {
    const double t = coupling_;
    std::vector<int> sig(N_, -range_);
    while (true) {
      const HighestWeight w = HighestWeight::from_signature(sig);
      const double c = weyl_dim(w).get_d() * std::exp(-static_cast<double>(casimir(w)) * t / 2.0);
      if (c > 1e-18) series_->terms.emplace_back(sig, c);
      // Next nonincreasing signature with entries in [-range, range].
      int k = N_ - 1;
      while (k >= 0 && sig[k] == (k == 0 ? range_ : sig[k - 1])) --k;
      if (k < 0) break;
      ++sig[k];
      for (int j = k + 1; j < N_; ++j) sig[j] = -range_;
    }
  });
  double total = 0.0;
  for (const auto& [sig, c] : series_->terms) total += c * weyl_character(HighestWeight::from_signature(sig), z).real();
  return total;
}

double PlaquetteWeight::operator()(const Eigen::MatrixXcd& U) const {
  if (kind_ == ActionKind::Wilson) return std::exp(coupling_ * U.trace().real());
  if (N_ == 1) return from_eigenvalues({U(0, 0)});
  if (N_ == 2) {
    const std::complex<double> tr = U.trace(), det = U.determinant();
    const std::complex<double> root = std::sqrt(tr * tr - 4.0 * det);
    std::complex<double> a = (tr + root) / 2.0, b = (tr - root) / 2.0;
    return from_eigenvalues({a / std::abs(a), b / std::abs(b)});
  }
  return from_eigenvalues(unitary_eigenvalues(U));
}

}  // namespace ymx
