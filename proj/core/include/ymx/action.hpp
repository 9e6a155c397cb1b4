// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace ymx {

enum class ActionKind { Wilson, HeatKernel };

ActionKind parse_action_kind(const std::string& name);
std::string action_kind_name(ActionKind kind);

// Wilson: Q(U) = exp(beta Re Tr U). Heat kernel: Q_t(U) = sum d_lambda exp(-c2(lambda) t / 2) chi_lambda(U).
struct ActionSpec {
  ActionKind kind = ActionKind::Wilson;
  double coupling = 1.0;
  std::vector<double> per_plaquette;  // overrides `coupling` when nonempty

  double coupling_at(int p) const;
  bool constant() const;
  void validate(int num_plaquettes) const;
};

// Pointwise plaquette weight Q(U) for one coupling.
class PlaquetteWeight {
 public:
  PlaquetteWeight(ActionKind kind, double coupling, int N);
  double operator()(const Eigen::MatrixXcd& U) const;
  // Heat kernel from its eigenvalues.
  double from_eigenvalues(const std::vector<std::complex<double>>& z) const;
  ActionKind kind() const { return kind_; }
  double coupling() const { return coupling_; }

 private:
  ActionKind kind_;
  double coupling_;
  int N_;
  int range_ = 0;                        // heat-kernel sum over |m| <= range_
  std::vector<std::vector<double>> a_;   // a_[k][m + range_] = m^{N-1-k} w(m)
  double prefactor_ = 1.0;
  // Character series used near degenerate spectra; built on first use.
  struct Series {
    std::once_flag once;
    std::vector<std::pair<std::vector<int>, double>> terms;  // signature, d exp(-c2 t / 2)
  };
  std::shared_ptr<Series> series_ = std::make_shared<Series>();
  double series_value(const std::vector<std::complex<double>>& z) const;
};

}  // namespace ymx
