// SPDX-License-Identifier: MIT
// Independent reference computations for tests; none of them call the engine under test.
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ymx/rational.hpp"

namespace ymx::oracle {

using RationalMatrix = std::vector<std::vector<Rational>>;

// G(sigma, tau) = N^{#cycles(sigma^{-1} tau)} over S_n in lexicographic order.
RationalMatrix gram_matrix(int n, int N);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix transpose(const RationalMatrix& a);
// Gauss-Jordan inverse; throws on singular input.
RationalMatrix inverse(const RationalMatrix& a);
// Moore-Penrose pseudoinverse from a full-rank factorization A = C F.
RationalMatrix pseudoinverse(const RationalMatrix& a);

// I_k(beta) = (1/2pi) int exp(beta cos t) cos(k t) dt by the periodic trapezoid rule.
double bessel_i_quadrature(int k, double beta, int points = 512);
// det[I_{s_j - j + i}(beta)], the U(N) Wilson character coefficient for signature s.
double bessel_determinant(const std::vector<int>& signature, double beta);

// Character series of the heat kernel at eigenvalues z, summed over |lambda+|+|lambda-| <= box.
double heat_kernel_series(const std::vector<std::complex<double>>& z, double t, int box);

// int f(z) Q(z) dU / int Q(z) dU for class functions, by Weyl integration on an M^N torus grid.
std::complex<double> torus_expectation(int N, const std::function<double(const std::vector<std::complex<double>>&)>& Q,
                                       const std::function<std::complex<double>(const std::vector<std::complex<double>>&)>& f,
                                       int M);

}  // namespace ymx::oracle
