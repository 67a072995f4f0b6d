// Copyright 2026 The locctrace developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Bundled, seed-reproducible input fixtures used by the CLI and the
 * verification suites, together with the exact desk-scale oracles they are
 * checked against.
 */

#pragma once

#include <cmath>
#include <utility>

#include "locctrace/matrix.hpp"
#include "locctrace/random.hpp"

namespace locctrace::fixtures {

/// Random pure density matrix |psi><psi|.
inline Matrix pure_state(int d, std::uint64_t seed) {
    RngStream s(seed);
    RngStream sub = s.child("pure-state");
    Vector psi = random_state(d, sub);
    return psi * psi.adjoint();
}

/// The diagonal relative-entropy pair with closed-form divergence
/// 0.5 ln 3 ~ 0.5493.
inline std::pair<Matrix, Matrix> diag_entropy_pair() {
    Matrix rho = Matrix::Zero(2, 2), sigma = Matrix::Zero(2, 2);
    rho(0, 0) = 0.75;
    rho(1, 1) = 0.25;
    sigma(0, 0) = 0.25;
    sigma(1, 1) = 0.75;
    return {rho, sigma};
}

/// The diagonal pair embedded into d = 4 by tensoring with the maximally
/// mixed qubit on both sides; the divergence is unchanged (still 0.5 ln 3)
/// and both states are full rank with eigenvalue floor 0.125.
inline std::pair<Matrix, Matrix> diag_entropy_pair_d4() {
    auto [rho2, sigma2] = diag_entropy_pair();
    Matrix half = 0.5 * Matrix::Identity(2, 2);
    Matrix rho = Matrix::Zero(4, 4), sigma = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            rho.block(2 * i, 2 * j, 2, 2) = rho2(i, j) * half;
            sigma.block(2 * i, 2 * j, 2, 2) = sigma2(i, j) * half;
        }
    return {rho, sigma};
}

/// Random full-rank density pair with spectral floor lambda_min.
inline std::pair<Matrix, Matrix> random_density_pair(int d, double lambda_min,
                                                     std::uint64_t seed) {
    RngStream s(seed);
    RngStream sr = s.child("rho");
    RngStream ss = s.child("sigma");
    return {random_density_matrix(d, d, lambda_min, sr),
            random_density_matrix(d, d, lambda_min, ss)};
}

/// Exact relative entropy tr(rho(ln rho - ln sigma)) by eigendecomposition.
inline double exact_relative_entropy(const Matrix& rho, const Matrix& sigma) {
    Matrix log_rho = hermitian_function(rho, [](double x) { return std::log(std::max(x, 1e-300)); });
    Matrix log_sigma =
        hermitian_function(sigma, [](double x) { return std::log(std::max(x, 1e-300)); });
    return (rho * (log_rho - log_sigma)).trace().real();
}

/// Exact alpha-Renyi relative entropy by eigendecomposition.
inline double exact_renyi_entropy(const Matrix& rho, const Matrix& sigma, double alpha) {
    Matrix ra = hermitian_function(rho, [alpha](double x) { return std::pow(std::max(x, 0.0), alpha); });
    Matrix sb = hermitian_function(
        sigma, [alpha](double x) { return std::pow(std::max(x, 1e-300), 1.0 - alpha); });
    return std::log((ra * sb).trace().real()) / (alpha - 1.0);
}

/// The 2x2 solvable system with solution (0, 2).
inline std::pair<Matrix, Vector> diag_linear_system() {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 0.5;
    Vector b(2);
    b << 0.0, 1.0;
    return {a, b};
}

/// Random well-conditioned system: singular values in [sv_min, 1], unit b.
inline std::pair<Matrix, Vector> random_linear_system(int d, double sv_min, std::uint64_t seed) {
    RngStream s(seed);
    RngStream sa = s.child("matrix");
    RngStream sb = s.child("rhs");
    Matrix a = random_contraction_banded(d, sv_min, 1.0, sa);
    Vector b = random_state(d, sb);
    return {a, b};
}

struct HamiltonianFixture {
    Matrix h1, h2, observable, rho;
};

/// Commuting diagonal pair with a random observable and state.
inline HamiltonianFixture commuting_hamiltonians(int d, std::uint64_t seed) {
    RngStream s(seed);
    RngStream s1 = s.child("h1"), s2 = s.child("h2"), sm = s.child("m"), sr = s.child("rho");
    Matrix h1 = Matrix::Zero(d, d), h2 = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        h1(i, i) = 2.0 * s1.uniform() - 1.0;
        h2(i, i) = 2.0 * s2.uniform() - 1.0;
    }
    return {h1, h2, random_hermitian(d, 1.0, sm), random_density_matrix(d, d, 0.0, sr)};
}

/// Generic non-commuting pair with ||H_i|| = 1.
inline HamiltonianFixture random_hamiltonians(int d, std::uint64_t seed) {
    RngStream s(seed);
    RngStream s1 = s.child("h1"), s2 = s.child("h2"), sm = s.child("m"), sr = s.child("rho");
    return {random_hermitian(d, 1.0, s1), random_hermitian(d, 1.0, s2),
            random_hermitian(d, 1.0, sm), random_density_matrix(d, d, 0.0, sr)};
}

/// Exact evolved expectation tr(M exp(-iHt) rho exp(iHt)).
inline double exact_evolved_expectation(const HamiltonianFixture& f, double t) {
    Matrix u = hermitian_exp_i(f.h1 + f.h2, -t);
    return (f.observable * u * f.rho * u.adjoint()).trace().real();
}

/// Trace-estimation fixture whose variance populates all three terms of the
/// (1 + d^2/m + d^4/m^2) shape at comparable size: singular values scale
/// like min(1, gamma/sqrt(d)).
inline std::pair<Matrix, Matrix> variance_shape_pair(int d, std::uint64_t seed,
                                                     double gamma = 1.4) {
    const double sv = std::min(0.98, gamma / std::sqrt(static_cast<double>(d)));
    RngStream s(seed);
    RngStream sa = s.child("a"), sb = s.child("b");
    return {random_contraction_banded(d, 0.9 * sv, sv, sa),
            random_contraction_banded(d, 0.9 * sv, sv, sb)};
}

} // namespace locctrace::fixtures
