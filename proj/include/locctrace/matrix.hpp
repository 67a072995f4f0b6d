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
 * Dense complex linear algebra used by every other header: factorizations,
 * norms and a few Hermitian matrix functions. Matrices are immutable values;
 * every operation returns a fresh result, so everything here is safe to call
 * concurrently.
 */

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>

#include "locctrace/errors.hpp"

namespace locctrace {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline bool all_finite(const Matrix& m) {
    return m.allFinite();
}

/// Frobenius norm of M - M†; an upper bound on the spectral deviation from
/// Hermitianity.
inline double hermiticity_residual(const Matrix& m) {
    return (m - m.adjoint()).norm();
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
    return m.rows() == m.cols() && hermiticity_residual(m) <= tol;
}

/// Singular value decomposition M = left * diag(singular_values) * right†
/// with singular values sorted non-increasing and both factors unitary.
struct SvdResult {
    Matrix left;
    RealVector singular_values;
    Matrix right;

    Matrix reconstruct() const {
        return left * singular_values.asDiagonal() * right.adjoint();
    }
};

inline SvdResult svd(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw InvalidInputError("svd: empty matrix");
    if (!all_finite(m))
        throw InvalidInputError("svd: non-finite entries");
    Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return SvdResult{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

inline double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (!all_finite(m))
        throw InvalidInputError("spectral_norm: non-finite entries");
    Eigen::JacobiSVD<Matrix> solver(m);
    return solver.singularValues().size() ? solver.singularValues()(0) : 0.0;
}

/// Trace norm tr(sqrt(M†M)), i.e. the sum of singular values.
inline double trace_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (!all_finite(m))
        throw InvalidInputError("trace_norm: non-finite entries");
    Eigen::JacobiSVD<Matrix> solver(m);
    return solver.singularValues().sum();
}

enum class MatrixNorm { Spectral, Trace };

inline double norm(const Matrix& m, MatrixNorm kind) {
    return kind == MatrixNorm::Spectral ? spectral_norm(m) : trace_norm(m);
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted
/// non-increasing, eigenvector matrix unitary.
struct EigResult {
    RealVector values;
    Matrix vectors;

    Matrix reconstruct() const {
        return vectors * values.asDiagonal() * vectors.adjoint();
    }
};

inline EigResult hermitian_eig(const Matrix& m, double herm_tol = 1e-10) {
    if (m.rows() != m.cols())
        throw InvalidInputError("hermitian_eig: matrix not square");
    if (!all_finite(m))
        throw InvalidInputError("hermitian_eig: non-finite entries");
    if (hermiticity_residual(m) > herm_tol)
        throw ContractViolationError("hermitian_eig: input not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success)
        throw InternalConsistencyError("hermitian_eig: eigensolver failed");
    // Eigen sorts ascending; flip to non-increasing.
    const Eigen::Index n = m.rows();
    EigResult out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    (void)n;
    return out;
}

/// Applies a real scalar function to a Hermitian matrix through its
/// eigendecomposition.
inline Matrix hermitian_function(const Matrix& m, const std::function<double(double)>& f,
                                 double herm_tol = 1e-10) {
    EigResult eig = hermitian_eig(m, herm_tol);
    RealVector fv(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) fv(i) = f(eig.values(i));
    return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}

/// Principal square root of a Hermitian PSD matrix, with small negative
/// eigenvalues from round-off clipped to zero first.
inline Matrix hermitian_sqrt_clipped(const Matrix& m, double herm_tol = 1e-10) {
    return hermitian_function(
        m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }, herm_tol);
}

/// exp(i * scale * M) for Hermitian M.
inline Matrix hermitian_exp_i(const Matrix& m, double scale, double herm_tol = 1e-10) {
    EigResult eig = hermitian_eig(m, herm_tol);
    Vector phases(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        phases(i) = std::exp(Complex(0.0, scale * eig.values(i)));
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

inline double unitarity_residual(const Matrix& u) {
    return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

inline bool is_power_of_two(long long n) {
    return n >= 1 && (n & (n - 1)) == 0;
}

inline int log2_exact(long long n) {
    if (!is_power_of_two(n))
        throw InvalidInputError("dimension is not a power of two");
    int k = 0;
    while ((1LL << k) < n) ++k;
    return k;
}

} // namespace locctrace
