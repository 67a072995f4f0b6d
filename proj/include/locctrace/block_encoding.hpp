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
 * Block-encodings at matrix level: a unitary of dimension 2^(s+a) whose
 * top-left 2^s x 2^s block, scaled by beta, reproduces the encoded matrix to
 * accuracy eps. Construction (exact one-ancilla dilation), verification,
 * extraction, purification-based encodings of density matrices, controlled
 * forms, and a perturbation fixture for approximate-encoding experiments.
 *
 * Registers are ordered ancilla-first: projecting onto |0> of the ancilla
 * register selects the top-left block.
 */

#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <utility>

#include "locctrace/errors.hpp"
#include "locctrace/matrix.hpp"
#include "locctrace/random.hpp"

namespace locctrace {

struct BlockEncoding {
    Matrix unitary;    ///< 2^(system_qubits + ancillas) square unitary
    double beta = 1.0; ///< scale: encoded matrix ~ beta * top-left block
    int ancillas = 0;
    double eps = 0.0; ///< encoding accuracy
    int system_qubits = 0;

    long long system_dim() const { return 1LL << system_qubits; }
    long long total_dim() const { return 1LL << (system_qubits + ancillas); }

    void validate(double unitarity_tol = 1e-10) const {
        if (beta <= 0.0) throw InvalidParameterError("BlockEncoding: beta must be positive");
        if (ancillas < 0 || system_qubits < 0)
            throw InvalidParameterError("BlockEncoding: negative register size");
        if (unitary.rows() != unitary.cols() || unitary.rows() != total_dim())
            throw InvalidInputError("BlockEncoding: unitary dimension mismatch");
        if (unitarity_residual(unitary) > unitarity_tol)
            throw ContractViolationError("BlockEncoding: matrix is not unitary within tolerance");
    }

    /// Encoding of the adjoint of the encoded matrix (same beta, a, eps).
    BlockEncoding adjoint() const {
        return BlockEncoding{unitary.adjoint(), beta, ancillas, eps, system_qubits};
    }
};

/// Effective block  (<0|_a (x) I_s) U (|0>_a (x) I_s); always a contraction.
inline Matrix top_left_block(const BlockEncoding& be) {
    const long long d = be.system_dim();
    return be.unitary.topLeftCorner(d, d);
}

/// Checks ||target - beta * effective block|| against eps (+ slack for
/// round-off). Returns (ok, residual).
inline std::pair<bool, double> verify(const BlockEncoding& be, const Matrix& target) {
    const long long d = be.system_dim();
    if (target.rows() != d || target.cols() != d)
        throw InvalidInputError("verify: target dimension does not match the encoding");
    const double residual = spectral_norm(target - be.beta * top_left_block(be));
    return {residual <= be.eps + 1e-10, residual};
}

/// Exact (beta, 1, 0)-encoding of A by the standard unitary dilation
/// [[C, sqrt(I-CC†)], [sqrt(I-C†C), -C†]] with C = A/beta. The square roots
/// are formed from C's singular value decomposition with the 1-sigma^2
/// values clipped at zero.
inline BlockEncoding dilate(const Matrix& a, double beta = 1.0) {
    if (a.rows() != a.cols()) throw InvalidInputError("dilate: matrix must be square");
    if (beta <= 0.0) throw InvalidParameterError("dilate: beta must be positive");
    const int s = log2_exact(a.rows());
    Matrix c = a / beta;
    SvdResult f = svd(c);
    if (f.singular_values.size() > 0 && f.singular_values(0) > 1.0 + 1e-10)
        throw PreconditionViolationError("dilate: ||A/beta|| exceeds 1");

    RealVector comp(f.singular_values.size());
    for (Eigen::Index i = 0; i < comp.size(); ++i) {
        const double sv = std::min(f.singular_values(i), 1.0);
        comp(i) = std::sqrt(std::max(0.0, 1.0 - sv * sv));
    }
    const long long d = a.rows();
    Matrix top_right = f.left * comp.asDiagonal() * f.left.adjoint();
    Matrix bottom_left = f.right * comp.asDiagonal() * f.right.adjoint();
    Matrix u(2 * d, 2 * d);
    u.topLeftCorner(d, d) = c;
    u.topRightCorner(d, d) = top_right;
    u.bottomLeftCorner(d, d) = bottom_left;
    u.bottomRightCorner(d, d) = -c.adjoint();

    BlockEncoding be{std::move(u), beta, 1, 0.0, s};
    be.validate();
    return be;
}

/// Partial trace of |psi><psi| over the leading `ancilla_qubits` register.
inline Matrix partial_trace_ancilla(const Vector& psi, int ancilla_qubits, int system_qubits) {
    const long long da = 1LL << ancilla_qubits;
    const long long ds = 1LL << system_qubits;
    if (psi.size() != da * ds)
        throw InvalidInputError("partial_trace_ancilla: dimension mismatch");
    Matrix rho = Matrix::Zero(ds, ds);
    for (long long alpha = 0; alpha < da; ++alpha)
        for (long long i = 0; i < ds; ++i)
            for (long long j = 0; j < ds; ++j)
                rho(i, j) += psi(alpha * ds + i) * std::conj(psi(alpha * ds + j));
    return rho;
}

/// From a unit purification |psi> on (ancilla, system) registers, returns
/// rho = Tr_a |psi><psi| together with an exact (1, a+s, 0)-encoding of rho
/// built from a preparation unitary and a system swap.
inline std::pair<Matrix, BlockEncoding> from_purification(const Vector& psi, int system_qubits) {
    if (system_qubits < 0) throw InvalidParameterError("from_purification: bad register size");
    const int total_qubits = log2_exact(psi.size());
    const int ancilla_qubits = total_qubits - system_qubits;
    if (ancilla_qubits < 0)
        throw InvalidInputError("from_purification: system register larger than the state");
    if (std::abs(psi.norm() - 1.0) > 1e-12)
        throw InvalidInputError("from_purification: state is not normalized");

    Matrix rho = partial_trace_ancilla(psi, ancilla_qubits, system_qubits);

    // Preparation unitary with first column psi (Householder completion,
    // phase-fixed so the column equals psi exactly).
    const long long dp = psi.size();
    Matrix prep = Matrix::Identity(dp, dp);
    prep.col(0) = psi;
    Eigen::HouseholderQR<Matrix> qr(prep);
    Matrix q = qr.householderQ();
    Complex r00 = qr.matrixQR()(0, 0);
    q.col(0) *= (std::abs(r00) > 0.0) ? r00 / std::abs(r00) : Complex(1.0, 0.0);
    // Columns 1.. are an arbitrary completion; column 0 now equals psi up to
    // rounding.

    // BE = (prep† (x) I_s) (I_a (x) SWAP_ss) (prep (x) I_s) on registers
    // (ancilla, system, system); projecting the first a+s qubits onto |0>
    // exposes rho on the trailing system register.
    const long long ds = 1LL << system_qubits;
    const long long da = 1LL << ancilla_qubits;
    Matrix swap_ss = Matrix::Zero(ds * ds, ds * ds);
    for (long long i = 0; i < ds; ++i)
        for (long long j = 0; j < ds; ++j) swap_ss(j * ds + i, i * ds + j) = 1.0;
    Matrix prep_x_i = Eigen::kroneckerProduct(q, Matrix::Identity(ds, ds)).eval();
    Matrix mid = Eigen::kroneckerProduct(Matrix::Identity(da, da), swap_ss).eval();
    Matrix be_u = prep_x_i.adjoint() * mid * prep_x_i;

    BlockEncoding be{std::move(be_u), 1.0, ancilla_qubits + system_qubits, 0.0, system_qubits};
    be.validate();
    return {std::move(rho), std::move(be)};
}

/// Controlled form |0><0| (x) I + |1><1| (x) U.
inline Matrix controlled(const BlockEncoding& be) {
    const long long n = be.total_dim();
    Matrix c = Matrix::Zero(2 * n, 2 * n);
    c.topLeftCorner(n, n) = Matrix::Identity(n, n);
    c.bottomRightCorner(n, n) = be.unitary;
    return c;
}

/// Fixture for approximate encodings: adds a random perturbation of spectral
/// norm eps_target to the off-diagonal blocks, re-unitarizes by phase-fixed
/// QR, and records the achieved effective-block deviation in the returned
/// encoding's eps. Returns (encoding, achieved ||A_tilde - A/beta||).
inline std::pair<BlockEncoding, double> inject_perturbation(const BlockEncoding& be,
                                                            double eps_target,
                                                            RngStream& stream) {
    be.validate();
    if (eps_target < 0.0)
        throw InvalidParameterError("inject_perturbation: eps_target must be >= 0");
    const Matrix original_block = top_left_block(be);
    const long long n = be.total_dim();
    const long long d = be.system_dim();
    Matrix e = Matrix::Zero(n, n);
    if (n > d) {
        Matrix tr = ginibre(static_cast<int>(d), static_cast<int>(n - d), stream);
        Matrix bl = ginibre(static_cast<int>(n - d), static_cast<int>(d), stream);
        e.topRightCorner(d, n - d) = tr;
        e.bottomLeftCorner(n - d, d) = bl;
    } else {
        e = ginibre(static_cast<int>(n), static_cast<int>(n), stream);
    }
    const double s = spectral_norm(e);
    if (s > 0.0) e *= eps_target / s;

    Matrix perturbed = be.unitary + e;
    Eigen::HouseholderQR<Matrix> qr(perturbed);
    Matrix q = qr.householderQ();
    Vector diag = qr.matrixQR().diagonal();
    for (long long i = 0; i < n; ++i) {
        const double a = std::abs(diag(i));
        q.col(i) *= (a > 0.0) ? diag(i) / a : Complex(1.0, 0.0);
    }

    BlockEncoding out{std::move(q), be.beta, be.ancillas, 0.0, be.system_qubits};
    const double achieved = spectral_norm(top_left_block(out) - original_block);
    out.eps = be.eps + be.beta * achieved;
    out.validate();
    return {std::move(out), achieved};
}

} // namespace locctrace
