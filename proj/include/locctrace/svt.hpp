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
 * Polynomial singular-value and eigenvalue transformations of effective
 * blocks, and the Hadamard-test outcome distribution they induce.
 *
 * The transformed block P(A) is computed exactly through a factorization:
 * measurement statistics depend only on this block, so no phase-factor
 * synthesis is performed anywhere in the library; simulated query counts are
 * reported separately via degree_budget.
 */

#pragma once

#include <cmath>
#include <utility>

#include "locctrace/chebyshev.hpp"
#include "locctrace/errors.hpp"
#include "locctrace/matrix.hpp"

namespace locctrace {

/// A transformed block P(A) together with its Hermitian decomposition
/// P = H + i G (H, G Hermitian); H drives the plain Hadamard test and G the
/// phase-shifted variant.
struct TransformedBlock {
    Matrix value;
    Matrix hermitian_part;     ///< (P + P†)/2
    Matrix antihermitian_part; ///< (P - P†)/(2i), Hermitian
    int source_poly_degree = 0;

    static TransformedBlock from_value(Matrix p, int degree) {
        TransformedBlock t;
        t.hermitian_part = (p + p.adjoint()) / 2.0;
        t.antihermitian_part = (p - p.adjoint()) / Complex(0.0, 2.0);
        t.value = std::move(p);
        t.source_poly_degree = degree;
        return t;
    }
};

/// Polynomial singular value transformation. For odd p the left/right
/// singular bases mix (sum of p(sigma_i) |u_i><v_i|); for even p the result
/// lives in the right singular basis (sum of p(sigma_i) |v_i><v_i|).
inline TransformedBlock apply_poly_sv(const Matrix& block, const BoundedPoly& p) {
    if (block.rows() != block.cols())
        throw InvalidInputError("apply_poly_sv: block must be square");
    if (p.parity() == Parity::None)
        throw ContractViolationError("apply_poly_sv: polynomial must have definite parity");
    SvdResult f = svd(block);
    if (f.singular_values.size() > 0 && f.singular_values(0) > 1.0 + 1e-10)
        throw PreconditionViolationError("apply_poly_sv: ||block|| exceeds 1");

    RealVector tv(f.singular_values.size());
    for (Eigen::Index i = 0; i < tv.size(); ++i)
        tv(i) = p(std::min(f.singular_values(i), 1.0));

    Matrix out;
    if (p.parity() == Parity::Odd)
        out = f.left * tv.asDiagonal() * f.right.adjoint();
    else
        out = f.right * tv.asDiagonal() * f.right.adjoint();
    return TransformedBlock::from_value(std::move(out), p.degree());
}

/// Polynomial eigenvalue transformation of a density-like Hermitian PSD
/// matrix: sum of p(lambda_i) |v_i><v_i|.
inline TransformedBlock apply_poly_ev(const Matrix& rho, const BoundedPoly& p) {
    EigResult eig = hermitian_eig(rho); // throws if not Hermitian
    if (eig.values.size() > 0 && eig.values(eig.values.size() - 1) < -1e-10)
        throw ContractViolationError("apply_poly_ev: matrix is not positive semidefinite");
    if (eig.values.size() > 0 && eig.values(0) > 1.0 + 1e-10)
        throw PreconditionViolationError("apply_poly_ev: ||rho|| exceeds 1");
    RealVector tv(eig.values.size());
    for (Eigen::Index i = 0; i < tv.size(); ++i)
        tv(i) = p(std::clamp(eig.values(i), 0.0, 1.0));
    Matrix out = eig.vectors * tv.asDiagonal() * eig.vectors.adjoint();
    return TransformedBlock::from_value(std::move(out), p.degree());
}

/// Hadamard-test outcome distribution for the transformed block, with the
/// system prepared in U|0>. phase_flag 0 reads the Hermitian part
/// (p0 = (1 + <v|H|v>)/2), phase_flag 1 the anti-Hermitian part through the
/// phase-shifted ancilla (p0 = (1 - <v|G|v>)/2).
inline std::pair<double, double> hadamard_outcome_probs(const TransformedBlock& t,
                                                        const Matrix& u_mat, int phase_flag) {
    if (phase_flag != 0 && phase_flag != 1)
        throw InvalidParameterError("hadamard_outcome_probs: phase_flag must be 0 or 1");
    if (u_mat.rows() != t.value.rows() || u_mat.cols() != t.value.cols())
        throw InvalidInputError("hadamard_outcome_probs: dimension mismatch");
    const Vector v = u_mat.col(0);
    const Matrix& part = (phase_flag == 0) ? t.hermitian_part : t.antihermitian_part;
    const double q = (v.adjoint() * part * v)(0, 0).real();
    double p0 = (phase_flag == 0) ? 0.5 * (1.0 + q) : 0.5 * (1.0 - q);
    if (p0 < -1e-10 || p0 > 1.0 + 1e-10)
        throw InternalConsistencyError(
            "hadamard_outcome_probs: probability out of range, norm violation upstream");
    p0 = std::clamp(p0, 0.0, 1.0);
    return {p0, 1.0 - p0};
}

/// Simulated query-count budget ceil((c/delta) ln(1/eps)), clamped to >= 1
/// (the eps -> 1 limit evaluates to 0 and is clamped).
inline long long degree_budget(double delta, double eps, double c = 4.0) {
    if (!(delta > 0.0 && delta <= 1.0) || !(eps > 0.0 && eps <= 1.0))
        throw InvalidParameterError("degree_budget: delta and eps must be in (0, 1]");
    const double raw = (c / delta) * std::log(1.0 / eps);
    return std::max(1LL, static_cast<long long>(std::ceil(raw)));
}

} // namespace locctrace
