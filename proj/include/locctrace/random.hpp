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
 * Seeded random matrix samplers: Haar-distributed unitaries, random density
 * matrices with a prescribed rank and spectral floor, and a few generic
 * fixture generators used throughout the tests and the CLI.
 */

#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "locctrace/errors.hpp"
#include "locctrace/matrix.hpp"
#include "locctrace/rng.hpp"

namespace locctrace {

/// d x d matrix of iid standard complex Gaussians.
inline Matrix ginibre(int rows, int cols, RngStream& stream) {
    if (rows < 1 || cols < 1)
        throw InvalidParameterError("ginibre: dimensions must be positive");
    Matrix g(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            g(i, j) = Complex(stream.gaussian(), stream.gaussian());
    return g;
}

/// Haar-distributed d x d unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phases divided out (the standard measure-correct construction).
inline Matrix haar_unitary(int d, RngStream& stream) {
    if (d < 1)
        throw InvalidParameterError("haar_unitary: dimension must be >= 1");
    Matrix g = ginibre(d, d, stream);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Vector diag = qr.matrixQR().diagonal();
    for (int i = 0; i < d; ++i) {
        const double a = std::abs(diag(i));
        q.col(i) *= (a > 0.0) ? diag(i) / a : Complex(1.0, 0.0);
    }
    return q;
}

/// Haar-random unit column vector.
inline Vector random_state(int d, RngStream& stream) {
    if (d < 1)
        throw InvalidParameterError("random_state: dimension must be >= 1");
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(stream.gaussian(), stream.gaussian());
    return v / v.norm();
}

/// Random Hermitian matrix with spectral norm <= norm_bound (GUE draw,
/// rescaled).
inline Matrix random_hermitian(int d, double norm_bound, RngStream& stream) {
    Matrix g = ginibre(d, d, stream);
    Matrix h = (g + g.adjoint()) / 2.0;
    const double s = spectral_norm(h);
    if (s > 0.0) h *= norm_bound / s;
    return h;
}

/// Random (generally non-Hermitian) matrix rescaled to spectral norm exactly
/// norm_bound.
inline Matrix random_contraction(int d, double norm_bound, RngStream& stream) {
    Matrix g = ginibre(d, d, stream);
    const double s = spectral_norm(g);
    if (s > 0.0) g *= norm_bound / s;
    return g;
}

/// Random contraction with all singular values in [sv_min, sv_max]. Haar
/// left/right factors with uniformly drawn singular values.
inline Matrix random_contraction_banded(int d, double sv_min, double sv_max, RngStream& stream) {
    if (!(0.0 <= sv_min && sv_min <= sv_max && sv_max <= 1.0))
        throw InvalidParameterError("random_contraction_banded: need 0 <= sv_min <= sv_max <= 1");
    RngStream left = stream.child("left");
    RngStream right = stream.child("right");
    RngStream values = stream.child("values");
    Matrix u = haar_unitary(d, left);
    Matrix v = haar_unitary(d, right);
    RealVector sv(d);
    for (int i = 0; i < d; ++i) sv(i) = sv_min + (sv_max - sv_min) * values.uniform();
    return u * sv.asDiagonal() * v.adjoint();
}

/// Random density matrix: PSD, unit trace, rank exactly r, and every nonzero
/// eigenvalue >= lambda_min. Eigenvalues are drawn from a flat simplex
/// distribution shifted to the floor; the eigenbasis is Haar.
inline Matrix random_density_matrix(int d, int r, double lambda_min, RngStream& stream) {
    if (d < 1)
        throw InvalidParameterError("random_density_matrix: dimension must be >= 1");
    if (r < 1 || r > d)
        throw InvalidParameterError("random_density_matrix: rank must satisfy 1 <= r <= d");
    if (lambda_min < 0.0)
        throw InvalidParameterError("random_density_matrix: lambda_min must be >= 0");
    if (lambda_min * r > 1.0 + 1e-12)
        throw InvalidParameterError("random_density_matrix: infeasible, lambda_min * r > 1");

    RngStream weights = stream.child("weights");
    RngStream basis = stream.child("basis");

    // Exponential draws normalized to the simplex, then affinely mapped so the
    // floor is attained: lambda_i = lambda_min + (1 - r*lambda_min) * w_i.
    RealVector w(r);
    double total = 0.0;
    for (int i = 0; i < r; ++i) {
        double u;
        do {
            u = weights.uniform();
        } while (u <= 0.0);
        w(i) = -std::log(u);
        total += w(i);
    }
    const double slack = 1.0 - lambda_min * r;
    RealVector lam = RealVector::Zero(d);
    for (int i = 0; i < r; ++i) lam(i) = lambda_min + slack * (w(i) / total);

    Matrix u = haar_unitary(d, basis);
    return u * lam.asDiagonal() * u.adjoint();
}

} // namespace locctrace
