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
 * Short-time two-party Hamiltonian simulation for H = H1 + H2 split across
 * the parties. Alice composes V1 M U1 (her evolution sandwiching the
 * observable), Bob composes U2 rho V2, and the protocol estimates
 * S = tr(M U1 U2 rho V2 V1), which approximates
 * tr(M exp(-iHt) rho exp(iHt)) up to the product-splitting error governed by
 * ||[H1, H2]|| (vanishing for commuting parts) at t of order 1/sqrt(d).
 */

#pragma once

#include <cmath>

#include "locctrace/divergence.hpp"
#include "locctrace/errors.hpp"
#include "locctrace/matrix.hpp"
#include "locctrace/protocol.hpp"
#include "locctrace/random.hpp"
#include "locctrace/trace_fg.hpp"

namespace locctrace {

/// Spectral norm of H1 H2 - H2 H1.
inline double commutator_norm(const Matrix& h1, const Matrix& h2) {
    if (h1.rows() != h1.cols() || h2.rows() != h2.cols() || h1.rows() != h2.rows())
        throw InvalidInputError("commutator_norm: matrices must be square with equal size");
    return spectral_norm(h1 * h2 - h2 * h1);
}

struct SimResult {
    double estimate = 0.0;
    double exact = 0.0; ///< desk-scale oracle tr(M exp(-iHt) rho exp(iHt))
    double commutator = 0.0;
    double t = 0.0;
    long long queries_simulated = 0;
    int N = 0, m = 0;
};

struct HamiltonianOptions : EstimationOptions {
    double t_cap_factor = 1.0; ///< |t| must be <= t_cap_factor / sqrt(d)
    double inject_eps = 0.0;   ///< optional evolution-encoding perturbation
};

namespace ham_detail {

/// Re-unitarized random perturbation of a unitary, modeling an imprecise
/// evolution encoding.
inline Matrix perturb_unitary(const Matrix& u, double eps, RngStream& stream) {
    if (eps <= 0.0) return u;
    Matrix e = ginibre(static_cast<int>(u.rows()), static_cast<int>(u.cols()), stream);
    const double s = spectral_norm(e);
    if (s > 0.0) e *= eps / s;
    Matrix perturbed = u + e;
    Eigen::HouseholderQR<Matrix> qr(perturbed);
    Matrix q = qr.householderQ();
    Vector diag = qr.matrixQR().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        const double a = std::abs(diag(i));
        q.col(i) *= (a > 0.0) ? diag(i) / a : Complex(1.0, 0.0);
    }
    return q;
}

} // namespace ham_detail

/// Estimates tr(M exp(-iHt) rho exp(iHt)) with H = H1 + H2 under the
/// two-party split; the deviation from the exact value is bounded by
/// ||[H1, H2]|| plus the requested eps.
inline SimResult hamiltonian_expectation(const Matrix& h1, const Matrix& h2, const Matrix& m_obs,
                                         const Matrix& rho_init, double t, double eps,
                                         const HamiltonianOptions& opts = {}) {
    const int d = static_cast<int>(h1.rows());
    if (h2.rows() != d || m_obs.rows() != d || rho_init.rows() != d || h1.cols() != d ||
        h2.cols() != d || m_obs.cols() != d || rho_init.cols() != d)
        throw InvalidInputError("hamiltonian_expectation: dimension mismatch");
    if (!is_power_of_two(d))
        throw InvalidInputError("hamiltonian_expectation: d must be a power of two");
    if (hermiticity_residual(h1) > 1e-10 || hermiticity_residual(h2) > 1e-10 ||
        hermiticity_residual(m_obs) > 1e-10)
        throw ContractViolationError("hamiltonian_expectation: H1, H2, M must be Hermitian");
    if (spectral_norm(m_obs) > 1.0 + 1e-10)
        throw ContractViolationError("hamiltonian_expectation: ||M|| must be <= 1");
    div_detail::require_density(rho_init, "hamiltonian_expectation: rho_init");
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidParameterError("hamiltonian_expectation: eps must be in (0, 1)");
    const double t_cap = opts.t_cap_factor / std::sqrt(static_cast<double>(d));
    if (std::abs(t) > t_cap + 1e-15)
        throw InvalidParameterError("hamiltonian_expectation: |t| exceeds the short-time cap");

    Matrix u1 = hermitian_exp_i(h1, -t);
    Matrix u2 = hermitian_exp_i(h2, -t);
    Matrix v1 = hermitian_exp_i(h1, t);
    Matrix v2 = hermitian_exp_i(h2, t);
    if (opts.inject_eps > 0.0) {
        RngStream root(opts.seed);
        RngStream s1 = root.child("inject-u1"), s2 = root.child("inject-u2");
        RngStream s3 = root.child("inject-v1"), s4 = root.child("inject-v2");
        u1 = ham_detail::perturb_unitary(u1, opts.inject_eps, s1);
        u2 = ham_detail::perturb_unitary(u2, opts.inject_eps, s2);
        v1 = ham_detail::perturb_unitary(v1, opts.inject_eps, s3);
        v2 = ham_detail::perturb_unitary(v2, opts.inject_eps, s4);
    }

    // Alice's local composition sandwiches the observable; Bob's sandwiches
    // the state. tr(A_eff B_eff) = tr(M U1 U2 rho V2 V1).
    Matrix a_eff = v1 * m_obs * u1;
    Matrix b_eff = u2 * rho_init * v2;

    const BoundedPoly identity = BoundedPoly::monomial(1, 1.0);
    ProtocolConfig cfg;
    cfg.d = d;
    cfg.m = std::max(1, static_cast<int>(std::ceil(opts.c_m * d * d)));
    cfg.N = iterations_for(d, cfg.m, opts.std_factor * eps / 2.0, opts.safety);
    cfg.seed = RngStream(opts.seed).child("protocol").key();
    cfg.poly_f = identity;
    cfg.poly_g = identity;
    cfg.be_a = dilate(a_eff, 1.0);
    cfg.be_b = dilate(b_eff, 1.0);
    cfg.threads = opts.threads;

    SimResult res;
    res.estimate = median_of_means(cfg, opts.batches).real();
    res.t = t;
    res.commutator = commutator_norm(h1, h2);
    Matrix u_full = hermitian_exp_i(h1 + h2, -t);
    res.exact = (m_obs * u_full * rho_init * u_full.adjoint()).trace().real();
    res.N = cfg.N;
    res.m = cfg.m;
    res.queries_simulated = static_cast<long long>(cfg.N) * cfg.m * 4 * opts.batches * 2;
    return res;
}

} // namespace locctrace
