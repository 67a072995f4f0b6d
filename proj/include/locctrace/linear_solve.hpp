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
 * Two-party linear solving: every solution component x_k = <k|A^-1|b> is the
 * trace tr(P(A~†) |b><k|) up to the reciprocal surrogate's 3 delta / 4
 * normalization, so the full vector is recovered from d protocol runs with
 * per-component budget eps / sqrt(d).
 */

#pragma once

#include <cmath>
#include <vector>

#include "locctrace/errors.hpp"
#include "locctrace/matrix.hpp"
#include "locctrace/parallel.hpp"
#include "locctrace/poly_targets.hpp"
#include "locctrace/protocol.hpp"
#include "locctrace/trace_fg.hpp"

namespace locctrace {

struct SolveResult {
    Vector x_tilde;
    double per_component_eps = 0.0;
    double residual = 0.0; ///< ||A x_tilde - b||
    long long queries_simulated = 0;
    int N = 0, m = 0;
};

struct LinearSolveOptions : EstimationOptions {
    double poly_share = 0.4; ///< per-component eps fraction spent on the surrogate
};

/// Solves A x = b (||A|| <= 1, sigma_min(A) >= delta, ||b|| = 1) to
/// ||x_tilde - A^-1 b|| <= eps with the usual confidence.
inline SolveResult linear_solve(const Matrix& a, const Vector& b, double eps, double delta,
                                const LinearSolveOptions& opts = {}) {
    if (a.rows() != a.cols() || b.size() != a.rows())
        throw InvalidInputError("linear_solve: dimension mismatch");
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidParameterError("linear_solve: eps must be in (0, 1)");
    if (!(delta > 0.0 && delta <= 0.5))
        throw InvalidParameterError("linear_solve: delta must be in (0, 1/2]");
    if (std::abs(b.norm() - 1.0) > 1e-10)
        throw InvalidInputError("linear_solve: b must be a unit vector");
    const int d = static_cast<int>(a.rows());
    if (!is_power_of_two(d)) throw InvalidInputError("linear_solve: d must be a power of two");

    SvdResult fa = svd(a);
    if (fa.singular_values(0) > 1.0 + 1e-10)
        throw PreconditionViolationError("linear_solve: ||A|| exceeds 1");
    if (fa.singular_values(fa.singular_values.size() - 1) < delta - 1e-12)
        throw PreconditionViolationError("linear_solve: sigma_min(A) below delta");

    const double eps_c = eps / std::sqrt(static_cast<double>(d));
    const double scale = 4.0 / (3.0 * delta);

    // P approximates (3 delta / 4) / x; applied to A~† it reproduces
    // (3 delta / 4) A^-1 on the shared singular bases.
    BoundedPoly p_inv =
        inverse_poly(delta, (opts.poly_share * eps_c) / scale, opts.max_degree);
    const BoundedPoly identity = BoundedPoly::monomial(1, 1.0);
    const double eps_t = ((1.0 - opts.poly_share) * eps_c) / scale;

    const BlockEncoding be_a_dag = dilate(a, 1.0).adjoint();

    SolveResult res;
    res.x_tilde = Vector::Zero(d);
    res.per_component_eps = eps_c;
    RngStream root(opts.seed);
    std::vector<long long> queries(static_cast<size_t>(d), 0);
    std::vector<int> planned_n(static_cast<size_t>(d), 0), planned_m(static_cast<size_t>(d), 0);

    parallel_for(d, opts.threads, [&](int k) {
        Matrix bk = Matrix::Zero(d, d);
        bk.col(k) = b; // |b><k|
        EstimationOptions run = opts;
        run.threads = 1;
        ProtocolConfig cfg;
        cfg.d = d;
        cfg.m = std::max(1, static_cast<int>(std::ceil(opts.c_m * d * d)));
        cfg.N = iterations_for(d, cfg.m, opts.std_factor * eps_t, opts.safety);
        cfg.seed = root.child("component").child(static_cast<std::uint64_t>(k)).key();
        cfg.poly_f = p_inv;
        cfg.poly_g = identity;
        cfg.be_a = be_a_dag;
        cfg.be_b = dilate(bk, 1.0);
        cfg.threads = 1;
        const Complex t_hat = median_of_means(cfg, opts.batches);
        res.x_tilde(k) = scale * t_hat;
        queries[static_cast<size_t>(k)] =
            static_cast<long long>(cfg.N) * cfg.m * 4 * opts.batches *
            (p_inv.degree() + identity.degree());
        planned_n[static_cast<size_t>(k)] = cfg.N;
        planned_m[static_cast<size_t>(k)] = cfg.m;
    });
    for (long long q : queries) res.queries_simulated += q;
    res.N = planned_n[0];
    res.m = planned_m[0];
    res.residual = (a * res.x_tilde - b).norm();
    return res;
}

} // namespace locctrace
