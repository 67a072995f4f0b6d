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
 * Two-party divergence estimation between unknown density matrices:
 * relative entropy tr(rho (ln rho - ln sigma)) and the alpha-Renyi relative
 * entropy ln(tr(rho^alpha sigma^(1-alpha))) / (alpha - 1).
 *
 * Relative entropy runs the protocol twice with the bounded log surrogate
 * (once against sigma, once with Alice playing both sides against rho) and
 * combines K * (T_sigma - T_rho).
 *
 * Renyi: for alpha > 1 the sigma side uses the negative-power surrogate on
 * eigenvalues >= delta; for alpha in (0,1) both sides use positive-power
 * surrogates fitted globally, so only a rank bound is needed. The
 * trace-level budget is derived from a lower bound on the true trace
 * (rigorous delta^(alpha-1) when alpha > 1; a coarse first-pass estimate
 * when alpha < 1, flagged in the result metadata).
 */

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "locctrace/errors.hpp"
#include "locctrace/matrix.hpp"
#include "locctrace/poly_targets.hpp"
#include "locctrace/protocol.hpp"
#include "locctrace/trace_fg.hpp"

namespace locctrace {

struct TraceTermRecord {
    std::string label;
    Complex estimate{0.0, 0.0};
    double rescale_k = 1.0; ///< surrogate rescale applied to this term
    double rescale_c = 1.0; ///< additional constant bookkeeping (1 if none)
};

struct BudgetEntry {
    std::string label;
    double requested = 0.0;
    double achieved = 0.0;
};

struct DivergenceResult {
    double value = 0.0;
    std::string kind; ///< "relative_entropy" or "renyi"
    double alpha = 0.0;
    std::vector<TraceTermRecord> trace_terms;
    std::vector<BudgetEntry> eps_budget;
    double trace_floor = 0.0;       ///< lower bound on the true trace used for log budgets
    bool trace_floor_adaptive = false;
    long long queries_simulated = 0;
};

namespace div_detail {

inline void require_density(const Matrix& rho, const char* name, double floor_eig = -1e-10) {
    if (rho.rows() != rho.cols()) throw InvalidInputError(std::string(name) + ": not square");
    if (hermiticity_residual(rho) > 1e-10)
        throw ContractViolationError(std::string(name) + ": not Hermitian");
    EigResult e = hermitian_eig(rho);
    if (e.values(e.values.size() - 1) < floor_eig)
        throw ContractViolationError(std::string(name) + ": not positive semidefinite");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-12)
        throw ContractViolationError(std::string(name) + ": trace is not 1");
}

inline double min_eigenvalue(const Matrix& rho) {
    EigResult e = hermitian_eig(rho);
    return e.values(e.values.size() - 1);
}

/// One protocol pass estimating tr(P_f(a_side) Q_g(b_side)) with
/// median-of-means at a target transformed-trace accuracy eps_t.
inline Complex protocol_term(const Matrix& a_side, const Matrix& b_side,
                             const BoundedPoly& poly_f, const BoundedPoly& poly_g,
                             double eps_t, const EstimationOptions& opts,
                             std::uint64_t term_seed, long long* queries) {
    ProtocolConfig cfg;
    cfg.d = static_cast<int>(a_side.rows());
    cfg.m = std::max(1, static_cast<int>(std::ceil(opts.c_m * cfg.d * cfg.d)));
    cfg.N = iterations_for(cfg.d, cfg.m, opts.std_factor * eps_t, opts.safety);
    cfg.seed = term_seed;
    cfg.poly_f = poly_f;
    cfg.poly_g = poly_g;
    cfg.be_a = dilate(a_side, 1.0);
    cfg.be_b = dilate(b_side, 1.0);
    cfg.threads = opts.threads;
    if (queries) {
        const long long per_side =
            static_cast<long long>(cfg.N) * cfg.m * 4 * opts.batches;
        *queries += per_side * (poly_f.degree() + poly_g.degree());
    }
    return median_of_means(cfg, opts.batches);
}

} // namespace div_detail

struct RelativeEntropyOptions : EstimationOptions {
    double poly_share = 0.1; ///< eps fraction spent on the log surrogate bias
};

/// Estimates tr(rho (ln rho - ln sigma)) to additive error eps given both
/// spectra bounded below by delta.
inline DivergenceResult relative_entropy(const Matrix& rho, const Matrix& sigma, double eps,
                                         double delta, const RelativeEntropyOptions& opts = {}) {
    div_detail::require_density(rho, "relative_entropy: rho");
    div_detail::require_density(sigma, "relative_entropy: sigma");
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidParameterError("relative_entropy: eps must be in (0, 1)");
    if (!(delta > 0.0 && delta <= 1.0))
        throw InvalidParameterError("relative_entropy: delta must be in (0, 1]");
    if (div_detail::min_eigenvalue(rho) < delta - 1e-12 ||
        div_detail::min_eigenvalue(sigma) < delta - 1e-12)
        throw PreconditionViolationError("relative_entropy: eigenvalue below delta");

    // ln x = -K P(x) with the bounded log surrogate. Two terms, each biased
    // by at most K eps_p, each estimated to K eps_est.
    const double K = 2.0 * std::log(2.0 / delta);
    const double eps_p = opts.poly_share * eps / (4.0 * K);
    auto [p_log, k_check] = log_poly(delta, eps_p, opts.max_degree);
    (void)k_check;
    double achieved_p = eps_p;
    for (const auto& c : p_log.certificates())
        if (c.label == "accuracy") achieved_p = c.max_observed;

    const double eps_est_term = (1.0 - opts.poly_share) * eps / (2.0 * K);
    const BoundedPoly identity = BoundedPoly::monomial(1, 1.0);

    DivergenceResult res;
    res.kind = "relative_entropy";
    RngStream root(opts.seed);
    const Complex t_sigma =
        div_detail::protocol_term(rho, sigma, identity, p_log, eps_est_term, opts,
                                  root.child("term-sigma").key(), &res.queries_simulated);
    const Complex t_rho =
        div_detail::protocol_term(rho, rho, identity, p_log, eps_est_term, opts,
                                  root.child("term-rho").key(), &res.queries_simulated);

    res.value = K * (t_sigma.real() - t_rho.real());
    res.trace_terms.push_back({"tr(rho log_surrogate(sigma))", t_sigma, K, 1.0});
    res.trace_terms.push_back({"tr(rho log_surrogate(rho))", t_rho, K, 1.0});
    res.eps_budget.push_back({"log-surrogate bias (per term, x2K)", eps_p, achieved_p});
    res.eps_budget.push_back({"sampling (per term, xK)", eps_est_term, eps_est_term});
    res.trace_floor = 0.0;
    return res;
}

struct RenyiOptions : EstimationOptions {
    double trace_floor_override = 0.0; ///< >0 skips the default floor choice
    double est_share = 0.7;            ///< alpha > 1 split between sampling and surrogates
    double log_margin = 0.5;           ///< eps_tr = margin * eps * |alpha-1| * floor
    /// Fractional exponents need degrees ~ (1/eps)^(1/min(alpha,1-alpha));
    /// the FFT-based fitter handles these sizes, so alpha < 1 gets its own cap.
    int max_degree_fractional = 1 << 20;
};

/// Estimates ln(tr(rho^alpha sigma^(1-alpha))) / (alpha - 1). For alpha > 1
/// pass the spectral floor delta; for alpha in (0, 1) pass a rank bound.
inline DivergenceResult renyi_entropy(const Matrix& rho, const Matrix& sigma, double alpha,
                                      double eps, double delta, int rank_bound,
                                      const RenyiOptions& opts = {}) {
    div_detail::require_density(rho, "renyi_entropy: rho");
    div_detail::require_density(sigma, "renyi_entropy: sigma");
    if (alpha == 1.0 || !(alpha > 0.0))
        throw InvalidParameterError("renyi_entropy: alpha must be positive and != 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidParameterError("renyi_entropy: eps must be in (0, 1)");
    const int d = static_cast<int>(rho.rows());

    DivergenceResult res;
    res.kind = "renyi";
    res.alpha = alpha;
    RngStream root(opts.seed);

    double tau_hat = 0.0;   // trace estimate
    double scale_fg = 1.0;  // total surrogate rescale
    Complex t_raw(0.0, 0.0);

    if (alpha > 1.0) {
        if (!(delta > 0.0 && delta <= 0.5))
            throw InvalidParameterError("renyi_entropy: alpha > 1 needs delta in (0, 1/2]");
        if (div_detail::min_eigenvalue(rho) < delta - 1e-12 ||
            div_detail::min_eigenvalue(sigma) < delta - 1e-12)
            throw PreconditionViolationError("renyi_entropy: eigenvalue below delta");

        // Rigorous trace floor: sigma^(1-alpha) >= I and tr(rho^alpha) >=
        // delta^(alpha-1).
        const double floor = opts.trace_floor_override > 0.0 ? opts.trace_floor_override
                                                             : std::pow(delta, alpha - 1.0);
        res.trace_floor = floor;
        const double eps_tr = opts.log_margin * eps * std::abs(alpha - 1.0) * floor;

        // f side rho^alpha: exact monomial for integer alpha, else the
        // half-normalized positive-power surrogate. g side sigma^(1-alpha):
        // negative power c = alpha - 1 with target delta^c x^-c / 2.
        const double c_neg = alpha - 1.0;
        const double scale_g = 2.0 / std::pow(delta, c_neg);
        double scale_f = 2.0;
        BoundedPoly poly_f;
        const double ar = std::round(alpha);
        const double poly_budget = (1.0 - opts.est_share) * eps_tr;
        double ach_f = 0.0, ach_g = 0.0;
        if (std::abs(alpha - ar) < 1e-12 && ar <= 64.0) {
            poly_f = BoundedPoly::monomial(static_cast<int>(ar), 1.0);
            scale_f = 1.0;
        } else {
            const double e_f = poly_budget / (2.0 * d * scale_g);
            poly_f = power_poly(alpha, Parity::Even, delta, std::min(0.5, e_f / 2.0),
                                PowerSign::Positive, opts.max_degree);
            for (const auto& c : poly_f.certificates())
                if (c.label == "accuracy") ach_f = 2.0 * c.max_observed;
        }
        const double e_g = poly_budget / (2.0 * d * 1.0 /*max rho^alpha*/);
        BoundedPoly poly_g = power_poly(c_neg, Parity::Even, delta,
                                        std::min(0.5, e_g / scale_g), PowerSign::Negative,
                                        opts.max_degree);
        for (const auto& c : poly_g.certificates())
            if (c.label == "accuracy") ach_g = scale_g * c.max_observed;

        scale_fg = scale_f * scale_g;
        const double eps_t = opts.est_share * eps_tr / scale_fg;
        t_raw = div_detail::protocol_term(rho, sigma, poly_f, poly_g, eps_t, opts,
                                          root.child("term").key(), &res.queries_simulated);
        tau_hat = scale_fg * t_raw.real();
        res.eps_budget.push_back({"surrogate bias (trace level)", poly_budget,
                                  d * (ach_f * scale_g + ach_g)});
        res.eps_budget.push_back({"sampling (trace level)", opts.est_share * eps_tr,
                                  opts.est_share * eps_tr});
        res.eps_budget.push_back({"trace budget", eps_tr, eps_tr});
    } else {
        if (rank_bound < 1 || rank_bound > d)
            throw InvalidParameterError("renyi_entropy: alpha < 1 needs a rank bound in [1, d]");
        const double abar = std::min(alpha, 1.0 - alpha);
        scale_fg = 4.0;

        // Coarse first pass to locate the trace, then a refined pass with
        // budgets tied to the resulting floor.
        auto build_pair = [&](double e_side, int max_degree) {
            const double delta_f = std::clamp(std::pow(e_side, 1.0 / abar), 1e-12, 0.5);
            BoundedPoly pf = power_poly(alpha, Parity::Even, delta_f, std::min(0.5, e_side / 2.0),
                                        PowerSign::Positive, max_degree);
            BoundedPoly pg = power_poly(1.0 - alpha, Parity::Even, delta_f,
                                        std::min(0.5, e_side / 2.0), PowerSign::Positive,
                                        max_degree);
            return std::make_pair(std::move(pf), std::move(pg));
        };

        const double eps_tr0 = std::min(0.4 * eps, 0.08);
        auto [pf0, pg0] = build_pair(0.5 * eps_tr0 / (4.0 * d), opts.max_degree_fractional);
        const Complex t0 = div_detail::protocol_term(
            rho, sigma, pf0, pg0, 0.5 * eps_tr0 / scale_fg, opts, root.child("coarse").key(),
            &res.queries_simulated);
        const double tau0 = scale_fg * t0.real();
        const double floor_min = 0.05;
        if (opts.trace_floor_override <= 0.0 && tau0 < 2.0 * floor_min)
            throw UnreliableEstimateError(
                "renyi_entropy: coarse trace estimate too small for a reliable logarithm");
        const double floor = opts.trace_floor_override > 0.0
                                 ? opts.trace_floor_override
                                 : std::max(tau0 - 2.0 * eps_tr0, floor_min);
        res.trace_floor = floor;
        res.trace_floor_adaptive = (opts.trace_floor_override <= 0.0);

        const double eps_tr = opts.log_margin * eps * std::abs(alpha - 1.0) * floor;
        // Round the per-side surrogate budget down onto a quarter-octave
        // grid: strictly tighter, and repeated runs share the cached fit.
        const double e_side_raw = 0.5 * eps_tr / (4.0 * d);
        const double e_side =
            std::pow(2.0, std::floor(std::log2(e_side_raw) * 4.0) / 4.0);
        auto [pf, pg] = build_pair(e_side, opts.max_degree_fractional);
        double ach = 0.0;
        for (const auto& c : pf.certificates())
            if (c.label == "accuracy") ach = std::max(ach, 2.0 * c.max_observed);
        for (const auto& c : pg.certificates())
            if (c.label == "accuracy") ach = std::max(ach, 2.0 * c.max_observed);
        const double eps_t = 0.5 * eps_tr / scale_fg;
        t_raw = div_detail::protocol_term(rho, sigma, pf, pg, eps_t, opts,
                                          root.child("fine").key(), &res.queries_simulated);
        tau_hat = scale_fg * t_raw.real();
        res.eps_budget.push_back({"surrogate bias (per side)", 0.5 * eps_tr / (4.0 * d), ach});
        res.eps_budget.push_back({"sampling (trace level)", 0.5 * eps_tr, 0.5 * eps_tr});
        res.eps_budget.push_back({"trace budget", eps_tr, eps_tr});
    }

    if (tau_hat < 0.5 * res.trace_floor)
        throw UnreliableEstimateError("renyi_entropy: trace estimate below the configured floor");
    res.value = std::log(tau_hat) / (alpha - 1.0);
    res.trace_terms.push_back({"tr(rho^alpha sigma^(1-alpha))", t_raw, scale_fg, 1.0});
    return res;
}

} // namespace locctrace
