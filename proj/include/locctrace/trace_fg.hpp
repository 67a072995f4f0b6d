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
 * End-to-end estimation of tr(f(A) g(B)) for named scalar functions:
 * polynomial surrogates are built with per-term error budgets, the sampling
 * protocol estimates the transformed trace, and the result is rescaled back.
 *
 * Exact mode assumes exact encodings and homogeneous f, g (the encoding
 * scale beta is undone through f(beta X) = beta^k f(X)). Lipschitz mode
 * models approximate encodings: a seeded perturbation of prescribed size is
 * injected into the dilations and the measured effective-block deviation is
 * reported, so callers can account the (L+1) * d * ||A~ - A|| degradation.
 */

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "locctrace/block_encoding.hpp"
#include "locctrace/errors.hpp"
#include "locctrace/matrix.hpp"
#include "locctrace/poly_targets.hpp"
#include "locctrace/protocol.hpp"

namespace locctrace {

enum class TraceMode { ExactHomogeneous, LipschitzApprox };

/// Knobs shared by every application-level estimator.
struct EstimationOptions {
    std::uint64_t seed = 42;
    int threads = 1;
    int batches = 9;        ///< median-of-means batches
    double std_factor = 1.0; ///< per-batch std target = std_factor * noise budget
    double safety = 2.0;    ///< variance-shape safety factor
    double c_m = 1.0;       ///< shots per iteration m = ceil(c_m d^2)
    int max_degree = 4096;
};

/// A named scalar function together with its polynomial surrogate builder.
/// build(delta, e_f, max_degree) returns (P, scale, achieved) such that
/// |scale * P(x) - f(x)| <= e_f on [delta, 1] with achieved <= e_f.
struct FunctionSpec {
    std::string id;
    std::function<double(double)> fn;
    bool homogeneous = false;
    bool exact_poly = false; ///< surrogate is exact; no spectral floor needed
    double hom_degree = 0.0;
    std::function<double(double)> lipschitz_on; ///< delta -> L on [delta, 1]
    std::function<double(double)> range_max;    ///< delta -> max |f| on [delta, 1]
    std::function<std::tuple<BoundedPoly, double, double>(double, double, int)> build;
};

namespace fn_detail {

inline std::tuple<BoundedPoly, double, double> build_monomial(int k) {
    BoundedPoly p = BoundedPoly::monomial(k, 1.0);
    return {std::move(p), 1.0, 0.0};
}

} // namespace fn_detail

/// Parses a function label: identity, square, cube, sqrt, power:<c>,
/// inverse, log. Throws InvalidInputError for unknown labels.
inline FunctionSpec parse_function_label(const std::string& label) {
    FunctionSpec spec;
    spec.id = label;
    auto positive_power = [](double c) {
        FunctionSpec s;
        s.fn = [c](double x) { return std::pow(x, c); };
        s.homogeneous = true;
        s.hom_degree = c;
        s.lipschitz_on = [c](double delta) {
            return (c >= 1.0) ? c : c * std::pow(delta, c - 1.0);
        };
        s.range_max = [](double) { return 1.0; };
        const double cr = std::round(c);
        if (std::abs(c - cr) < 1e-12 && cr >= 1.0 && cr <= 64.0) {
            s.exact_poly = true;
            s.build = [cr](double, double, int) { return fn_detail::build_monomial(static_cast<int>(cr)); };
        } else {
            s.build = [c](double delta, double e_f, int max_degree) {
                // power_poly targets x^c / 2; doubling restores f.
                BoundedPoly p = power_poly(c, Parity::Even, std::clamp(delta, 1e-12, 0.5),
                                           std::min(0.5, e_f / 2.0), PowerSign::Positive,
                                           max_degree);
                double achieved = e_f;
                for (const auto& cert : p.certificates())
                    if (cert.label == "accuracy") achieved = 2.0 * cert.max_observed;
                return std::tuple<BoundedPoly, double, double>{std::move(p), 2.0, achieved};
            };
        }
        return s;
    };

    if (label == "identity") {
        spec = positive_power(1.0);
    } else if (label == "square") {
        spec = positive_power(2.0);
    } else if (label == "cube") {
        spec = positive_power(3.0);
    } else if (label == "sqrt") {
        spec = positive_power(0.5);
    } else if (label.rfind("power:", 0) == 0) {
        const double c = std::stod(label.substr(6));
        if (!(c > 0.0)) throw InvalidInputError("function label power:<c> needs c > 0");
        spec = positive_power(c);
    } else if (label == "inverse") {
        spec.fn = [](double x) { return 1.0 / x; };
        spec.homogeneous = true;
        spec.hom_degree = -1.0;
        spec.lipschitz_on = [](double delta) { return 1.0 / (delta * delta); };
        spec.range_max = [](double delta) { return 1.0 / delta; };
        spec.build = [](double delta, double e_f, int max_degree) {
            const double scale = 4.0 / (3.0 * delta);
            BoundedPoly p = inverse_poly(delta, std::min(0.5, e_f / scale), max_degree);
            double achieved = e_f;
            for (const auto& cert : p.certificates())
                if (cert.label == "accuracy") achieved = scale * cert.max_observed;
            return std::tuple<BoundedPoly, double, double>{std::move(p), scale, achieved};
        };
    } else if (label == "log") {
        spec.fn = [](double x) { return std::log(x); };
        spec.homogeneous = false;
        spec.lipschitz_on = [](double delta) { return 1.0 / delta; };
        spec.range_max = [](double delta) { return std::log(1.0 / delta); };
        spec.build = [](double delta, double e_f, int max_degree) {
            auto [p, K] = log_poly(delta, std::min(0.49, e_f / (2.0 * std::log(2.0 / delta))),
                                   max_degree);
            double achieved = e_f;
            for (const auto& cert : p.certificates())
                if (cert.label == "accuracy") achieved = K * cert.max_observed;
            return std::tuple<BoundedPoly, double, double>{std::move(p), -K, achieved};
        };
    } else {
        throw InvalidInputError("unknown function label '" + label + "'");
    }
    spec.id = label;
    return spec;
}

struct TraceFgOptions : EstimationOptions {
    TraceFgOptions() { std_factor = 0.75; }
    TraceMode mode = TraceMode::ExactHomogeneous;
    double encoding_eps_a = 0.0; ///< Lipschitz mode: injected perturbation size
    double encoding_eps_b = 0.0;
    double beta_a = 1.0; ///< exact mode only; effective block is A / beta_a
    double beta_b = 1.0;
    double estimation_share = 0.5; ///< minimum eps fraction reserved for sampling noise
};

struct TraceFgResult {
    Complex value{0.0, 0.0};
    double requested_eps = 0.0;
    double poly_eps_f = 0.0; ///< achieved surrogate error at function scale
    double poly_eps_g = 0.0;
    double estimation_eps = 0.0; ///< sampling budget at final scale
    double scale_f = 1.0, scale_g = 1.0;
    double beta_undo = 1.0;
    double encoding_eta_a = 0.0; ///< measured ||A~ - A/beta||
    double encoding_eta_b = 0.0;
    long long queries_simulated = 0;
    int N = 0, m = 0, batches = 0;
};

/// Estimates tr(f(A) g(B)) to additive error eps (with the usual 2/3-style
/// confidence from median-of-means), given effective-block singular values
/// at least delta.
inline TraceFgResult estimate_trace_fg(const Matrix& a, const Matrix& b,
                                       const std::string& f_id, const std::string& g_id,
                                       double eps, double delta,
                                       const TraceFgOptions& opts = {}) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw InvalidInputError("estimate_trace_fg: matrices must be square with equal size");
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidParameterError("estimate_trace_fg: eps must be in (0, 1)");
    if (!(delta > 0.0 && delta <= 1.0))
        throw InvalidParameterError("estimate_trace_fg: delta must be in (0, 1]");
    const int d = static_cast<int>(a.rows());
    if (!is_power_of_two(d))
        throw InvalidInputError("estimate_trace_fg: dimension must be a power of two");

    FunctionSpec f_spec = parse_function_label(f_id);
    FunctionSpec g_spec = parse_function_label(g_id);
    if (opts.mode == TraceMode::ExactHomogeneous) {
        if (!f_spec.homogeneous || !g_spec.homogeneous)
            throw InvalidInputError(
                "estimate_trace_fg: exact mode requires homogeneous function labels");
    } else {
        if (opts.beta_a != 1.0 || opts.beta_b != 1.0)
            throw InvalidParameterError("estimate_trace_fg: Lipschitz mode requires beta = 1");
    }

    BlockEncoding be_a = dilate(a, opts.beta_a);
    BlockEncoding be_b = dilate(b, opts.beta_b);

    // Documented precondition: effective-block singular values >= delta.
    // Vacuous for a side whose surrogate is exact everywhere (monomials).
    if (!f_spec.exact_poly) {
        const double smin_a = svd(top_left_block(be_a)).singular_values.minCoeff();
        if (smin_a < delta - 1e-12)
            throw PreconditionViolationError(
                "estimate_trace_fg: A-side effective-block singular value below delta");
    }
    if (!g_spec.exact_poly) {
        const double smin_b = svd(top_left_block(be_b)).singular_values.minCoeff();
        if (smin_b < delta - 1e-12)
            throw PreconditionViolationError(
                "estimate_trace_fg: B-side effective-block singular value below delta");
    }

    TraceFgResult res;
    res.requested_eps = eps;
    res.batches = opts.batches;

    double delta_build = delta;
    RngStream seed_root(opts.seed);
    if (opts.mode == TraceMode::LipschitzApprox) {
        if (opts.encoding_eps_a > 0.0) {
            RngStream s = seed_root.child("perturb-a");
            auto [pe, eta] = inject_perturbation(be_a, opts.encoding_eps_a, s);
            be_a = std::move(pe);
            res.encoding_eta_a = eta;
        }
        if (opts.encoding_eps_b > 0.0) {
            RngStream s = seed_root.child("perturb-b");
            auto [pe, eta] = inject_perturbation(be_b, opts.encoding_eps_b, s);
            be_b = std::move(pe);
            res.encoding_eta_b = eta;
        }
        delta_build = delta - 2.0 * (res.encoding_eta_a + res.encoding_eta_b);
        if (delta_build <= 1e-6)
            throw InvalidParameterError(
                "estimate_trace_fg: perturbation too large for the given delta");
    }

    // Surrogate budgets in the spirit of the per-term split eps/(2d) and
    // eps/(2Kd), halved so the sampling noise keeps its share of eps.
    const double g_range = g_spec.range_max(delta_build);
    const double f_range = f_spec.range_max(delta_build);
    const double poly_share = 1.0 - opts.estimation_share;
    auto [poly_g, scale_g, ach_g] =
        g_spec.build(delta_build, poly_share * eps / (2.0 * d * std::max(1.0, f_range)),
                     opts.max_degree);
    auto [poly_f, scale_f, ach_f] =
        f_spec.build(delta_build, poly_share * eps / (2.0 * d * std::max(1.0, std::abs(scale_g))),
                     opts.max_degree);
    res.scale_f = scale_f;
    res.scale_g = scale_g;
    res.poly_eps_f = ach_f;
    res.poly_eps_g = ach_g;

    res.beta_undo = 1.0;
    if (opts.mode == TraceMode::ExactHomogeneous)
        res.beta_undo = std::pow(opts.beta_a, f_spec.hom_degree) *
                        std::pow(opts.beta_b, g_spec.hom_degree);

    const double final_scale = std::abs(scale_f * scale_g) * std::abs(res.beta_undo);
    const double bias_bound =
        d * (ach_f * std::abs(scale_g) + f_range * ach_g) * std::abs(res.beta_undo);
    const double est_budget = std::max(eps - 1.05 * bias_bound, opts.estimation_share * eps);
    res.estimation_eps = est_budget;
    const double eps_t = est_budget / final_scale; // at transformed-trace level

    ProtocolConfig cfg;
    cfg.d = d;
    cfg.m = std::max(1, static_cast<int>(std::ceil(opts.c_m * d * d)));
    cfg.N = iterations_for(d, cfg.m, opts.std_factor * eps_t, opts.safety);
    cfg.seed = seed_root.child("protocol").key();
    cfg.poly_f = poly_f;
    cfg.poly_g = poly_g;
    cfg.be_a = std::move(be_a);
    cfg.be_b = std::move(be_b);
    cfg.threads = opts.threads;

    const Complex t_hat = median_of_means(cfg, opts.batches);
    res.value = scale_f * scale_g * res.beta_undo * t_hat;
    res.N = cfg.N;
    res.m = cfg.m;
    const long long per_side =
        static_cast<long long>(cfg.N) * cfg.m * 4 * opts.batches;
    res.queries_simulated =
        per_side * poly_f.degree() + per_side * poly_g.degree();
    return res;
}

} // namespace locctrace
