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
 * Certified bounded polynomial targets used by the singular-value
 * transformation layer: a scaled logarithm, a smoothed symmetric rectangle,
 * positive and negative power functions, and a scaled reciprocal.
 *
 * Construction pattern: the target is multiplied by a smooth erf ramp that
 * vanishes below the accuracy interval (crushing the singular or clamped
 * part of the core function), the product is fitted globally on [-1,1] with
 * the required parity, and every claimed bound is then certified on dense
 * grids against the true target. Each emitted polynomial carries its
 * certificate records.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "locctrace/chebyshev.hpp"
#include "locctrace/errors.hpp"

namespace locctrace {

namespace target_detail {

/// Construction cache: the certified targets are pure functions of their
/// parameters, and applications re-request identical fits many times.
inline BoundedPoly cached_or_build(const std::string& key,
                                   const std::function<BoundedPoly()>& build) {
    static std::map<std::string, BoundedPoly> cache;
    static std::mutex mutex;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    BoundedPoly poly = build();
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, poly);
    return poly;
}

inline std::string key_double(double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(bits));
    return std::string(buf);
}

struct ErfRamp {
    double center = 0.0;
    double steepness = 1.0;
    double operator()(double u) const { return 0.5 * (1.0 + std::erf(steepness * (u - center))); }
};

/// Ramp with value <= resid/2 at lo_zero and >= 1 - resid/2 at lo_one.
inline ErfRamp make_ramp(double lo_zero, double lo_one, double resid) {
    const double half = 0.5 * (lo_one - lo_zero);
    const double z = std::sqrt(std::log(1.0 / resid));
    return ErfRamp{0.5 * (lo_zero + lo_one), z / half};
}

inline double window_resid(double eps, double delta) {
    return std::clamp(0.1 * eps * delta, 1e-14, 1e-7);
}

struct WindowedSpec {
    std::function<double(double)> core; ///< target on u > 0
    double clamp_lo = 0.0;              ///< argument floor fed to core
    double ramp_zero = 0.0;             ///< window ~0 at and below this |x|
    double ramp_one = 0.0;              ///< window ~1 at and above this |x|
    double resid = 1e-10;
    Parity parity = Parity::Even;
    std::string id;
};

inline std::function<double(double)> windowed_callable(const WindowedSpec& spec) {
    const ErfRamp w = make_ramp(spec.ramp_zero, spec.ramp_one, spec.resid);
    return [spec, w](double x) {
        const double u = std::abs(x);
        const double s = (spec.parity == Parity::Odd) ? ((x > 0) - (x < 0)) : 1.0;
        return s * spec.core(std::max(u, spec.clamp_lo)) * w(u);
    };
}

/// Signed true target (no window, no clamp), defined for |x| >= delta.
inline std::function<double(double)> signed_core(const WindowedSpec& spec) {
    return [spec](double x) {
        const double s = (spec.parity == Parity::Odd) ? ((x > 0) - (x < 0)) : 1.0;
        return s * spec.core(std::abs(x));
    };
}

/// Fits the windowed target, then certifies accuracy against the true core
/// on [delta, 1] and the global magnitude bound <= 1 (rescaling slightly if
/// the fit overshoots, and re-measuring afterwards).
inline BoundedPoly fit_and_certify(const WindowedSpec& spec, double delta, double eps,
                                   int max_degree) {
    FitOptions opts;
    opts.parity = spec.parity;
    opts.max_degree = max_degree;
    opts.target_id = spec.id;
    auto [fit, report] = chebyshev_fit_certified(windowed_callable(spec), -1.0, 1.0,
                                                 0.6 * eps, opts);
    // Keep only certificates stated against the true target; the fitter's
    // internal record refers to the windowed surrogate.
    BoundedPoly poly(fit.cheb_coeffs(), fit.parity());

    const int points = std::max(32 * (poly.degree() + 1), 4096);
    auto truth = signed_core(spec);

    auto global_magnitude = [&](const BoundedPoly& p) {
        auto [mn, mx] = grid_range(p, -1.0, 1.0, points);
        return std::max(std::abs(mn), std::abs(mx));
    };
    double global_max = global_magnitude(poly);
    if (global_max > 1.0) {
        poly = poly.scaled((1.0 - 4e-15) / global_max);
        global_max = global_magnitude(poly);
    }
    const double acc = grid_sup_error(poly, truth, delta, 1.0, points);
    if (acc > eps)
        throw ApproximationFailureError("poly target '" + spec.id +
                                            "': certified error exceeds request",
                                        acc, poly.degree());
    if (global_max > 1.0)
        throw ApproximationFailureError("poly target '" + spec.id + "': magnitude bound failed",
                                        global_max - 1.0, poly.degree());
    poly.add_certificate(CertRecord{"accuracy", delta, 1.0, eps, acc, points});
    poly.add_certificate(CertRecord{"global-bound", -1.0, 1.0, 1.0, global_max, points});
    if (poly.coeff_abs_sum() <= 1.0)
        poly.add_certificate(
            CertRecord{"coeff-sum-bound", -1.0, 1.0, 1.0, poly.coeff_abs_sum(), 0});
    return poly;
}

} // namespace target_detail

/// Even polynomial P with |P(x) - ln(1/x)/K| <= eps on [delta, 1],
/// ||P|| <= 1 on [-1,1], K = 2 ln(2/delta). Returns (P, K).
inline std::pair<BoundedPoly, double> log_poly(double delta, double eps, int max_degree = 4096) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw InvalidParameterError("log_poly: delta must be in (0, 1]");
    if (!(eps > 0.0 && eps < 0.5))
        throw InvalidParameterError("log_poly: eps must be in (0, 1/2)");
    const double K = 2.0 * std::log(2.0 / delta);
    const std::string key = "log:" + target_detail::key_double(delta) + ":" +
                            target_detail::key_double(eps) + ":" + std::to_string(max_degree);
    BoundedPoly poly = target_detail::cached_or_build(key, [&]() {
        target_detail::WindowedSpec spec;
        spec.core = [K](double u) { return std::log(1.0 / u) / K; };
        spec.clamp_lo = 0.5 * delta;
        spec.ramp_zero = 0.5 * delta;
        spec.ramp_one = delta;
        spec.resid = target_detail::window_resid(eps, delta);
        spec.parity = Parity::Even;
        spec.id = "log";
        return target_detail::fit_and_certify(spec, delta, eps, max_degree);
    });
    return {std::move(poly), K};
}

/// Smoothed symmetric rectangle: even, 0 <= P <= 1 on [-1,1], P in
/// [1-eps_p, 1] on [-t+delta_p, t-delta_p] and P in [0, eps_p] outside
/// [-t-delta_p, t+delta_p], all grid-certified.
inline BoundedPoly rect_poly(double t, double delta_p, double eps_p, int max_degree = 4096) {
    if (!(delta_p > 0.0 && delta_p < 0.5))
        throw InvalidParameterError("rect_poly: delta_p must be in (0, 1/2)");
    if (!(eps_p > 0.0 && eps_p < 0.5))
        throw InvalidParameterError("rect_poly: eps_p must be in (0, 1/2)");
    if (!(t >= -1.0 && t <= 1.0))
        throw InvalidParameterError("rect_poly: t must be in [-1, 1]");
    if (t <= delta_p)
        throw InvalidParameterError("rect_poly: infeasible band geometry, need t > delta_p");

    const double k = std::sqrt(std::log(8.0 / eps_p)) / delta_p;
    auto h = [t, k](double x) { return 0.5 * (std::erf(k * (x + t)) - std::erf(k * (x - t))); };

    FitOptions opts;
    opts.parity = Parity::Even;
    opts.max_degree = max_degree;
    opts.target_id = "rect";
    auto [fit, report] = chebyshev_fit_certified(h, -1.0, 1.0, eps_p / 4.0, opts);

    // Affine renormalization into [0, 1]: P = (fit + c) / (1 + 2c).
    const double c = eps_p / 4.0;
    std::vector<double> coeffs = fit.cheb_coeffs();
    for (double& x : coeffs) x /= (1.0 + 2.0 * c);
    coeffs[0] += c / (1.0 + 2.0 * c);
    BoundedPoly poly(std::move(coeffs), Parity::Even);

    const int points = std::max(32 * (poly.degree() + 1), 4096);
    auto outside = [&](double lo, double hi, double band_lo, double band_hi, const char* label) {
        if (lo > hi) return; // empty region
        auto [mn, mx] = grid_range(poly, lo, hi, points);
        const double violation = std::max({0.0, band_lo - mn, mx - band_hi});
        if (violation > 0.0)
            throw ApproximationFailureError(std::string("rect_poly: ") + label +
                                                " membership failed",
                                            violation, poly.degree());
        poly.add_certificate(CertRecord{label, lo, hi, eps_p, violation, points});
    };
    outside(-t + delta_p, t - delta_p, 1.0 - eps_p, 1.0, "plateau");
    outside(t + delta_p, 1.0, 0.0, eps_p, "stopband");
    outside(-1.0, -t - delta_p, 0.0, eps_p, "stopband");
    auto [gmn, gmx] = grid_range(poly, -1.0, 1.0, points);
    const double gmag = std::max(std::abs(gmn), std::abs(gmx));
    if (gmag > 1.0)
        throw ApproximationFailureError("rect_poly: magnitude bound failed", gmag - 1.0,
                                        poly.degree());
    poly.add_certificate(CertRecord{"global-bound", -1.0, 1.0, 1.0, gmag, points});
    return poly;
}

enum class PowerSign { Positive, Negative };

/// Positive case: approximates x^c / 2 on [delta, 1] within eps with
/// |P(x)| <= |x|^c / 2 + eps everywhere on [-1,1]. Negative case:
/// approximates delta^c x^-c / 2 on [delta, 1] within eps. Both have
/// ||P|| <= 1 on [-1,1] and the requested definite parity.
inline BoundedPoly power_poly(double c, Parity parity, double delta, double eps,
                              PowerSign sign, int max_degree = 4096) {
    if (!(c > 0.0)) throw InvalidParameterError("power_poly: exponent must be positive");
    if (!(delta > 0.0 && delta <= 0.5))
        throw InvalidParameterError("power_poly: delta must be in (0, 1/2]");
    if (!(eps > 0.0 && eps <= 0.5))
        throw InvalidParameterError("power_poly: eps must be in (0, 1/2]");
    if (parity == Parity::None)
        throw InvalidParameterError("power_poly: parity must be even or odd");
    const std::string key = std::string("power:") + (sign == PowerSign::Positive ? "p" : "n") +
                            (parity == Parity::Even ? "e:" : "o:") +
                            target_detail::key_double(c) + ":" + target_detail::key_double(delta) +
                            ":" + target_detail::key_double(eps) + ":" +
                            std::to_string(max_degree);
    return target_detail::cached_or_build(key, [&]() {
    const int points_for = 4096;

    if (sign == PowerSign::Positive) {
        auto attach_positive_certs = [&](BoundedPoly& poly) {
            const int points = std::max(32 * (poly.degree() + 1), points_for);
            auto envelope = [c](double x) { return 0.5 * std::pow(std::abs(x), c); };
            const double excess = grid_sup_violation(poly, envelope, -1.0, 1.0, points);
            if (excess > eps)
                throw ApproximationFailureError("power_poly: envelope bound failed", excess,
                                                poly.degree());
            poly.add_certificate(CertRecord{"envelope", -1.0, 1.0, eps, excess, points});
        };

        // Integer exponents of matching parity are exact monomials.
        const double c_round = std::round(c);
        if (std::abs(c - c_round) < 1e-12 && c_round <= 64.0 &&
            ((static_cast<long long>(c_round) % 2 == 0) == (parity == Parity::Even))) {
            BoundedPoly poly = BoundedPoly::monomial(static_cast<int>(c_round), 0.5);
            const int points = std::max(32 * (poly.degree() + 1), points_for);
            auto truth = [c](double x) {
                const double s = (static_cast<long long>(c) % 2 == 0) ? 1.0 : ((x > 0) - (x < 0));
                return s * 0.5 * std::pow(std::abs(x), c);
            };
            const double acc = grid_sup_error(poly, truth, delta, 1.0, points);
            poly.add_certificate(CertRecord{"accuracy", delta, 1.0, eps, acc, points});
            poly.add_certificate(CertRecord{"global-bound", -1.0, 1.0, 1.0, 0.5, points});
            attach_positive_certs(poly);
            return poly;
        }

        target_detail::WindowedSpec spec;
        spec.core = [c](double u) { return 0.5 * std::pow(u, c); };
        spec.clamp_lo = 0.0;
        spec.ramp_zero = 0.5 * delta;
        spec.ramp_one = delta;
        spec.resid = target_detail::window_resid(eps, delta);
        spec.parity = parity;
        spec.id = "power-positive";

        // For small delta a direct global fit of the (windowless) target is
        // far cheaper than resolving a steep window; try the cheap route
        // first and fall back to the other.
        auto direct = [&]() {
            FitOptions opts;
            opts.parity = parity;
            opts.max_degree = max_degree;
            // Global even/odd approximation of |x|^c needs degree roughly
            // (0.3/eps)^(1/c); start the search near the estimate and skip
            // the minimality bisection when it is large.
            const double est = std::pow(0.3 / eps, 1.0 / c);
            if (est > 64.0)
                opts.min_degree = static_cast<int>(std::min(est / 4.0, 1e8));
            if (est > 8192.0) opts.minimize = false;
            opts.target_id = "power-positive-direct";
            auto [fit, report] = chebyshev_fit_certified(target_detail::signed_core(spec), -1.0,
                                                         1.0, eps, opts);
            BoundedPoly poly(fit.cheb_coeffs(), fit.parity());
            poly.add_certificate(
                CertRecord{"accuracy", delta, 1.0, eps, report.achieved_eps, report.grid_points});
            auto [mn, mx] = grid_range(poly, -1.0, 1.0, report.grid_points);
            const double gmag = std::max(std::abs(mn), std::abs(mx));
            if (gmag > 1.0)
                throw ApproximationFailureError("power_poly: magnitude bound failed", gmag - 1.0,
                                                poly.degree());
            poly.add_certificate(
                CertRecord{"global-bound", -1.0, 1.0, 1.0, gmag, report.grid_points});
            return poly;
        };
        auto windowed = [&]() { return target_detail::fit_and_certify(spec, delta, eps, max_degree); };

        BoundedPoly poly;
        if (delta < 0.02) {
            // A window this steep needs a far higher degree than the direct
            // global approximation; go direct only.
            poly = direct();
        } else {
            try {
                poly = windowed();
            } catch (const ApproximationFailureError&) {
                poly = direct();
            }
        }
        attach_positive_certs(poly);
        return poly;
    }

    // Negative powers: clamp the argument where the window has already died
    // so the clamped core stays bounded by 3/4.
    target_detail::WindowedSpec spec;
    const double dc = std::pow(delta, c);
    spec.core = [c, dc](double u) { return 0.5 * dc * std::pow(u, -c); };
    spec.clamp_lo = delta * std::pow(2.0 / 3.0, 1.0 / c);
    spec.ramp_zero = spec.clamp_lo;
    spec.ramp_one = delta;
    spec.resid = target_detail::window_resid(eps, delta);
    spec.parity = parity;
    spec.id = "power-negative";
    return target_detail::fit_and_certify(spec, delta, eps, max_degree);
    });
}

/// Odd polynomial with |P(x) - (3/4)(delta/x)| <= eps on [delta, 1] (and by
/// parity on [-1, -delta]), ||P|| <= 1 on [-1,1].
inline BoundedPoly inverse_poly(double delta, double eps, int max_degree = 4096) {
    if (!(delta > 0.0 && delta <= 0.5))
        throw InvalidParameterError("inverse_poly: delta must be in (0, 1/2]");
    if (!(eps > 0.0 && eps <= 0.5))
        throw InvalidParameterError("inverse_poly: eps must be in (0, 1/2]");
    const std::string key = "inverse:" + target_detail::key_double(delta) + ":" +
                            target_detail::key_double(eps) + ":" + std::to_string(max_degree);
    return target_detail::cached_or_build(key, [&]() {
        target_detail::WindowedSpec spec;
        spec.core = [delta](double u) { return 0.75 * delta / u; };
        spec.clamp_lo = 0.5 * delta;
        spec.ramp_zero = 0.5 * delta;
        spec.ramp_one = delta;
        spec.resid = target_detail::window_resid(eps, delta);
        spec.parity = Parity::Odd;
        spec.id = "inverse";
        return target_detail::fit_and_certify(spec, delta, eps, max_degree);
    });
}

} // namespace locctrace
