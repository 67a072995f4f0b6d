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
 * Parity-tagged real polynomials in the Chebyshev-T basis on [-1,1], with
 * numerically certified sup-norm records, plus the degree-searching fitter
 * that produces them.
 *
 * Certification model: every claimed bound (approximation error on an
 * interval, global magnitude, envelope membership) is verified on a dense
 * grid of Chebyshev-distributed points, at least 32x the polynomial degree,
 * endpoints included. Construction additionally requires a small safety
 * margin below the requested bound so that re-evaluating on a fresh, finer
 * grid stays within the recorded bound. The coefficient 1-norm is kept as a
 * rigorous global fallback bound.
 */

#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "locctrace/errors.hpp"

namespace locctrace {

enum class Parity { Even, Odd, None };

/// One verified bound: on [lo, hi] the quantity named by `label` never
/// exceeded `bound`, with `max_observed` the largest value seen on a
/// `grid_points`-point certification grid.
struct CertRecord {
    std::string label;
    double lo = -1.0;
    double hi = 1.0;
    double bound = 0.0;
    double max_observed = 0.0;
    int grid_points = 0;
};

/// Evidence attached to a fit: what was requested and what was achieved.
struct ApproxReport {
    std::string target_id;
    double lo = -1.0;
    double hi = 1.0;
    double requested_eps = 0.0;
    double achieved_eps = 0.0;
    int degree = 0;
    int grid_points = 0;
};

namespace cheb_detail {

inline double clenshaw(const std::vector<double>& c, double x) {
    if (c.empty()) return 0.0;
    double b1 = 0.0, b2 = 0.0;
    for (size_t k = c.size() - 1; k >= 1; --k) {
        const double b0 = 2.0 * x * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

inline std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

/// Chebyshev interpolation coefficients through the Lobatto nodes
/// x_k = cos(pi k / N), from the N+1 sampled values.
inline std::vector<double> values_to_coeffs(const std::vector<double>& v) {
    const int N = static_cast<int>(v.size()) - 1;
    if (N < 1) return {v.empty() ? 0.0 : v[0]};
    std::vector<double> c(static_cast<size_t>(N) + 1);
    if (N <= 64) {
        for (int j = 0; j <= N; ++j) {
            double acc = 0.5 * (v[0] + (j % 2 == 0 ? v[N] : -v[N]));
            for (int k = 1; k < N; ++k)
                acc += v[static_cast<size_t>(k)] * std::cos(M_PI * j * k / N);
            c[static_cast<size_t>(j)] = acc * 2.0 / N;
        }
    } else {
        std::vector<double> in(v), out(v.size());
        {
            std::lock_guard<std::mutex> lock(fftw_mutex());
            fftw_plan plan = fftw_plan_r2r_1d(N + 1, in.data(), out.data(), FFTW_REDFT00,
                                              FFTW_ESTIMATE);
            fftw_execute(plan);
            fftw_destroy_plan(plan);
        }
        for (int j = 0; j <= N; ++j) c[static_cast<size_t>(j)] = out[static_cast<size_t>(j)] / N;
    }
    c[0] *= 0.5;
    c[static_cast<size_t>(N)] *= 0.5;
    return c;
}

/// Values of the polynomial at the M+1 Lobatto nodes cos(pi k / M), via a
/// zero-padded inverse transform. Requires M >= degree.
inline std::vector<double> eval_lobatto(const std::vector<double>& c, int M) {
    std::vector<double> a(static_cast<size_t>(M) + 1, 0.0);
    for (size_t j = 0; j < c.size() && j <= static_cast<size_t>(M); ++j)
        a[j] = (j == 0 || j == static_cast<size_t>(M)) ? c[j] : 0.5 * c[j];
    if (M <= 64) {
        std::vector<double> v(static_cast<size_t>(M) + 1, 0.0);
        for (int k = 0; k <= M; ++k) {
            double acc = a[0] + (k % 2 == 0 ? a[static_cast<size_t>(M)] : -a[static_cast<size_t>(M)]);
            for (int j = 1; j < M; ++j)
                acc += 2.0 * a[static_cast<size_t>(j)] * std::cos(M_PI * j * k / M);
            v[static_cast<size_t>(k)] = acc;
        }
        return v;
    }
    std::vector<double> v(a.size());
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_plan plan = fftw_plan_r2r_1d(M + 1, a.data(), v.data(), FFTW_REDFT00, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    return v;
}

inline int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace cheb_detail

class BoundedPoly {
  public:
    /// Zero polynomial (even by convention).
    BoundedPoly() : coeffs_{0.0}, parity_(Parity::Even) {}

    BoundedPoly(std::vector<double> coeffs, Parity parity)
        : coeffs_(std::move(coeffs)), parity_(parity) {
        if (coeffs_.empty()) coeffs_.push_back(0.0);
        for (double c : coeffs_)
            if (!std::isfinite(c))
                throw InvalidInputError("BoundedPoly: non-finite coefficient");
        if (parity_ != Parity::None) {
            const size_t off = (parity_ == Parity::Even) ? 1 : 0;
            for (size_t j = off; j < coeffs_.size(); j += 2)
                if (coeffs_[j] != 0.0)
                    throw ContractViolationError(
                        "BoundedPoly: parity tag requires structurally zero coefficients");
        }
    }

    static BoundedPoly zero() { return BoundedPoly(); }

    /// scale * x^k expressed exactly in the Chebyshev basis.
    static BoundedPoly monomial(int k, double scale = 1.0) {
        if (k < 0) throw InvalidParameterError("BoundedPoly::monomial: negative power");
        std::vector<double> c{1.0};
        for (int step = 0; step < k; ++step) {
            std::vector<double> next(c.size() + 1, 0.0);
            for (size_t j = 0; j < c.size(); ++j) {
                if (c[j] == 0.0) continue;
                if (j == 0) {
                    next[1] += c[0];
                } else {
                    next[j + 1] += 0.5 * c[j];
                    next[j - 1] += 0.5 * c[j];
                }
            }
            c = std::move(next);
        }
        for (double& x : c) x *= scale;
        return BoundedPoly(std::move(c), k % 2 == 0 ? Parity::Even : Parity::Odd);
    }

    double operator()(double x) const { return cheb_detail::clenshaw(coeffs_, x); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Parity parity() const { return parity_; }
    const std::vector<double>& cheb_coeffs() const { return coeffs_; }

    /// Rigorous global bound: max |P| on [-1,1] <= sum |c_j|.
    double coeff_abs_sum() const {
        double s = 0.0;
        for (double c : coeffs_) s += std::abs(c);
        return s;
    }

    const std::vector<CertRecord>& certificates() const { return certs_; }
    void add_certificate(CertRecord rec) { certs_.push_back(std::move(rec)); }

    /// Fresh polynomial with all coefficients multiplied by s. Certificates
    /// are not carried over; callers re-certify what they need.
    BoundedPoly scaled(double s) const {
        std::vector<double> c(coeffs_);
        for (double& x : c) x *= s;
        return BoundedPoly(std::move(c), parity_);
    }

  private:
    std::vector<double> coeffs_;
    Parity parity_;
    std::vector<CertRecord> certs_;
};

namespace cheb_detail {

/// Visits (x, P(x)) over a Chebyshev-distributed grid on [lo, hi] with at
/// least min_points points, endpoints included. Switches to an FFT-evaluated
/// global grid when direct evaluation would be too expensive.
template <typename Fn>
void for_each_grid_point(const BoundedPoly& p, double lo, double hi, int min_points, Fn&& fn) {
    const int deg = p.degree();
    min_points = std::max(min_points, 16);
    const long long direct_cost =
        static_cast<long long>(min_points) * (static_cast<long long>(deg) + 1);
    const bool global_interval = (lo <= -1.0 + 1e-15 && hi >= 1.0 - 1e-15);
    if (direct_cost <= (1LL << 25) && !(global_interval && deg > 2048)) {
        const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        const int G = min_points;
        for (int i = 0; i < G; ++i) {
            const double x = (G == 1) ? mid : mid + half * std::cos(M_PI * i / (G - 1));
            fn(x, p(x));
        }
        return;
    }
    // FFT path: evaluate on a global Lobatto grid and keep the nodes that
    // fall inside [lo, hi]; interval endpoints are added explicitly.
    int M = next_pow2(std::max(32 * (deg + 1), min_points));
    M = std::min(M, 1 << 23);
    std::vector<double> vals = eval_lobatto(p.cheb_coeffs(), M);
    int used = 0;
    for (int k = 0; k <= M; ++k) {
        const double x = std::cos(M_PI * k / M);
        if (x >= lo - 1e-15 && x <= hi + 1e-15) {
            fn(std::clamp(x, lo, hi), vals[static_cast<size_t>(k)]);
            ++used;
        }
    }
    fn(lo, p(lo));
    fn(hi, p(hi));
    if (used < min_points / 64) {
        // Narrow interval missed by the global grid: direct fallback.
        const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        for (int i = 0; i < min_points; ++i) {
            const double x = mid + half * std::cos(M_PI * i / (min_points - 1));
            fn(x, p(x));
        }
    }
}

} // namespace cheb_detail

/// Largest |P(x) - f(x)| over a dense grid on [lo, hi].
inline double grid_sup_error(const BoundedPoly& p, const std::function<double(double)>& f,
                             double lo, double hi, int min_points) {
    double worst = 0.0;
    cheb_detail::for_each_grid_point(p, lo, hi, min_points, [&](double x, double px) {
        const double fx = f(x);
        if (!std::isfinite(fx)) throw InvalidInputError("grid_sup_error: target not finite on grid");
        worst = std::max(worst, std::abs(px - fx));
    });
    return worst;
}

/// (min, max) of P over a dense grid on [lo, hi].
inline std::pair<double, double> grid_range(const BoundedPoly& p, double lo, double hi,
                                            int min_points) {
    double lo_v = std::numeric_limits<double>::infinity();
    double hi_v = -std::numeric_limits<double>::infinity();
    cheb_detail::for_each_grid_point(p, lo, hi, min_points, [&](double, double px) {
        lo_v = std::min(lo_v, px);
        hi_v = std::max(hi_v, px);
    });
    return {lo_v, hi_v};
}

/// Largest positive excess of |P(x)| over envelope(x) on a dense grid.
inline double grid_sup_violation(const BoundedPoly& p,
                                 const std::function<double(double)>& envelope, double lo,
                                 double hi, int min_points) {
    double worst = 0.0;
    cheb_detail::for_each_grid_point(p, lo, hi, min_points, [&](double x, double px) {
        worst = std::max(worst, std::abs(px) - envelope(x));
    });
    return std::max(worst, 0.0);
}

struct FitOptions {
    int max_degree = 4096;
    int min_degree = 1;
    Parity parity = Parity::None;
    double cert_margin = 0.97; ///< pass requires grid error <= margin * eps
    int grid_factor = 32;
    bool minimize = true; ///< bisect back to the smallest passing degree
    std::string target_id = "custom";
};

namespace cheb_detail {

struct FitAttempt {
    bool ok = false;
    BoundedPoly poly;
    double err = std::numeric_limits<double>::infinity();
    int grid_points = 0;
};

inline std::vector<double> zero_off_parity(std::vector<double> c, Parity parity) {
    if (parity == Parity::None) return c;
    const size_t off = (parity == Parity::Even) ? 1 : 0;
    for (size_t j = off; j < c.size(); j += 2) c[j] = 0.0;
    return c;
}

inline std::vector<double> trim_trailing(std::vector<double> c) {
    double mx = 1.0;
    for (double x : c) mx = std::max(mx, std::abs(x));
    size_t n = c.size();
    while (n > 1 && std::abs(c[n - 1]) <= 1e-15 * mx) --n;
    c.resize(n);
    return c;
}

inline FitAttempt try_degree(const std::function<double(double)>& f, double lo, double hi,
                             double eps, int degree, const FitOptions& opts) {
    FitAttempt out;
    const bool global = (lo <= -1.0 + 1e-15 && hi >= 1.0 - 1e-15);
    const int N = std::max(degree, 2);
    std::vector<double> coeffs;

    auto sample = [&](double x) {
        double y;
        if (opts.parity == Parity::Even)
            y = 0.5 * (f(x) + f(-x));
        else if (opts.parity == Parity::Odd)
            y = 0.5 * (f(x) - f(-x));
        else
            y = f(x);
        if (!std::isfinite(y)) throw InvalidInputError("chebyshev fit: target not finite");
        return y;
    };

    if (global) {
        std::vector<double> v(static_cast<size_t>(N) + 1);
        for (int k = 0; k <= N; ++k) v[static_cast<size_t>(k)] = sample(std::cos(M_PI * k / N));
        coeffs = values_to_coeffs(v);
    } else {
        // Fit in the mapped basis on [lo, hi], then re-expand exactly into the
        // global basis through a degree-sized global transform. The mapped
        // polynomial may grow quickly outside [lo, hi]; overflow at high
        // degree is reported as a failed attempt.
        const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        std::vector<double> v(static_cast<size_t>(N) + 1);
        for (int k = 0; k <= N; ++k)
            v[static_cast<size_t>(k)] = sample(mid + half * std::cos(M_PI * k / N));
        std::vector<double> local = values_to_coeffs(v);
        std::vector<double> g(static_cast<size_t>(N) + 1);
        for (int k = 0; k <= N; ++k) {
            const double x = std::cos(M_PI * k / N);
            const double t = (half == 0.0) ? 0.0 : (x - mid) / half;
            g[static_cast<size_t>(k)] = clenshaw(local, t);
        }
        for (double y : g)
            if (!std::isfinite(y)) return out;
        coeffs = values_to_coeffs(g);
    }

    coeffs = trim_trailing(zero_off_parity(std::move(coeffs), opts.parity));
    for (double c : coeffs)
        if (!std::isfinite(c)) return out;

    BoundedPoly poly(std::move(coeffs), opts.parity);
    const int points = std::max(opts.grid_factor * (poly.degree() + 1), 512);
    double err;
    if (hi > lo) {
        err = grid_sup_error(poly, f, lo, hi, points);
    } else {
        err = std::abs(poly(lo) - f(lo));
    }
    out.poly = std::move(poly);
    out.err = err;
    out.grid_points = points;
    out.ok = err <= opts.cert_margin * eps;
    return out;
}

} // namespace cheb_detail

/// Fits f on [lo, hi] (a subset of [-1,1]) to sup-norm error <= eps,
/// verified on a dense grid. The degree is minimized by doubling until the
/// certificate passes and then bisecting back. Throws
/// ApproximationFailureError (carrying the best error achieved) if
/// max_degree is exhausted.
inline std::pair<BoundedPoly, ApproxReport> chebyshev_fit_certified(
    const std::function<double(double)>& f, double lo, double hi, double eps,
    const FitOptions& opts = {}) {
    if (!(lo >= -1.0 - 1e-12 && hi <= 1.0 + 1e-12 && lo <= hi))
        throw InvalidParameterError("chebyshev_fit_certified: interval must be within [-1,1]");
    if (!(eps > 0.0 && eps < 0.5))
        throw InvalidParameterError("chebyshev_fit_certified: eps must be in (0, 1/2)");
    if (opts.parity != Parity::None && !(lo <= -1.0 + 1e-15 && hi >= 1.0 - 1e-15))
        throw InvalidParameterError(
            "chebyshev_fit_certified: parity-constrained fits must use the full interval");
    if (opts.max_degree < 1)
        throw InvalidParameterError("chebyshev_fit_certified: max_degree must be >= 1");

    using cheb_detail::FitAttempt;
    using cheb_detail::try_degree;

    double best_err = std::numeric_limits<double>::infinity();
    int best_deg = 0;

    int n = std::min(std::max(opts.min_degree, 1), opts.max_degree);
    int fail_below = n - 1;
    FitAttempt pass;
    int pass_degree = -1;
    while (true) {
        FitAttempt a = try_degree(f, lo, hi, eps, n, opts);
        if (a.err < best_err) {
            best_err = a.err;
            best_deg = a.poly.degree();
        }
        if (a.ok) {
            pass = std::move(a);
            pass_degree = n;
            break;
        }
        fail_below = n;
        if (n >= opts.max_degree) break;
        n = std::min(2 * n, opts.max_degree);
    }
    if (pass_degree < 0)
        throw ApproximationFailureError("chebyshev_fit_certified: max_degree exhausted for '" +
                                            opts.target_id + "'",
                                        best_err, best_deg);

    while (opts.minimize && pass_degree - fail_below > 1) {
        const int mid = fail_below + (pass_degree - fail_below) / 2;
        FitAttempt a = try_degree(f, lo, hi, eps, mid, opts);
        if (a.ok) {
            pass = std::move(a);
            pass_degree = mid;
        } else {
            fail_below = mid;
        }
    }

    BoundedPoly poly = std::move(pass.poly);
    poly.add_certificate(CertRecord{"accuracy", lo, hi, eps, pass.err, pass.grid_points});
    ApproxReport report{opts.target_id, lo,          hi,
                        eps,            pass.err,    poly.degree(),
                        pass.grid_points};
    return {std::move(poly), std::move(report)};
}

/// Even-part construction P(x) = P*(x) + P*(-x): even-index coefficients are
/// doubled, odd-index ones drop out structurally. (Coefficients here are
/// real throughout, so taking the real part is implicit.)
inline BoundedPoly symmetrize_even(const BoundedPoly& p_star) {
    const std::vector<double>& c = p_star.cheb_coeffs();
    std::vector<double> out(c.size(), 0.0);
    for (size_t j = 0; j < c.size(); j += 2) out[j] = 2.0 * c[j];
    return BoundedPoly(cheb_detail::trim_trailing(std::move(out)), Parity::Even);
}

} // namespace locctrace
