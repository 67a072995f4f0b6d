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

// End-to-end verification suite. Each numbered criterion runs at its stated
// tolerance and prints a single [PASS]/[FAIL] line; the exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "locctrace/fixtures.hpp"
#include "locctrace/locctrace.hpp"

using namespace locctrace;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail,
            double seconds) {
    std::printf("[%s] %d %s: %s (%.1f s)\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

void criterion(int number, const std::string& name,
               const std::function<std::pair<bool, std::string>()>& body) {
    const auto t0 = Clock::now();
    bool ok = false;
    std::string detail;
    try {
        std::tie(ok, detail) = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    report(number, name, ok, detail,
           std::chrono::duration<double>(Clock::now() - t0).count());
}

struct Fixture1 {
    int d;
    Matrix block_a, block_b;
    BoundedPoly poly_f, poly_g;
};

std::vector<Fixture1> unbiasedness_fixtures() {
    std::vector<Fixture1> out;
    auto [p_log, k_log] = log_poly(0.2, 1e-4);
    (void)k_log;
    int which = 0;
    for (int d : {2, 4}) {
        for (int rep = 0; rep < 2; ++rep) {
            RngStream s(900 + which);
            RngStream sa = s.child("a"), sb = s.child("b");
            Fixture1 f;
            f.d = d;
            f.block_a = random_contraction_banded(d, 0.3, 0.95, sa);
            f.block_b = random_contraction_banded(d, 0.3, 0.95, sb);
            switch (which % 4) {
                case 0:
                    f.poly_f = BoundedPoly::monomial(1, 1.0);
                    f.poly_g = BoundedPoly::monomial(1, 1.0);
                    break;
                case 1:
                    f.poly_f = BoundedPoly::monomial(2, 1.0);
                    f.poly_g = BoundedPoly::monomial(1, 1.0);
                    break;
                case 2:
                    f.poly_f = p_log;
                    f.poly_g = BoundedPoly::monomial(2, 1.0);
                    break;
                default:
                    f.poly_f = BoundedPoly::monomial(3, 1.0);
                    f.poly_g = p_log;
                    break;
            }
            ++which;
            out.push_back(std::move(f));
        }
    }
    return out;
}

std::pair<bool, std::string> criterion_unbiasedness() {
    bool ok = true;
    double worst_oracle_gap = 0.0, worst_sigmas = 0.0;
    for (const Fixture1& f : unbiasedness_fixtures()) {
        const Matrix p = apply_poly_sv(f.block_a, f.poly_f).value;
        const Matrix q = apply_poly_sv(f.block_b, f.poly_g).value;
        const Complex direct = (p * q).trace();
        const Complex hm = haar_mean(p, q, f.d);
        worst_oracle_gap = std::max(worst_oracle_gap, std::abs(hm - direct));
        if (std::abs(hm - direct) > 1e-9) ok = false;

        ProtocolConfig cfg;
        cfg.d = f.d;
        cfg.N = 50;
        cfg.m = f.d * f.d;
        cfg.poly_f = f.poly_f;
        cfg.poly_g = f.poly_g;
        cfg.be_a = dilate(f.block_a, 1.0);
        cfg.be_b = dilate(f.block_b, 1.0);

        const int reps = 2000;
        std::vector<Complex> values(reps);
        RngStream seeds = RngStream(4242).child("replay");
        parallel_for(reps, 2, [&](int r) {
            ProtocolConfig run = cfg;
            run.seed = seeds.child(static_cast<std::uint64_t>(r)).key();
            values[static_cast<size_t>(r)] = run_and_estimate(run).value;
        });
        Complex mean(0, 0);
        for (const Complex& v : values) mean += v;
        mean /= static_cast<double>(reps);
        double var = 0.0;
        for (const Complex& v : values) var += std::norm(v - mean);
        var /= (reps - 1.0);
        const double se = std::sqrt(var / reps);
        const double sigmas = std::abs(mean - hm) / se;
        worst_sigmas = std::max(worst_sigmas, sigmas);
        if (sigmas > 5.0) ok = false;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "max |haar_mean - tr(PQ)| = %.2e (<=1e-9), worst MC deviation %.2f sigma (<=5)",
                  worst_oracle_gap, worst_sigmas);
    return {ok, buf};
}

std::pair<bool, std::string> criterion_variance_law() {
    const BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    double rmin = 1e300, rmax = 0.0;
    for (int d : {2, 4}) {
        auto [fa, fb] = fixtures::variance_shape_pair(d, 4242);
        BlockEncoding be_a = dilate(fa, 1.0), be_b = dilate(fb, 1.0);
        for (int mult : {1, 4, 16}) {
            for (int n : {25, 100}) {
                ProtocolConfig cfg;
                cfg.d = d;
                cfg.N = n;
                cfg.m = mult * d * d;
                cfg.seed = RngStream(777).child(d).child(mult).child(n).key();
                cfg.poly_f = ident;
                cfg.poly_g = ident;
                cfg.be_a = be_a;
                cfg.be_b = be_b;
                cfg.threads = 2;
                const double var = empirical_variance(cfg, 200);
                const double dd = d;
                const double shape =
                    1.0 + dd * dd / cfg.m + dd * dd * dd * dd / (double(cfg.m) * cfg.m);
                const double ratio = var * n / shape;
                rmin = std::min(rmin, ratio);
                rmax = std::max(rmax, ratio);
            }
        }
    }
    const double spread = rmax / rmin;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "Var(T)*N/shape in [%.3f, %.3f], spread %.2f (<=3)", rmin,
                  rmax, spread);
    return {spread <= 3.0, buf};
}

std::pair<bool, std::string> criterion_poly_certificates() {
    const double delta = 0.1, eps = 1e-3;
    bool ok = true;
    std::string detail;

    auto [pl, K] = log_poly(delta, eps);
    const double log_err =
        grid_sup_error(pl, [K](double x) { return std::log(1.0 / x) / K; }, delta, 1.0, 10000);
    auto [lmn, lmx] = grid_range(pl, -1.0, 1.0, 32 * (pl.degree() + 1));
    const double log_mag = std::max(std::abs(lmn), std::abs(lmx));
    ok = ok && log_err <= eps && log_mag <= 1.0;

    BoundedPoly pi = inverse_poly(delta, eps);
    const double inv_err = grid_sup_error(
        pi, [delta](double x) { return 0.75 * delta / x; }, delta, 1.0, 10000);
    const double inv_at_delta = std::abs(pi(delta) - 0.75);
    ok = ok && inv_err <= eps && inv_at_delta <= eps;

    BoundedPoly rect = rect_poly(0.5, delta, eps);
    auto [pmn, pmx] = grid_range(rect, -0.5 + delta, 0.5 - delta, 10000);
    auto [smn, smx] = grid_range(rect, 0.5 + delta, 1.0, 10000);
    const bool rect_ok = pmn >= 1.0 - eps && pmx <= 1.0 && smn >= 0.0 && smx <= eps;
    ok = ok && rect_ok;

    BoundedPoly pp = power_poly(0.5, Parity::Even, delta, eps, PowerSign::Positive);
    const double env_excess = grid_sup_violation(
        pp, [](double x) { return 0.5 * std::sqrt(std::abs(x)); }, -1.0, 1.0, 10000);
    ok = ok && env_excess <= eps;

    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "log err %.1e mag %.6f | inverse err %.1e at-delta %.1e | rect %s | power "
                  "envelope excess %.1e (eps 1e-3)",
                  log_err, log_mag, inv_err, inv_at_delta, rect_ok ? "ok" : "VIOLATED",
                  env_excess);
    return {ok, buf};
}

std::pair<bool, std::string> criterion_relative_entropy() {
    const double eps = 0.1, delta = 0.1;
    int successes = 0;
    const int runs = 10;
    for (int r = 0; r < runs; ++r) {
        Matrix rho, sigma;
        if (r == 0) {
            std::tie(rho, sigma) = fixtures::diag_entropy_pair_d4();
        } else {
            std::tie(rho, sigma) = fixtures::random_density_pair(4, 0.1, 3100 + r);
        }
        const double exact = fixtures::exact_relative_entropy(rho, sigma);
        RelativeEntropyOptions opts;
        opts.seed = 5200 + static_cast<std::uint64_t>(r);
        opts.threads = 2;
        const DivergenceResult res = relative_entropy(rho, sigma, eps, delta, opts);
        if (std::abs(res.value - exact) <= eps) ++successes;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d/%d runs within 0.1 of exact (need >=7), incl. 0.5 ln 3 fixture",
                  successes, runs);
    return {successes >= 7, buf};
}

std::pair<bool, std::string> criterion_renyi() {
    const double eps = 0.1;
    int s2 = 0, sh = 0;
    const int runs = 10;
    for (int r = 0; r < runs; ++r) {
        // commuting fixtures: diagonal density pairs with spectral floor 0.25
        RngStream s(6100 + r);
        const double p = 0.25 + 0.5 * s.uniform();
        const double q = 0.25 + 0.5 * s.uniform();
        Matrix rho = Matrix::Zero(2, 2), sigma = Matrix::Zero(2, 2);
        rho(0, 0) = p;
        rho(1, 1) = 1.0 - p;
        sigma(0, 0) = q;
        sigma(1, 1) = 1.0 - q;

        RenyiOptions opts;
        opts.seed = 6300 + static_cast<std::uint64_t>(r);
        opts.threads = 2;

        const double exact2 = fixtures::exact_renyi_entropy(rho, sigma, 2.0);
        const DivergenceResult r2 = renyi_entropy(rho, sigma, 2.0, eps, 0.25, 0, opts);
        if (std::abs(r2.value - exact2) <= eps) ++s2;

        const double exact_h = fixtures::exact_renyi_entropy(rho, sigma, 0.5);
        const DivergenceResult rh = renyi_entropy(rho, sigma, 0.5, eps, 0.0, 2, opts);
        if (std::abs(rh.value - exact_h) <= eps) ++sh;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "alpha=2: %d/%d, alpha=1/2: %d/%d within 0.1 (need >=7 each)",
                  s2, runs, sh, runs);
    return {s2 >= 7 && sh >= 7, buf};
}

std::pair<bool, std::string> criterion_linear_solver() {
    const double eps = 0.1, delta = 0.25;
    int successes = 0;
    const int runs = 10;
    double worst = 0.0;
    for (int r = 0; r < runs; ++r) {
        auto [a, b] = fixtures::random_linear_system(4, 0.25, 7100 + r);
        LinearSolveOptions opts;
        opts.seed = 7300 + static_cast<std::uint64_t>(r);
        opts.threads = 2;
        const SolveResult res = linear_solve(a, b, eps, delta, opts);
        const Vector exact = a.fullPivLu().solve(b);
        const double err = (res.x_tilde - exact).norm();
        worst = std::max(worst, err);
        if (err <= eps) ++successes;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d/%d systems with ||x - A^-1 b|| <= 0.1 (worst %.3f)",
                  successes, runs, worst);
    return {successes >= 7, buf};
}

std::pair<bool, std::string> criterion_hamiltonian() {
    const double eps = 0.05;
    HamiltonianOptions opts;
    opts.threads = 2;

    auto cf = fixtures::commuting_hamiltonians(4, 8100);
    opts.seed = 8200;
    const SimResult commuting =
        hamiltonian_expectation(cf.h1, cf.h2, cf.observable, cf.rho, 0.25, eps, opts);
    const bool commuting_ok =
        commuting.commutator <= 1e-12 && std::abs(commuting.estimate - commuting.exact) <= eps;

    int violations = 0;
    double worst_slack = 1e300;
    for (int r = 0; r < 100; ++r) {
        auto f = fixtures::random_hamiltonians(2, 8300 + r);
        opts.seed = 8500 + static_cast<std::uint64_t>(r);
        const double t = 0.5 / std::sqrt(2.0);
        const SimResult res =
            hamiltonian_expectation(f.h1, f.h2, f.observable, f.rho, t, eps, opts);
        const double bound = res.commutator + eps;
        const double err = std::abs(res.estimate - res.exact);
        worst_slack = std::min(worst_slack, bound - err);
        if (err > bound) ++violations;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "commuting |S-exact| %s eps; 100 random fixtures: %d bound violations "
                  "(min slack %.3f)",
                  commuting_ok ? "<=" : ">", violations, worst_slack);
    return {commuting_ok && violations == 0, buf};
}

std::pair<bool, std::string> criterion_locc_determinism() {
    const BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    RngStream s(9100);
    RngStream sa = s.child("a"), sb = s.child("b");
    ProtocolConfig cfg;
    cfg.d = 4;
    cfg.N = 40;
    cfg.m = 16;
    cfg.seed = 9200;
    cfg.poly_f = ident;
    cfg.poly_g = ident;
    cfg.be_a = dilate(random_contraction_banded(4, 0.3, 0.9, sa), 1.0);
    cfg.be_b = dilate(random_contraction_banded(4, 0.3, 0.9, sb), 1.0);

    bool transcript_ok = true;
    ShotTable reference = run_shots(cfg);
    for (const TranscriptEntry& e : reference.transcript)
        transcript_ok = transcript_ok && e.payload_bits == 4 * cfg.m && e.round >= 0 &&
                        e.round < cfg.N;
    transcript_ok = transcript_ok &&
                    reference.transcript.size() == static_cast<size_t>(2 * cfg.N);

    bool identical = true;
    const Complex t_ref = estimate_trace(reference, cfg).value;
    for (int threads : {2, 8}) {
        ProtocolConfig run = cfg;
        run.threads = threads;
        ShotTable table = run_shots(run);
        identical = identical && (table.raw_bits() == reference.raw_bits());
        identical = identical && (estimate_trace(table, run).value == t_ref);
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "transcript classical-only: %s; bits and T identical over 1/2/8 threads: %s",
                  transcript_ok ? "yes" : "NO", identical ? "yes" : "NO");
    return {transcript_ok && identical, buf};
}

std::pair<bool, std::string> criterion_block_encoding() {
    bool ok = true;
    double worst_residual = 0.0;
    RngStream s(9900);
    for (int r = 0; r < 50; ++r) {
        RngStream sub = s.child(r);
        const int d = (r % 2 == 0) ? 2 : 4;
        Matrix a = random_contraction(d, 0.98, sub);
        BlockEncoding be = dilate(a, 1.0);
        auto [verified, residual] = verify(be, a);
        worst_residual = std::max(worst_residual, residual);
        ok = ok && verified && residual <= 1e-10 && unitarity_residual(be.unitary) <= 1e-10;
    }

    // purification reproduces the partial-trace oracle
    bool purify_ok = true;
    for (int r = 0; r < 10; ++r) {
        RngStream sub = s.child("purify").child(r);
        Vector psi = random_state(8, sub);
        auto [rho, be] = from_purification(psi, 1);
        Matrix oracle = Matrix::Zero(2, 2);
        for (int alpha = 0; alpha < 4; ++alpha)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    oracle(i, j) += psi(alpha * 2 + i) * std::conj(psi(alpha * 2 + j));
        purify_ok = purify_ok && (rho - oracle).norm() <= 1e-15;
        auto [verified, residual] = verify(be, oracle);
        purify_ok = purify_ok && verified;
    }

    // Lipschitz-mode degradation bound
    bool lipschitz_ok = true;
    const double eps = 0.05;
    int idx = 0;
    for (double inj : {0.01, 0.02, 0.04}) {
        RngStream sub = s.child("lip").child(idx++);
        RngStream su = sub.child("a"), sv = sub.child("b");
        Matrix a = random_contraction_banded(4, 0.5, 0.9, su);
        Matrix b = random_contraction_banded(4, 0.5, 0.9, sv);
        TraceFgOptions opts;
        opts.mode = TraceMode::LipschitzApprox;
        opts.encoding_eps_a = inj;
        opts.seed = 9950 + static_cast<std::uint64_t>(idx);
        opts.threads = 2;
        const TraceFgResult res =
            estimate_trace_fg(a, b, "identity", "identity", eps, 0.3, opts);
        const Complex exact = (a * b).trace();
        const double bound = 2.0 * 4.0 * res.encoding_eta_a + eps; // (L+1) d eta + eps
        lipschitz_ok = lipschitz_ok && std::abs(res.value - exact) <= bound;
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "50 dilations residual <= %.1e (<=1e-10); purification oracle %s; "
                  "Lipschitz degradation bound %s",
                  worst_residual, purify_ok ? "exact" : "MISMATCH",
                  lipschitz_ok ? "held" : "VIOLATED");
    return {ok && purify_ok && lipschitz_ok, buf};
}

} // namespace

int main() {
    std::printf("verification suite (fixed seeds; tolerances stated inline)\n");
    criterion(1, "estimator unbiasedness", criterion_unbiasedness);
    criterion(2, "variance law", criterion_variance_law);
    criterion(3, "polynomial certificates", criterion_poly_certificates);
    criterion(4, "relative entropy", criterion_relative_entropy);
    criterion(5, "Renyi relative entropy", criterion_renyi);
    criterion(6, "linear solver", criterion_linear_solver);
    criterion(7, "Hamiltonian simulation", criterion_hamiltonian);
    criterion(8, "LOCC structure and determinism", criterion_locc_determinism);
    criterion(9, "block-encoding contracts", criterion_block_encoding);
    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures;
}
