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
 * The two-party sampling protocol for estimating tr(P(A~) Q(B~)) from
 * Hadamard-test bits, and its classical estimator.
 *
 * Sampling stage: per iteration i a shared unitary U_i (common substream)
 * plus party-local unitaries V_i (Alice) and W_i (Bob) are drawn
 * Haar-randomly; each party collects m single-qubit measurement bits per
 * (unitary role, ancilla phase) combination from its own transformed
 * encoding. Alice samples roles {U, V}, Bob {U, W}; only those enter the
 * estimator. Parties exchange classical bits only; the transcript records
 * one message per party per iteration with its payload size.
 *
 * Estimation stage, per iteration i with parts p, q in {Re, Im}:
 *
 *   X_i^p = (2d/m)   sum_j 1[A_j^p(V_i) = 0] - d
 *   Y_i^p = (2d/m)   sum_j 1[B_j^p(W_i) = 0] - d
 *   Z_i^pq = (2d(d+1)/m^2) sum_{j,j'} 1[A_j^p(U_i) = B_j'^q(U_i)] - d(d+1)
 *
 *   T = (1/N) sum_i (Z_i^ReRe - i Z_i^ReIm - i Z_i^ImRe - Z_i^ImIm)
 *     - (1/N^2) sum_{k,l} (X_k^Re Y_l^Re - i X_k^Re Y_l^Im
 *                          - i X_k^Im Y_l^Re - X_k^Im Y_l^Im)
 *
 * The Z scale d(d+1) against the X/Y scale d is forced by the second versus
 * first Haar moments; both are needed for E[T] = tr(P(A~) Q(B~)).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "locctrace/block_encoding.hpp"
#include "locctrace/chebyshev.hpp"
#include "locctrace/errors.hpp"
#include "locctrace/matrix.hpp"
#include "locctrace/parallel.hpp"
#include "locctrace/random.hpp"
#include "locctrace/rng.hpp"
#include "locctrace/svt.hpp"

namespace locctrace {

enum class Party { Alice, Bob };
enum class OperatorSide { A, B };
enum class UnitaryRole { Shared, AliceLocal, BobLocal }; // U, V, W
enum class MeasPart { Re, Im };

struct ProtocolConfig {
    int d = 2;
    int N = 1;
    int m = 1;
    std::uint64_t seed = 42;
    BoundedPoly poly_f;
    BoundedPoly poly_g;
    BlockEncoding be_a;
    BlockEncoding be_b;
    int threads = 1;

    void validate() const {
        if (N < 1 || m < 1) throw InvalidParameterError("ProtocolConfig: need N >= 1 and m >= 1");
        if (!is_power_of_two(d)) throw InvalidInputError("ProtocolConfig: d must be a power of two");
        be_a.validate();
        be_b.validate();
        if (be_a.system_dim() != d || be_b.system_dim() != d)
            throw InvalidInputError("ProtocolConfig: encodings do not match dimension d");
        if (poly_f.parity() == Parity::None || poly_g.parity() == Parity::None)
            throw ContractViolationError("ProtocolConfig: polynomials must have definite parity");
    }
};

struct TranscriptEntry {
    Party party;
    int round = 0;
    int payload_bits = 0; ///< classical payload only; nothing else ever crosses
};

/// Measurement record of one protocol run. Bits exist exactly for the
/// (operator, role) pairs the estimator consumes: A x {U, V}, B x {U, W},
/// both ancilla phases.
class ShotTable {
  public:
    ShotTable() = default;
    ShotTable(int iterations, int shots)
        : iterations_(iterations), shots_(shots),
          bits_(static_cast<size_t>(iterations) * kPairs * 2 * shots, 0) {}

    int iterations() const { return iterations_; }
    int shots() const { return shots_; }

    static int pair_index(OperatorSide op, UnitaryRole role) {
        if (op == OperatorSide::A && role == UnitaryRole::Shared) return 0;
        if (op == OperatorSide::A && role == UnitaryRole::AliceLocal) return 1;
        if (op == OperatorSide::B && role == UnitaryRole::Shared) return 2;
        if (op == OperatorSide::B && role == UnitaryRole::BobLocal) return 3;
        throw InvalidInputError("ShotTable: no bits collected for this operator/role pair");
    }

    std::uint8_t bit(int i, int j, OperatorSide op, UnitaryRole role, MeasPart part) const {
        if (i < 0 || i >= iterations_ || j < 0 || j >= shots_)
            throw InvalidInputError("ShotTable: index out of range");
        return bits_[offset(i, pair_index(op, role), part) + static_cast<size_t>(j)];
    }

    /// Number of 0-outcomes among the m shots of one (i, op, role, part) cell.
    int zero_count(int i, OperatorSide op, UnitaryRole role, MeasPart part) const {
        const size_t base = offset(i, pair_index(op, role), part);
        int n0 = 0;
        for (int j = 0; j < shots_; ++j) n0 += (bits_[base + static_cast<size_t>(j)] == 0);
        return n0;
    }

    std::uint8_t* cell(int i, int pair, MeasPart part) { return bits_.data() + offset(i, pair, part); }
    const std::vector<std::uint8_t>& raw_bits() const { return bits_; }

    std::vector<TranscriptEntry> transcript;

  private:
    static constexpr int kPairs = 4;
    size_t offset(int i, int pair, MeasPart part) const {
        return ((static_cast<size_t>(i) * kPairs + static_cast<size_t>(pair)) * 2 +
                static_cast<size_t>(part)) *
               static_cast<size_t>(shots_);
    }

    int iterations_ = 0;
    int shots_ = 0;
    std::vector<std::uint8_t> bits_;
};

namespace protocol_detail {

/// One party's sampling work for one iteration. Receives only that party's
/// transformed block; the other party's data never enters.
inline void sample_party_bits(const TransformedBlock& own, const Matrix& shared_u,
                              const Matrix& local_u, RngStream bits_stream, int m,
                              int shared_pair, int local_pair, ShotTable& table, int i) {
    const Matrix* unitaries[2] = {&shared_u, &local_u};
    const int pairs[2] = {shared_pair, local_pair};
    for (int r = 0; r < 2; ++r) {
        for (int part = 0; part < 2; ++part) {
            const double p0 = hadamard_outcome_probs(own, *unitaries[r], part).first;
            RngStream cell = bits_stream.child(static_cast<std::uint64_t>(pairs[r]))
                                 .child(static_cast<std::uint64_t>(part));
            std::uint8_t* out = table.cell(i, pairs[r], static_cast<MeasPart>(part));
            for (int j = 0; j < m; ++j) out[j] = cell.bernoulli(p0) ? 0 : 1;
        }
    }
}

} // namespace protocol_detail

/// Runs the sampling stage. Deterministic for a fixed seed regardless of
/// cfg.threads: every iteration derives its own substreams.
inline ShotTable run_shots(const ProtocolConfig& cfg) {
    cfg.validate();
    const TransformedBlock ta = apply_poly_sv(top_left_block(cfg.be_a), cfg.poly_f);
    const TransformedBlock tb = apply_poly_sv(top_left_block(cfg.be_b), cfg.poly_g);

    ShotTable table(cfg.N, cfg.m);
    RngStream iters = RngStream(cfg.seed).child("iter");
    parallel_for(cfg.N, cfg.threads, [&](int i) {
        RngStream it = iters.child(static_cast<std::uint64_t>(i));
        RngStream su = it.child("shared");
        RngStream sa = it.child("alice");
        RngStream sb = it.child("bob");
        const Matrix u = haar_unitary(cfg.d, su);
        const Matrix v = haar_unitary(cfg.d, sa);
        const Matrix w = haar_unitary(cfg.d, sb);
        RngStream bits = it.child("bits");
        protocol_detail::sample_party_bits(ta, u, v, bits.child("alice"), cfg.m,
                                           ShotTable::pair_index(OperatorSide::A, UnitaryRole::Shared),
                                           ShotTable::pair_index(OperatorSide::A, UnitaryRole::AliceLocal),
                                           table, i);
        protocol_detail::sample_party_bits(tb, u, w, bits.child("bob"), cfg.m,
                                           ShotTable::pair_index(OperatorSide::B, UnitaryRole::Shared),
                                           ShotTable::pair_index(OperatorSide::B, UnitaryRole::BobLocal),
                                           table, i);
    });
    table.transcript.reserve(static_cast<size_t>(cfg.N) * 2);
    for (int i = 0; i < cfg.N; ++i) {
        table.transcript.push_back(TranscriptEntry{Party::Alice, i, 4 * cfg.m});
        table.transcript.push_back(TranscriptEntry{Party::Bob, i, 4 * cfg.m});
    }
    return table;
}

/// Per-iteration estimator components.
struct IterationComponents {
    double x[2] = {0, 0};      ///< X_i^Re, X_i^Im
    double y[2] = {0, 0};      ///< Y_i^Re, Y_i^Im
    double z[2][2] = {{0, 0}, {0, 0}}; ///< Z_i^pq
};

struct TraceEstimate {
    Complex value{0.0, 0.0};
    std::vector<IterationComponents> components;
    double empirical_variance = 0.0;
    long long n_queries_simulated = 0;
};

namespace protocol_detail {

/// The four-term bilinear combination used in both halves of the estimator.
inline Complex combine(double re_re, double re_im, double im_re, double im_im) {
    return Complex(re_re - im_im, -(re_im + im_re));
}

inline Complex z_combo(const IterationComponents& c) {
    return combine(c.z[0][0], c.z[0][1], c.z[1][0], c.z[1][1]);
}

inline Complex xy_combo(const double x[2], const double y[2]) {
    return combine(x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]);
}

} // namespace protocol_detail

/// Classical post-processing: computes the estimator T (and its per-iteration
/// components) from the measurement record. `empirical_variance` is a
/// first-order (influence-function) single-run estimate of Var(T).
inline TraceEstimate estimate_trace(const ShotTable& table, const ProtocolConfig& cfg) {
    if (table.iterations() != cfg.N || table.shots() != cfg.m)
        throw InvalidInputError("estimate_trace: table does not match the configuration");
    const double d = static_cast<double>(cfg.d);
    const double m = static_cast<double>(cfg.m);
    const int N = cfg.N;

    TraceEstimate est;
    est.components.resize(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) {
        IterationComponents& c = est.components[static_cast<size_t>(i)];
        for (int p = 0; p < 2; ++p) {
            const int n0a = table.zero_count(i, OperatorSide::A, UnitaryRole::AliceLocal,
                                             static_cast<MeasPart>(p));
            const int n0b = table.zero_count(i, OperatorSide::B, UnitaryRole::BobLocal,
                                             static_cast<MeasPart>(p));
            c.x[p] = (2.0 * d / m) * n0a - d;
            c.y[p] = (2.0 * d / m) * n0b - d;
        }
        int n0_shared_a[2], n0_shared_b[2];
        for (int p = 0; p < 2; ++p) {
            n0_shared_a[p] = table.zero_count(i, OperatorSide::A, UnitaryRole::Shared,
                                              static_cast<MeasPart>(p));
            n0_shared_b[p] = table.zero_count(i, OperatorSide::B, UnitaryRole::Shared,
                                              static_cast<MeasPart>(p));
        }
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
                // sum_{j,j'} 1[A_j = B_j'] depends only on the zero counts.
                const double agree =
                    static_cast<double>(n0_shared_a[p]) * n0_shared_b[q] +
                    (m - n0_shared_a[p]) * (m - n0_shared_b[q]);
                c.z[p][q] = (2.0 * d * (d + 1.0) / (m * m)) * agree - d * (d + 1.0);
            }
    }

    Complex z_mean(0, 0);
    double xbar[2] = {0, 0}, ybar[2] = {0, 0};
    for (const auto& c : est.components) {
        z_mean += protocol_detail::z_combo(c);
        for (int p = 0; p < 2; ++p) {
            xbar[p] += c.x[p];
            ybar[p] += c.y[p];
        }
    }
    z_mean /= static_cast<double>(N);
    for (int p = 0; p < 2; ++p) {
        xbar[p] /= static_cast<double>(N);
        ybar[p] /= static_cast<double>(N);
    }
    est.value = z_mean - protocol_detail::xy_combo(xbar, ybar);

    if (N >= 2) {
        // psi_i = zc_i - h(x_i, ybar) - h(xbar, y_i) + h(xbar, ybar) has mean
        // exactly T; its spread estimates Var(T) to first order.
        const Complex hbb = protocol_detail::xy_combo(xbar, ybar);
        double acc = 0.0;
        for (const auto& c : est.components) {
            const Complex psi = protocol_detail::z_combo(c) -
                                protocol_detail::xy_combo(c.x, ybar) -
                                protocol_detail::xy_combo(xbar, c.y) + hbb;
            acc += std::norm(psi - est.value);
        }
        est.empirical_variance = acc / (static_cast<double>(N) * (N - 1.0));
    }

    const long long per_side = static_cast<long long>(N) * cfg.m * 2 /*roles*/ * 2 /*parts*/;
    est.n_queries_simulated = per_side * cfg.poly_f.degree() + per_side * cfg.poly_g.degree();
    return est;
}

inline TraceEstimate run_and_estimate(const ProtocolConfig& cfg) {
    return estimate_trace(run_shots(cfg), cfg);
}

/// The unitaries of one iteration, for conditional-expectation oracles.
struct IterationUnitaries {
    Matrix shared;      // U_i
    Matrix alice_local; // V_i
    Matrix bob_local;   // W_i
};

/// E[T | unitaries]: shot randomness integrated out analytically. Bits are
/// independent Bernoullis given the unitaries, so each Z expectation reduces
/// to the per-shot agreement probability and each X/Y to its success
/// probability; the m and m^2 shot combinatorics cancel in the mean.
inline Complex conditional_mean(const std::vector<IterationUnitaries>& unitaries,
                                const ProtocolConfig& cfg) {
    cfg.validate();
    if (unitaries.size() != static_cast<size_t>(cfg.N))
        throw InvalidInputError("conditional_mean: unitary list length must equal cfg.N");
    const TransformedBlock ta = apply_poly_sv(top_left_block(cfg.be_a), cfg.poly_f);
    const TransformedBlock tb = apply_poly_sv(top_left_block(cfg.be_b), cfg.poly_g);
    const double d = static_cast<double>(cfg.d);
    const size_t N = unitaries.size();

    Complex z_mean(0, 0);
    double ex_bar[2] = {0, 0}, ey_bar[2] = {0, 0};
    for (const auto& iu : unitaries) {
        double pa_shared[2], pb_shared[2], ex[2], ey[2];
        for (int p = 0; p < 2; ++p) {
            pa_shared[p] = hadamard_outcome_probs(ta, iu.shared, p).first;
            pb_shared[p] = hadamard_outcome_probs(tb, iu.shared, p).first;
            ex[p] = d * (2.0 * hadamard_outcome_probs(ta, iu.alice_local, p).first - 1.0);
            ey[p] = d * (2.0 * hadamard_outcome_probs(tb, iu.bob_local, p).first - 1.0);
            ex_bar[p] += ex[p];
            ey_bar[p] += ey[p];
        }
        double ez[2][2];
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
                const double agree =
                    pa_shared[p] * pb_shared[q] + (1.0 - pa_shared[p]) * (1.0 - pb_shared[q]);
                ez[p][q] = d * (d + 1.0) * (2.0 * agree - 1.0);
            }
        z_mean += protocol_detail::combine(ez[0][0], ez[0][1], ez[1][0], ez[1][1]);
    }
    z_mean /= static_cast<double>(N);
    for (int p = 0; p < 2; ++p) {
        ex_bar[p] /= static_cast<double>(N);
        ey_bar[p] /= static_cast<double>(N);
    }
    return z_mean - protocol_detail::xy_combo(ex_bar, ey_bar);
}

/// Fully Haar-averaged E[T], assembled from the first and second moment
/// identities E<psi|M|psi> = tr M / d and
/// E<psi|M|psi><psi|N|psi> = (tr M tr N + tr(MN)) / (d(d+1)). Serves as the
/// independent unbiasedness oracle; numerically it equals tr(P Q).
inline Complex haar_mean(const Matrix& p_block, const Matrix& q_block, int d) {
    if (p_block.rows() != d || p_block.cols() != d || q_block.rows() != d || q_block.cols() != d)
        throw InvalidInputError("haar_mean: dimension mismatch");
    const Matrix mh[2] = {(p_block + p_block.adjoint()) / 2.0,
                          (p_block - p_block.adjoint()) / Complex(0, 2)};
    const Matrix nh[2] = {(q_block + q_block.adjoint()) / 2.0,
                          (q_block - q_block.adjoint()) / Complex(0, 2)};
    const double sgn[2] = {1.0, -1.0}; // outcome-0 bias sign for Re/Im parts
    double ez[2][2], ex[2], ey[2];
    for (int p = 0; p < 2; ++p) {
        ex[p] = sgn[p] * mh[p].trace().real();
        ey[p] = sgn[p] * nh[p].trace().real();
        for (int q = 0; q < 2; ++q)
            ez[p][q] = sgn[p] * sgn[q] *
                       (mh[p].trace().real() * nh[q].trace().real() +
                        (mh[p] * nh[q]).trace().real());
    }
    return protocol_detail::combine(ez[0][0], ez[0][1], ez[1][0], ez[1][1]) -
           protocol_detail::combine(ex[0] * ey[0], ex[0] * ey[1], ex[1] * ey[0], ex[1] * ey[1]);
}

/// Iteration and shot counts meeting the variance budget: N = ceil(c_N /
/// eps^2), m = ceil(c_m * d^2).
inline std::pair<int, int> plan_samples(int d, double eps, double c_n = 1.0, double c_m = 1.0) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw InvalidParameterError("plan_samples: eps must be in (0, 1]");
    if (d < 1) throw InvalidParameterError("plan_samples: d must be >= 1");
    const int N = static_cast<int>(std::ceil(c_n / (eps * eps)));
    const int m = static_cast<int>(std::ceil(c_m * static_cast<double>(d) * d));
    return {std::max(N, 1), std::max(m, 1)};
}

/// Iterations needed for a target standard deviation of T, using the
/// variance shape (1 + d^2/m + d^4/m^2)/N with a safety factor.
inline int iterations_for(int d, int m, double std_target, double safety = 2.0) {
    const double dd = static_cast<double>(d);
    const double shape = 1.0 + dd * dd / m + dd * dd * dd * dd / (static_cast<double>(m) * m);
    return std::max(1, static_cast<int>(std::ceil(safety * shape / (std_target * std_target))));
}

/// Sample variance of T over independent replays (fresh unitaries and shots
/// per replay, derived substreams).
inline double empirical_variance(const ProtocolConfig& cfg, int replications) {
    if (replications < 2)
        throw InvalidParameterError("empirical_variance: need at least 2 replications");
    RngStream root = RngStream(cfg.seed).child("replay");
    std::vector<Complex> values(static_cast<size_t>(replications));
    parallel_for(replications, cfg.threads, [&](int r) {
        ProtocolConfig run = cfg;
        run.threads = 1;
        run.seed = root.child(static_cast<std::uint64_t>(r)).key();
        values[static_cast<size_t>(r)] = run_and_estimate(run).value;
    });
    Complex mean(0, 0);
    for (const Complex& v : values) mean += v;
    mean /= static_cast<double>(replications);
    double acc = 0.0;
    for (const Complex& v : values) acc += std::norm(v - mean);
    return acc / (replications - 1.0);
}

/// Median-of-means amplification: component-wise median of `batches`
/// independent estimates, each from a derived seed.
inline Complex median_of_means(const ProtocolConfig& cfg, int batches = 9) {
    if (batches < 1) throw InvalidParameterError("median_of_means: need at least one batch");
    RngStream root = RngStream(cfg.seed).child("batch");
    std::vector<Complex> values(static_cast<size_t>(batches));
    parallel_for(batches, cfg.threads, [&](int b) {
        ProtocolConfig run = cfg;
        run.threads = 1;
        run.seed = root.child(static_cast<std::uint64_t>(b)).key();
        values[static_cast<size_t>(b)] = run_and_estimate(run).value;
    });
    std::vector<double> re(values.size()), im(values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        re[i] = values[i].real();
        im[i] = values[i].imag();
    }
    auto median = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        const size_t n = v.size();
        return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    return Complex(median(re), median(im));
}

} // namespace locctrace
