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

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "locctrace/protocol.hpp"

using namespace locctrace;

namespace {

ProtocolConfig basic_config(int d, int N, int m, std::uint64_t seed, const BoundedPoly& pf,
                            const BoundedPoly& pg, const Matrix& a, const Matrix& b) {
    ProtocolConfig cfg;
    cfg.d = d;
    cfg.N = N;
    cfg.m = m;
    cfg.seed = seed;
    cfg.poly_f = pf;
    cfg.poly_g = pg;
    cfg.be_a = dilate(a, 1.0);
    cfg.be_b = dilate(b, 1.0);
    return cfg;
}

// Independent outcome-0 probabilities for the two ancilla phases.
double prob0(const Matrix& block, const Matrix& u, int part) {
    const Vector v = u.col(0);
    const Complex q = (v.adjoint() * block * v)(0, 0);
    return (part == 0) ? 0.5 * (1.0 + q.real()) : 0.5 * (1.0 - q.imag());
}

} // namespace

TEST_CASE("all-zero bits reproduce the combination formula exactly", "[protocol]") {
    const int d = 2, N = 1, m = 5;
    BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    ProtocolConfig cfg = basic_config(d, N, m, 1, ident, ident, 0.5 * Matrix::Identity(2, 2),
                                      0.5 * Matrix::Identity(2, 2));
    ShotTable table(N, m); // all bits zero-initialized
    TraceEstimate est = estimate_trace(table, cfg);

    // Reference evaluation of the combination formula with every count full:
    // X = Y = d, Z = d(d+1) for all parts.
    for (int p = 0; p < 2; ++p) {
        REQUIRE(est.components[0].x[p] == 2.0);
        REQUIRE(est.components[0].y[p] == 2.0);
        for (int q = 0; q < 2; ++q) REQUIRE(est.components[0].z[p][q] == 6.0);
    }
    const Complex zc = Complex(6.0 - 6.0, -(6.0 + 6.0));
    const Complex xy = Complex(4.0 - 4.0, -(4.0 + 4.0));
    REQUIRE(est.value == zc - xy); // = -4i
    REQUIRE(est.value == Complex(0.0, -4.0));
}

TEST_CASE("estimate recomputes bit-exactly from its stored components", "[protocol]") {
    BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    RngStream s(17);
    Matrix a = random_contraction(2, 0.8, s);
    RngStream s2 = s.child(2);
    Matrix b = random_contraction(2, 0.8, s2);
    ProtocolConfig cfg = basic_config(2, 7, 3, 99, ident, ident, a, b);
    ShotTable table = run_shots(cfg);
    TraceEstimate est = estimate_trace(table, cfg);

    Complex z_mean(0, 0);
    double xbar[2] = {0, 0}, ybar[2] = {0, 0};
    for (const auto& c : est.components) {
        z_mean += Complex(c.z[0][0] - c.z[1][1], -(c.z[0][1] + c.z[1][0]));
        for (int p = 0; p < 2; ++p) {
            xbar[p] += c.x[p];
            ybar[p] += c.y[p];
        }
    }
    z_mean /= 7.0;
    for (int p = 0; p < 2; ++p) {
        xbar[p] /= 7.0;
        ybar[p] /= 7.0;
    }
    const Complex xy(xbar[0] * ybar[0] - xbar[1] * ybar[1],
                     -(xbar[0] * ybar[1] + xbar[1] * ybar[0]));
    REQUIRE(est.value == z_mean - xy);
}

TEST_CASE("deterministic outcomes for the identity block", "[protocol]") {
    // P(A~) = I via p(x) = x on A = I: the plain-phase ancilla always reads 0.
    BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    ProtocolConfig cfg = basic_config(2, 3, 4, 5, ident, ident, Matrix::Identity(2, 2),
                                      Matrix::Identity(2, 2));
    ShotTable table = run_shots(cfg);
    for (int i = 0; i < cfg.N; ++i)
        for (int j = 0; j < cfg.m; ++j) {
            REQUIRE(table.bit(i, j, OperatorSide::A, UnitaryRole::Shared, MeasPart::Re) == 0);
            REQUIRE(table.bit(i, j, OperatorSide::A, UnitaryRole::AliceLocal, MeasPart::Re) == 0);
        }
}

TEST_CASE("zero polynomials give unbiased coins", "[protocol][statistical]") {
    ProtocolConfig cfg = basic_config(2, 400, 8, 7, BoundedPoly::zero(), BoundedPoly::zero(),
                                      0.3 * Matrix::Identity(2, 2), 0.3 * Matrix::Identity(2, 2));
    ShotTable table = run_shots(cfg);
    long long zeros = 0, total = 0;
    for (int i = 0; i < cfg.N; ++i)
        for (int j = 0; j < cfg.m; ++j)
            for (int part = 0; part < 2; ++part) {
                zeros +=
                    (table.bit(i, j, OperatorSide::A, UnitaryRole::Shared, MeasPart(part)) == 0);
                zeros += (table.bit(i, j, OperatorSide::B, UnitaryRole::BobLocal,
                                    MeasPart(part)) == 0);
                total += 2;
            }
    const double mean = static_cast<double>(zeros) / total;
    REQUIRE(std::abs(mean - 0.5) <= 5.0 * 0.5 / std::sqrt(static_cast<double>(total)));

    TraceEstimate est = estimate_trace(table, cfg);
    REQUIRE(std::abs(est.value) <= 5.0 * std::sqrt(est.empirical_variance) + 1e-9);
}

TEST_CASE("fixed seeds replay bit-identically across thread counts", "[protocol]") {
    BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    RngStream s(23);
    Matrix a = random_contraction(2, 0.9, s);
    RngStream s2 = s.child("b");
    Matrix b = random_contraction(2, 0.9, s2);
    ProtocolConfig cfg = basic_config(2, 2, 3, 12345, ident, ident, a, b);

    ShotTable t1 = run_shots(cfg);
    ShotTable t1_again = run_shots(cfg);
    REQUIRE(t1.raw_bits() == t1_again.raw_bits());

    ProtocolConfig cfg2 = cfg;
    cfg2.threads = 2;
    ShotTable t2 = run_shots(cfg2);
    REQUIRE(t1.raw_bits() == t2.raw_bits());
    REQUIRE(estimate_trace(t1, cfg).value == estimate_trace(t2, cfg2).value);
}

TEST_CASE("transcript carries classical payload counts only", "[protocol]") {
    BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    ProtocolConfig cfg = basic_config(2, 3, 4, 5, ident, ident, Matrix::Identity(2, 2),
                                      Matrix::Identity(2, 2));
    ShotTable table = run_shots(cfg);
    REQUIRE(table.transcript.size() == 6); // one message per party per iteration
    for (size_t k = 0; k < table.transcript.size(); ++k) {
        const TranscriptEntry& e = table.transcript[k];
        REQUIRE(e.payload_bits == 4 * cfg.m);
        REQUIRE(e.round == static_cast<int>(k / 2));
        REQUIRE(e.party == (k % 2 == 0 ? Party::Alice : Party::Bob));
    }
    // No bits exist for role pairings the estimator never consumes.
    REQUIRE_THROWS_AS(table.bit(0, 0, OperatorSide::A, UnitaryRole::BobLocal, MeasPart::Re),
                      InvalidInputError);
    REQUIRE_THROWS_AS(table.bit(0, 0, OperatorSide::B, UnitaryRole::AliceLocal, MeasPart::Re),
                      InvalidInputError);
}

TEST_CASE("conditional mean matches exhaustive outcome enumeration", "[protocol][oracle]") {
    // N = 1, m = 1, d = 2, hand-picked unitaries: sum over all 2^8 outcomes
    // weighted by their Bernoulli probabilities.
    const int d = 2;
    BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    RngStream s(31);
    Matrix a = random_contraction(d, 0.9, s);
    RngStream s2 = s.child("b");
    Matrix b = random_contraction(d, 0.9, s2);
    ProtocolConfig cfg = basic_config(d, 1, 1, 0, ident, ident, a, b);

    Matrix had(2, 2);
    had << 1, 1, 1, -1;
    had /= std::sqrt(2.0);
    Matrix phase = Matrix::Identity(2, 2);
    phase(1, 1) = Complex(0.0, 1.0);
    IterationUnitaries iu{had, phase * had, had * phase};

    // Bit order: (A,U,Re)(A,U,Im)(A,V,Re)(A,V,Im)(B,U,Re)(B,U,Im)(B,W,Re)(B,W,Im)
    std::array<double, 8> p0{};
    p0[0] = prob0(a, iu.shared, 0);
    p0[1] = prob0(a, iu.shared, 1);
    p0[2] = prob0(a, iu.alice_local, 0);
    p0[3] = prob0(a, iu.alice_local, 1);
    p0[4] = prob0(b, iu.shared, 0);
    p0[5] = prob0(b, iu.shared, 1);
    p0[6] = prob0(b, iu.bob_local, 0);
    p0[7] = prob0(b, iu.bob_local, 1);

    Complex expect(0, 0);
    for (int o = 0; o < 256; ++o) {
        double prob = 1.0;
        std::array<int, 8> bit{};
        for (int k = 0; k < 8; ++k) {
            bit[k] = (o >> k) & 1;
            prob *= bit[k] == 0 ? p0[static_cast<size_t>(k)] : 1.0 - p0[static_cast<size_t>(k)];
        }
        ShotTable table(1, 1);
        table.cell(0, ShotTable::pair_index(OperatorSide::A, UnitaryRole::Shared), MeasPart::Re)[0] =
            static_cast<std::uint8_t>(bit[0]);
        table.cell(0, ShotTable::pair_index(OperatorSide::A, UnitaryRole::Shared), MeasPart::Im)[0] =
            static_cast<std::uint8_t>(bit[1]);
        table.cell(0, ShotTable::pair_index(OperatorSide::A, UnitaryRole::AliceLocal), MeasPart::Re)[0] =
            static_cast<std::uint8_t>(bit[2]);
        table.cell(0, ShotTable::pair_index(OperatorSide::A, UnitaryRole::AliceLocal), MeasPart::Im)[0] =
            static_cast<std::uint8_t>(bit[3]);
        table.cell(0, ShotTable::pair_index(OperatorSide::B, UnitaryRole::Shared), MeasPart::Re)[0] =
            static_cast<std::uint8_t>(bit[4]);
        table.cell(0, ShotTable::pair_index(OperatorSide::B, UnitaryRole::Shared), MeasPart::Im)[0] =
            static_cast<std::uint8_t>(bit[5]);
        table.cell(0, ShotTable::pair_index(OperatorSide::B, UnitaryRole::BobLocal), MeasPart::Re)[0] =
            static_cast<std::uint8_t>(bit[6]);
        table.cell(0, ShotTable::pair_index(OperatorSide::B, UnitaryRole::BobLocal), MeasPart::Im)[0] =
            static_cast<std::uint8_t>(bit[7]);
        expect += prob * estimate_trace(table, cfg).value;
    }

    const Complex cm = conditional_mean({iu}, cfg);
    REQUIRE(std::abs(cm - expect) <= 1e-12);
}

TEST_CASE("Monte Carlo replays with frozen unitaries converge to the conditional mean",
          "[protocol][statistical]") {
    const int d = 2, m = 2;
    BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    RngStream s(37);
    Matrix a = random_contraction(d, 0.9, s);
    RngStream sb = s.child("b");
    Matrix b = random_contraction(d, 0.9, sb);
    ProtocolConfig cfg = basic_config(d, 1, m, 0, ident, ident, a, b);

    RngStream su = s.child("u");
    IterationUnitaries iu{haar_unitary(d, su), haar_unitary(d, su), haar_unitary(d, su)};
    const Complex cm = conditional_mean({iu}, cfg);

    const std::array<std::pair<const Matrix*, const Matrix*>, 4> cells = {
        std::make_pair(&a, &iu.shared), std::make_pair(&a, &iu.alice_local),
        std::make_pair(&b, &iu.shared), std::make_pair(&b, &iu.bob_local)};

    RngStream bits = s.child("bits");
    const int reps = 20000;
    Complex acc(0, 0);
    double acc2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        ShotTable table(1, m);
        RngStream rep_stream = bits.child(r);
        for (int cell = 0; cell < 4; ++cell)
            for (int part = 0; part < 2; ++part) {
                const double p = prob0(*cells[static_cast<size_t>(cell)].first,
                                       *cells[static_cast<size_t>(cell)].second, part);
                RngStream cs = rep_stream.child(cell).child(part);
                std::uint8_t* out = table.cell(0, cell, MeasPart(part));
                for (int j = 0; j < m; ++j) out[j] = cs.bernoulli(p) ? 0 : 1;
            }
        const Complex t = estimate_trace(table, cfg).value;
        acc += t;
        acc2 += std::norm(t);
    }
    const Complex mean = acc / static_cast<double>(reps);
    const double var = acc2 / reps - std::norm(mean);
    const double se = std::sqrt(var / reps);
    REQUIRE(std::abs(mean - cm) <= 5.0 * se);
}

TEST_CASE("haar_mean: zero, identity, random blocks", "[protocol][oracle]") {
    REQUIRE(std::abs(haar_mean(Matrix::Zero(2, 2), Matrix::Zero(2, 2), 2)) == 0.0);
    REQUIRE(std::abs(haar_mean(Matrix::Identity(4, 4), Matrix::Identity(4, 4), 4) -
                     Complex(4.0, 0.0)) <= 1e-12);

    RngStream s(41);
    for (int rep = 0; rep < 6; ++rep) {
        RngStream sa = s.child(rep).child("a");
        RngStream sb = s.child(rep).child("b");
        Matrix p = random_contraction(4, 1.0, sa);
        Matrix q = random_contraction(4, 1.0, sb);
        const Complex direct = (p * q).trace();
        REQUIRE(std::abs(haar_mean(p, q, 4) - direct) <= 1e-9);
    }
}

TEST_CASE("estimator is unbiased against the haar_mean oracle", "[protocol][statistical]") {
    const int d = 2;
    BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    RngStream s(43);
    Matrix a = random_contraction(d, 0.9, s);
    RngStream sb = s.child("b");
    Matrix b = random_contraction(d, 0.9, sb);
    ProtocolConfig cfg = basic_config(d, 10, d * d, 7, ident, ident, a, b);

    const Complex target = haar_mean(a, b, d);
    const int reps = 4000;
    RngStream seeds = RngStream(1000).child("replay");
    Complex acc(0, 0);
    double acc2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        ProtocolConfig run = cfg;
        run.seed = seeds.child(r).key();
        const Complex t = run_and_estimate(run).value;
        acc += t;
        acc2 += std::norm(t);
    }
    const Complex mean = acc / static_cast<double>(reps);
    const double se = std::sqrt((acc2 / reps - std::norm(mean)) / reps);
    REQUIRE(std::abs(mean - target) <= 5.0 * se);
}

TEST_CASE("plan_samples pins the sample-count formulas", "[protocol]") {
    REQUIRE(plan_samples(2, 0.1) == std::make_pair(100, 4));
    REQUIRE(plan_samples(4, 0.05) == std::make_pair(400, 16));
    REQUIRE(plan_samples(2, 1.0).first == 1);
    REQUIRE_THROWS_AS(plan_samples(2, 0.0), InvalidParameterError);
}

TEST_CASE("variance shrinks like 1/N and with larger m", "[protocol][statistical]") {
    const int d = 2;
    BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    RngStream s(47);
    Matrix a = random_contraction(d, 0.9, s);
    RngStream sb = s.child("b");
    Matrix b = random_contraction(d, 0.9, sb);

    SECTION("1/N scaling within noise") {
        double ratio_sum = 0.0;
        const int repeats = 5;
        for (int rep = 0; rep < repeats; ++rep) {
            ProtocolConfig c1 = basic_config(d, 20, d * d, 100 + rep, ident, ident, a, b);
            ProtocolConfig c2 = c1;
            c2.N = 40;
            const double v1 = empirical_variance(c1, 160);
            const double v2 = empirical_variance(c2, 160);
            ratio_sum += v1 / v2;
        }
        const double mean_ratio = ratio_sum / repeats;
        REQUIRE(mean_ratio >= 2.0 / 1.5);
        REQUIRE(mean_ratio <= 2.0 * 1.5);
    }

    SECTION("larger m reduces variance") {
        ProtocolConfig c_small = basic_config(d, 25, d * d, 7, ident, ident, a, b);
        ProtocolConfig c_big = c_small;
        c_big.m = 8 * d * d;
        const double v_small = empirical_variance(c_small, 250);
        const double v_big = empirical_variance(c_big, 250);
        REQUIRE(v_big < v_small);
    }
}

TEST_CASE("median of means stays close to the target", "[protocol][statistical]") {
    const int d = 2;
    BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    RngStream s(53);
    Matrix a = random_contraction(d, 0.9, s);
    RngStream sb = s.child("b");
    Matrix b = random_contraction(d, 0.9, sb);
    ProtocolConfig cfg = basic_config(d, 400, d * d, 11, ident, ident, a, b);
    const Complex med = median_of_means(cfg, 9);
    REQUIRE(std::abs(med - haar_mean(a, b, d)) <= 0.35);
}

TEST_CASE("configuration validation", "[protocol]") {
    BoundedPoly ident = BoundedPoly::monomial(1, 1.0);
    ProtocolConfig cfg = basic_config(2, 1, 1, 0, ident, ident, Matrix::Identity(2, 2),
                                      Matrix::Identity(2, 2));
    cfg.N = 0;
    REQUIRE_THROWS_AS(run_shots(cfg), InvalidParameterError);
    cfg.N = 1;
    cfg.d = 4; // mismatched with the 2x2 encodings
    REQUIRE_THROWS_AS(run_shots(cfg), InvalidInputError);
}
