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

#include "locctrace/block_encoding.hpp"

using namespace locctrace;

TEST_CASE("dilate: zero, identity, random contraction", "[blockenc]") {
    SECTION("zero matrix") {
        BlockEncoding be = dilate(Matrix::Zero(2, 2), 1.0);
        REQUIRE(top_left_block(be).norm() <= 1e-14);
        REQUIRE(unitarity_residual(be.unitary) <= 1e-10);
    }
    SECTION("identity") {
        BlockEncoding be = dilate(Matrix::Identity(2, 2), 1.0);
        REQUIRE((top_left_block(be) - Matrix::Identity(2, 2)).norm() <= 1e-12);
    }
    SECTION("random contraction verifies") {
        RngStream s(3);
        Matrix a = random_contraction(4, 0.9, s);
        BlockEncoding be = dilate(a, 1.0);
        auto [ok, residual] = verify(be, a);
        REQUIRE(ok);
        REQUIRE(residual <= 1e-10);
    }
    SECTION("diagonal read-off with beta") {
        Matrix a = Matrix::Zero(2, 2);
        a(0, 0) = 0.5;
        a(1, 1) = 0.25;
        BlockEncoding be = dilate(a, 1.0);
        REQUIRE((top_left_block(be) - a).norm() <= 1e-12);
    }
    SECTION("scale violation") {
        REQUIRE_THROWS_AS(dilate(2.0 * Matrix::Identity(2, 2), 1.0),
                          PreconditionViolationError);
        REQUIRE_NOTHROW(dilate(2.0 * Matrix::Identity(2, 2), 2.0));
    }
}

TEST_CASE("top_left_block with no ancilla returns the unitary itself", "[blockenc]") {
    RngStream s(5);
    Matrix u = haar_unitary(4, s);
    BlockEncoding be{u, 1.0, 0, 0.0, 2};
    REQUIRE((top_left_block(be) - u).norm() == 0.0);
}

TEST_CASE("verify detects a constructed perturbation", "[blockenc]") {
    RngStream s(8);
    Matrix a = random_contraction(2, 0.8, s);
    BlockEncoding be = dilate(a, 1.0);
    const double eps = 0.05;
    Matrix target = a;
    target(0, 0) += 2.0 * eps; // perturb the claimed matrix by 2 eps
    auto [ok, residual] = verify(be, target);
    REQUIRE_FALSE(ok);
    REQUIRE(residual == Catch::Approx(2.0 * eps).margin(1e-10));
}

TEST_CASE("dilate then top_left_block is the identity on contractions", "[blockenc][property]") {
    RngStream s(9);
    for (int rep = 0; rep < 6; ++rep) {
        RngStream sub = s.child(rep);
        Matrix a = random_contraction(4, 0.95, sub);
        const double beta = 1.0 + rep % 3;
        BlockEncoding be = dilate(a, beta);
        REQUIRE((beta * top_left_block(be) - a).norm() <= 1e-10);
    }
}

TEST_CASE("from_purification: product, Bell, random", "[blockenc]") {
    SECTION("product state gives a pure reduced state") {
        Vector psi = Vector::Zero(4);
        psi(0) = 1.0; // |0>_a |0>_s
        auto [rho, be] = from_purification(psi, 1);
        Matrix expect = Matrix::Zero(2, 2);
        expect(0, 0) = 1.0;
        REQUIRE((rho - expect).norm() <= 1e-14);
        auto [ok, res] = verify(be, rho);
        REQUIRE(ok);
    }
    SECTION("Bell-type purification traces to maximally mixed") {
        Vector psi = Vector::Zero(4);
        psi(0) = 1.0 / std::sqrt(2.0); // (|00> + |11>)/sqrt(2)
        psi(3) = 1.0 / std::sqrt(2.0);
        auto [rho, be] = from_purification(psi, 1);
        REQUIRE((rho - 0.5 * Matrix::Identity(2, 2)).norm() <= 1e-12);
        REQUIRE(be.ancillas == 2);
        REQUIRE(be.beta == 1.0);
        auto [ok, res] = verify(be, rho);
        REQUIRE(ok);
        REQUIRE(res <= 1e-10);
    }
    SECTION("random purification: trace one, PSD, verified encoding") {
        RngStream s(12);
        Vector psi = random_state(8, s); // 2 ancilla qubits, 1 system qubit
        auto [rho, be] = from_purification(psi, 1);
        REQUIRE(std::abs(rho.trace().real() - 1.0) <= 1e-12);
        EigResult e = hermitian_eig(rho);
        REQUIRE(e.values(e.values.size() - 1) >= -1e-12);
        auto [ok, res] = verify(be, rho);
        REQUIRE(ok);

        // independent partial-trace oracle
        Matrix oracle = Matrix::Zero(2, 2);
        for (int alpha = 0; alpha < 4; ++alpha)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    oracle(i, j) += psi(alpha * 2 + i) * std::conj(psi(alpha * 2 + j));
        REQUIRE((rho - oracle).norm() <= 1e-15);
    }
    SECTION("non-normalized input is rejected") {
        Vector psi = Vector::Zero(4);
        psi(0) = 0.9;
        REQUIRE_THROWS_AS(from_purification(psi, 1), InvalidInputError);
    }
}

TEST_CASE("controlled form acts as identity or U by control value", "[blockenc]") {
    RngStream s(21);
    Matrix a = random_contraction(2, 0.7, s);
    BlockEncoding be = dilate(a, 1.0);
    Matrix c = controlled(be);
    const long long n = be.total_dim();
    REQUIRE(c.rows() == 2 * n);
    REQUIRE(unitarity_residual(c) <= 1e-12);
    // control |0>: identity on the rest
    REQUIRE((c.topLeftCorner(n, n) - Matrix::Identity(n, n)).norm() == 0.0);
    // control |1>, rest |x>: applies U
    Vector x = Vector::Zero(n);
    x(1) = 1.0;
    Vector in = Vector::Zero(2 * n);
    in.tail(n) = x;
    Vector out = c * in;
    REQUIRE((out.tail(n) - be.unitary * x).norm() <= 1e-14);
    REQUIRE(out.head(n).norm() == 0.0);

    BlockEncoding ident{Matrix::Identity(4, 4), 1.0, 1, 0.0, 1};
    REQUIRE((controlled(ident) - Matrix::Identity(8, 8)).norm() == 0.0);
}

TEST_CASE("injected perturbation lands near the requested size", "[blockenc]") {
    RngStream s(33);
    Matrix a = random_contraction_banded(4, 0.5, 0.9, s);
    BlockEncoding be = dilate(a, 1.0);
    RngStream ps = s.child("perturb");
    auto [pbe, achieved] = inject_perturbation(be, 0.02, ps);
    REQUIRE(unitarity_residual(pbe.unitary) <= 1e-10);
    REQUIRE(achieved > 0.0);
    REQUIRE(achieved <= 0.1); // same order as requested
    auto [ok, res] = verify(pbe, a);
    REQUIRE(res == Catch::Approx(achieved).margin(1e-12));
    REQUIRE(ok); // eps field records the achieved deviation
}
