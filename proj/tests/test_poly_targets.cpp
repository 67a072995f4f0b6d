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

#include <cmath>
#include <vector>

#include "locctrace/poly_targets.hpp"

using namespace locctrace;

namespace {

double global_mag(const BoundedPoly& p) {
    auto [mn, mx] = grid_range(p, -1.0, 1.0, 32 * (p.degree() + 1));
    return std::max(std::abs(mn), std::abs(mx));
}

} // namespace

TEST_CASE("log target: scale constant and endpoint", "[targets]") {
    auto [p, K] = log_poly(0.5, 1e-3);
    REQUIRE(K == Catch::Approx(2.0 * std::log(4.0)).epsilon(1e-12)); // 2 ln(2/delta)
    REQUIRE(std::abs(p(1.0)) <= 1e-3);                               // ln(1) = 0
    REQUIRE(p.parity() == Parity::Even);
    REQUIRE(global_mag(p) <= 1.0);
}

TEST_CASE("log target: dense-grid accuracy on [delta, 1]", "[targets]") {
    const double delta = 0.1, eps = 1e-3;
    auto [p, K] = log_poly(delta, eps);
    const double err = grid_sup_error(
        p, [K](double x) { return std::log(1.0 / x) / K; }, delta, 1.0, 20000);
    REQUIRE(err <= eps);
    REQUIRE(global_mag(p) <= 1.0);
}

TEST_CASE("rectangle target: plateau, stop band, parity", "[targets]") {
    const double t = 0.5, dp = 0.1, ep = 1e-3;
    BoundedPoly p = rect_poly(t, dp, ep);
    REQUIRE(p.parity() == Parity::Even);
    REQUIRE(p(0.0) >= 1.0 - ep);
    REQUIRE(p(0.0) <= 1.0);
    REQUIRE(p(0.9) >= 0.0);
    REQUIRE(p(0.9) <= ep);
    // parity is structural: exact symmetry
    for (double x : {0.13, 0.47, 0.82}) REQUIRE(p(-x) == p(x));
    REQUIRE_THROWS_AS(rect_poly(0.05, 0.1, 1e-3), InvalidParameterError);
}

TEST_CASE("positive power: endpoint, envelope, origin", "[targets]") {
    SECTION("c = 1 at x = 1") {
        BoundedPoly p = power_poly(1.0, Parity::Odd, 0.1, 1e-3, PowerSign::Positive);
        REQUIRE(std::abs(p(1.0) - 0.5) <= 1e-3);
    }
    SECTION("c = 1/2: envelope bound and origin") {
        const double eps = 1e-3;
        BoundedPoly p = power_poly(0.5, Parity::Even, 0.1, eps, PowerSign::Positive);
        REQUIRE(std::abs(p(0.0)) <= eps); // f(0) = 0
        const double excess = grid_sup_violation(
            p, [](double x) { return 0.5 * std::sqrt(std::abs(x)); }, -1.0, 1.0, 10000);
        REQUIRE(excess <= eps);
        REQUIRE(global_mag(p) <= 1.0);
    }
    SECTION("integer exponent with matching parity is exact") {
        BoundedPoly p = power_poly(2.0, Parity::Even, 0.1, 1e-3, PowerSign::Positive);
        REQUIRE(p.degree() == 2);
        for (double x : {-0.7, 0.2, 1.0})
            REQUIRE(p(x) == Catch::Approx(0.5 * x * x).margin(1e-14));
    }
}

TEST_CASE("negative power: half at delta, scaled tail", "[targets]") {
    const double delta = 0.25, eps = 1e-3;
    BoundedPoly p = power_poly(1.0, Parity::Even, delta, eps, PowerSign::Negative);
    REQUIRE(std::abs(p(delta) - 0.5) <= eps);           // delta * delta^-1 / 2
    REQUIRE(std::abs(p(1.0) - 0.5 * delta) <= eps);     // delta / 2 at x = 1
    const double err = grid_sup_error(
        p, [delta](double x) { return 0.5 * delta / x; }, delta, 1.0, 20000);
    REQUIRE(err <= eps);
    REQUIRE(global_mag(p) <= 1.0);
}

TEST_CASE("reciprocal target: endpoints, oddness, bound", "[targets]") {
    const double delta = 0.1, eps = 1e-3;
    BoundedPoly p = inverse_poly(delta, eps);
    REQUIRE(p.parity() == Parity::Odd);
    REQUIRE(std::abs(p(delta) - 0.75) <= eps);          // (3/4)(delta/delta)
    REQUIRE(std::abs(p(1.0) - 0.75 * delta) <= eps);    // (3/4) delta at x = 1
    for (double x : {0.15, 0.4, 0.95}) REQUIRE(p(-x) == -p(x));
    REQUIRE(global_mag(p) <= 1.0);
    const double err = grid_sup_error(
        p, [delta](double x) { return 0.75 * delta / x; }, delta, 1.0, 20000);
    REQUIRE(err <= eps);
}

TEST_CASE("every certificate re-verifies on a fresh grid", "[targets][property]") {
    auto recheck = [](const BoundedPoly& p, const std::function<double(double)>& truth) {
        for (const CertRecord& c : p.certificates()) {
            if (c.label == "accuracy") {
                const double err = grid_sup_error(p, truth, c.lo, c.hi, c.grid_points / 2 + 333);
                REQUIRE(err <= c.bound + 1e-12);
            } else if (c.label == "global-bound") {
                auto [mn, mx] = grid_range(p, c.lo, c.hi, c.grid_points / 2 + 333);
                REQUIRE(std::max(std::abs(mn), std::abs(mx)) <= c.bound + 1e-12);
            }
        }
    };
    auto [pl, K] = log_poly(0.2, 1e-3);
    recheck(pl, [K](double x) { return std::log(1.0 / std::abs(x)) / K; });
    BoundedPoly pi = inverse_poly(0.2, 1e-3);
    recheck(pi, [](double x) { return ((x > 0) - (x < 0)) * 0.75 * 0.2 / std::abs(x); });
}

TEST_CASE("degree grows at most linearly in (1/delta) ln(1/eps)", "[targets][property]") {
    std::vector<double> lx, ly;
    for (double delta : {0.5, 0.25, 0.1, 0.05}) {
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            auto [pl, K] = log_poly(delta, eps);
            BoundedPoly pi = inverse_poly(delta, eps);
            const double g = (1.0 / delta) * std::log(1.0 / eps);
            lx.push_back(std::log(g));
            ly.push_back(std::log(static_cast<double>(pl.degree())));
            lx.push_back(std::log(g));
            ly.push_back(std::log(static_cast<double>(pi.degree())));
        }
    }
    // least-squares slope of log(degree) against log((1/delta) ln(1/eps))
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lx.size());
    for (size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    INFO("fitted growth exponent " << slope);
    REQUIRE(slope <= 1.3);
}
