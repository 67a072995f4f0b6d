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
 * Seeded, hierarchical random streams. A stream is identified by a 64-bit
 * seed plus a path of integer (or string) labels; identical (seed, path)
 * pairs produce bit-identical draw sequences no matter in which order the
 * sibling streams are created or consumed, which is what makes the sampling
 * protocols reproducible across thread counts.
 *
 * Derivation: each path label is folded into a 64-bit key with a splitmix64
 * round, and the key drives a counter-based splitmix64 output sequence.
 * Uniform and Gaussian variates are produced from raw 64-bit words directly
 * (no std::distribution), so sequences are stable across standard-library
 * versions as well.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace locctrace {

namespace detail {

inline std::uint64_t splitmix64_mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    return splitmix64_mix(x + 0x9E3779B97F4A7C15ull);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

} // namespace detail

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed)
        : key_(detail::splitmix64(seed ^ 0x6C626C6F63637472ull)) {}

    /// Derives the child stream labeled `label`. The parent is not consumed.
    RngStream child(std::uint64_t label) const {
        return RngStream(Derived{}, detail::splitmix64(key_ ^ detail::splitmix64(label)));
    }

    RngStream child(std::string_view label) const { return child(detail::fnv1a64(label)); }

    std::uint64_t next_u64() {
        counter_ += 0x9E3779B97F4A7C15ull;
        return detail::splitmix64_mix(key_ ^ counter_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return std::ldexp(static_cast<double>(next_u64() >> 11), -53); }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Returns true with probability p.
    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t key() const { return key_; }

  private:
    struct Derived {};
    RngStream(Derived, std::uint64_t key) : key_(key) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace locctrace
