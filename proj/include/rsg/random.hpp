/*
 * Copyright 2026 The rsgames authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>

namespace rsg {

/// SplitMix64 step; used to derive well-separated stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for the independent stream (seed, stream, salt). Distinct experiment
/// indices draw from distinct streams, so any row is reproducible in
/// isolation.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t salt = 0) {
    return splitmix64(splitmix64(seed ^ splitmix64(stream)) ^ salt);
}

/// Seeded generator with the draw primitives used throughout generation.
/// The engine is std::mt19937_64 and the derivations below are hand-rolled
/// (no std::uniform_*_distribution), so sequences are identical across
/// standard libraries for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform integer in [lo, hi], both ends inclusive.
    std::uint64_t rand_int(std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t span = hi - lo + 1; // hi == UINT64_MAX && lo == 0 not used here
        if (span == 0) return next_u64();
        // rejection sampling; unbiased
        std::uint64_t limit = std::uint64_t(-span) % span; // 2^64 mod span
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x < limit);
        return lo + x % span;
    }

    /// Uniform double in [lo, hi).
    double rand_float(double lo, double hi) {
        double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

    bool bernoulli(double p) { return rand_float(0.0, 1.0) < p; }

    /// Fair coin.
    bool coin() { return next_u64() & 1u; }

private:
    std::mt19937_64 gen_;
};

} // namespace rsg
