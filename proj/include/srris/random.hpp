// SPDX-License-Identifier: Apache-2.0
//
// srris: successive relaying with reconfigurable intelligent surfaces
// Copyright (C) 2026 The srris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SRRIS_RANDOM_HPP
#define SRRIS_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace srris
{
    // SplitMix64 finalizer; a bijective 64-bit mix.
    constexpr std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Derive an independent sub-stream seed from a master seed and a tuple of indices.
    // The result depends only on the values, never on the order in which sub-streams are created,
    // so parallel trial execution reproduces serial output exactly.
    inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path)
    {
        std::uint64_t h = mix64(master);
        for (std::uint64_t p : path)
            h = mix64(h ^ mix64(p + 0x632BE59BD9B4E019ULL));
        return h;
    }

    // Seeded random stream used by every stochastic operation in the library.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        // Uniform in [0, 1).
        double uniform() { return unit_(engine_); }

        // Uniform in [lo, hi).
        double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }

        double normal() { return normal_(engine_); }

        // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
        std::complex<double> complex_normal(double variance = 1.0)
        {
            const double s = std::sqrt(0.5 * variance);
            const double re = normal_(engine_);
            const double im = normal_(engine_);
            return {s * re, s * im};
        }

        std::complex<double> unit_phasor()
        {
            return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi));
        }

        std::mt19937_64 &engine() { return engine_; }

    private:
        std::mt19937_64 engine_;
        std::uniform_real_distribution<double> unit_{0.0, 1.0};
        std::normal_distribution<double> normal_{0.0, 1.0};
    };
}

#endif
