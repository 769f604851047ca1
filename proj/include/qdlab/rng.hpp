/*
 * Copyright 2026 The qdlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QDLAB_RNG_HPP
#define QDLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace qdlab {

    /// splitmix64 finalizer. Fixed forever: substream seeds depend on it.
    constexpr std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    class Rng {
    public:
        explicit Rng(std::uint64_t seed) : _engine(seed) {}

        /// Independent stream for work item `counter` of a run seeded with `seed`.
        static Rng substream(std::uint64_t seed, std::uint64_t counter) { return Rng(mix64(mix64(seed) ^ mix64(counter + 0x632be59bd9b4e019ULL))); }

        double uniform() { return std::uniform_real_distribution<double>(0., 1.)(_engine); }
        double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(_engine); }
        double normal() { return _normal(_engine); }
        bool bernoulli(double p) { return uniform() < p; }

        /// Uniform integer in [0, n). n must be positive.
        std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(_engine); }

        std::mt19937_64& engine() { return _engine; }

    private:
        std::mt19937_64 _engine;
        std::normal_distribution<double> _normal{0., 1.};
    };

} // namespace qdlab

#endif
