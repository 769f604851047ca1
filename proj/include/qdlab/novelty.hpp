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

#ifndef QDLAB_NOVELTY_HPP
#define QDLAB_NOVELTY_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <qdlab/types.hpp>

namespace qdlab {

    /// Returned by novelty_score for an empty reference set.
    inline constexpr double max_novelty = std::numeric_limits<double>::infinity();

    template <typename DerivedA, typename DerivedB>
    double euclidean_distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
    {
        double s = 0.;
        for (Eigen::Index j = 0; j < a.size(); ++j) {
            const double diff = static_cast<double>(a(j)) - static_cast<double>(b(j));
            s += diff * diff;
        }
        return std::sqrt(s);
    }

    /// Mean of the k smallest entries of `distances` (all of them when fewer
    /// than k). Reorders `distances`.
    inline double mean_of_k_smallest(std::vector<double>& distances, int k)
    {
        if (distances.empty())
            return max_novelty;
        const auto m = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 1)), distances.size());
        std::nth_element(distances.begin(), distances.begin() + static_cast<std::ptrdiff_t>(m - 1), distances.end());
        std::sort(distances.begin(), distances.begin() + static_cast<std::ptrdiff_t>(m));
        double sum = 0.;
        for (std::size_t i = 0; i < m; ++i)
            sum += distances[i];
        return sum / static_cast<double>(m);
    }

    /// Mean Euclidean distance from `query` to its k nearest references.
    template <typename Derived>
    double novelty_score(const Eigen::MatrixBase<Derived>& query, std::span<const Descriptor> references, int k)
    {
        std::vector<double> distances;
        distances.reserve(references.size());
        for (const auto& r : references)
            distances.push_back(euclidean_distance(query, r));
        return mean_of_k_smallest(distances, k);
    }

    struct NoveltyEntry {
        Descriptor descriptor;
        std::optional<Elite> elite;
    };

    /// Unstructured archive of past behaviors with fixed-threshold admission.
    class NoveltyArchive {
    public:
        NoveltyArchive(double rho, int k);

        double rho() const { return _rho; }
        int k() const { return _k; }
        std::size_t size() const { return _entries.size(); }
        const std::vector<NoveltyEntry>& entries() const { return _entries; }
        const NoveltyEntry& operator[](std::size_t i) const { return _entries[i]; }

        /// Appends the descriptor iff score > rho.
        bool update(const Descriptor& descriptor, double score, std::optional<Elite> elite = std::nullopt);

    private:
        double _rho;
        int _k;
        std::vector<NoveltyEntry> _entries;
    };

} // namespace qdlab

#endif
