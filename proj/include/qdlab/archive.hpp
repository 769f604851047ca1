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

#ifndef QDLAB_ARCHIVE_HPP
#define QDLAB_ARCHIVE_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include <qdlab/errors.hpp>
#include <qdlab/types.hpp>

namespace qdlab {

    namespace detail {
        template <typename Derived>
        void require_finite(const Eigen::MatrixBase<Derived>& v)
        {
            for (Eigen::Index i = 0; i < v.size(); ++i)
                if (!std::isfinite(static_cast<double>(v(i))))
                    throw InvalidInput("descriptor component " + std::to_string(i) + " is not finite");
        }
    } // namespace detail

    /// Row-major flat index of the grid cell holding `descriptor`.
    ///
    /// Bins are half-open [lo + i*w, lo + (i+1)*w) except the last, which also
    /// takes the top edge. Values outside the bounds are clamped into the edge cells.
    template <typename Derived>
    std::size_t grid_index(const Eigen::MatrixBase<Derived>& descriptor, const Bounds& bounds, const std::vector<int>& bins)
    {
        using Scalar = typename Derived::Scalar;
        if (descriptor.size() != bounds.size() || static_cast<std::size_t>(descriptor.size()) != bins.size())
            throw InvalidInput("grid_index: descriptor, bounds and bins dimensions differ");
        detail::require_finite(descriptor);

        std::size_t flat = 0;
        for (Eigen::Index j = 0; j < descriptor.size(); ++j) {
            const int b = bins[static_cast<std::size_t>(j)];
            if (b < 1)
                throw InvalidInput("grid_index: bin count must be >= 1");
            const Scalar lo = static_cast<Scalar>(bounds.lo(j));
            const Scalar hi = static_cast<Scalar>(bounds.hi(j));
            Scalar scaled = (descriptor(j) - lo) / (hi - lo) * static_cast<Scalar>(b);
            scaled = std::clamp(std::floor(scaled), Scalar(0), static_cast<Scalar>(b - 1));
            flat = flat * static_cast<std::size_t>(b) + static_cast<std::size_t>(scaled);
        }
        return flat;
    }

    /// Index of the row of `centroids` (k x d) closest to `descriptor` in
    /// Euclidean distance. Ties go to the lowest index.
    template <typename Derived, typename DerivedC>
    Eigen::Index nearest_centroid(const Eigen::MatrixBase<Derived>& descriptor, const Eigen::MatrixBase<DerivedC>& centroids)
    {
        using Scalar = typename DerivedC::Scalar;
        if (centroids.rows() == 0)
            throw InvalidInput("nearest_centroid: no centroids");
        if (centroids.cols() != descriptor.size())
            throw InvalidInput("nearest_centroid: dimension mismatch");
        detail::require_finite(descriptor);

        Eigen::Index best = 0;
        Scalar best_d2 = std::numeric_limits<Scalar>::infinity();
        for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
            Scalar d2 = 0;
            for (Eigen::Index j = 0; j < centroids.cols(); ++j) {
                const Scalar diff = centroids(c, j) - descriptor(j);
                d2 += diff * diff;
            }
            if (d2 < best_d2) {
                best_d2 = d2;
                best = c;
            }
        }
        return best;
    }

    enum class InsertOutcome { new_cell, improved, rejected };

    struct GridLayout {
        Bounds bounds;
        std::vector<int> bins;
    };

    struct CvtLayout {
        Bounds bounds;
        Matrix centroids; // k x d
    };

    /// MAP-Elites archive: a partition of descriptor space (grid or CVT) with
    /// at most one elite per niche. Single writer; const members are reentrant.
    class Archive {
    public:
        static Archive grid(Bounds bounds, std::vector<int> bins);
        static Archive cvt(Bounds bounds, Matrix centroids);

        bool is_grid() const { return std::holds_alternative<GridLayout>(_layout); }
        bool is_cvt() const { return !is_grid(); }
        const GridLayout& grid_layout() const { return std::get<GridLayout>(_layout); }
        const CvtLayout& cvt_layout() const { return std::get<CvtLayout>(_layout); }
        const Bounds& bounds() const;
        Eigen::Index descriptor_dim() const { return bounds().size(); }

        std::size_t niche_count() const { return _cells.size(); }
        std::size_t size() const { return _filled.size(); }
        bool empty() const { return _filled.empty(); }

        std::size_t niche_of(const Descriptor& descriptor) const;

        /// Strict-improvement replacement; the incumbent wins ties.
        InsertOutcome try_insert(Elite candidate);

        /// nullptr when the niche is empty.
        const Elite* find(std::size_t niche) const;

        /// Filled niche keys in the order they were first filled.
        const std::vector<std::size_t>& filled() const { return _filled; }
        /// Filled niche keys in ascending order.
        std::vector<std::size_t> filled_sorted() const;

        std::optional<double> best_fitness() const;

        /// Drops all elites, keeps the tessellation.
        void clear();

    private:
        using Layout = std::variant<GridLayout, CvtLayout>;
        Archive(Layout layout, std::size_t niches);

        Layout _layout;
        std::vector<std::optional<Elite>> _cells;
        std::vector<std::size_t> _filled;
    };

    struct ArchiveMetrics {
        double coverage = 0.;
        double qd_score = 0.;
    };

    /// coverage = filled / niches; qd_score = sum of fitnesses normalized into [0, 1] by `fb`.
    ArchiveMetrics archive_metrics(const Archive& archive, const FitnessBounds& fb);

} // namespace qdlab

#endif
