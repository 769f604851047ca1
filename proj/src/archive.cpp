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

#include <qdlab/archive.hpp>

#include <algorithm>

namespace qdlab {

    Archive::Archive(Layout layout, std::size_t niches) : _layout(std::move(layout)), _cells(niches) {}

    Archive Archive::grid(Bounds bounds, std::vector<int> bins)
    {
        if (bounds.size() < 1 || static_cast<std::size_t>(bounds.size()) != bins.size())
            throw InvalidInput("grid archive: bounds and bins dimensions differ");
        std::size_t niches = 1;
        for (Eigen::Index j = 0; j < bounds.size(); ++j) {
            const int b = bins[static_cast<std::size_t>(j)];
            if (b < 1)
                throw InvalidInput("grid archive: bin counts must be >= 1");
            if (!(bounds.hi(j) > bounds.lo(j)))
                throw InvalidInput("grid archive: empty bounds in dimension " + std::to_string(j));
            niches *= static_cast<std::size_t>(b);
        }
        return Archive(GridLayout{std::move(bounds), std::move(bins)}, niches);
    }

    Archive Archive::cvt(Bounds bounds, Matrix centroids)
    {
        if (centroids.rows() < 1)
            throw InvalidInput("cvt archive: need at least one centroid");
        if (centroids.cols() != bounds.size())
            throw InvalidInput("cvt archive: centroid dimension differs from bounds");
        const auto k = static_cast<std::size_t>(centroids.rows());
        return Archive(CvtLayout{std::move(bounds), std::move(centroids)}, k);
    }

    const Bounds& Archive::bounds() const
    {
        return std::visit([](const auto& l) -> const Bounds& { return l.bounds; }, _layout);
    }

    std::size_t Archive::niche_of(const Descriptor& descriptor) const
    {
        if (descriptor.size() != descriptor_dim())
            throw InvalidInput("archive: descriptor has dimension " + std::to_string(descriptor.size()) + ", archive expects " + std::to_string(descriptor_dim()));
        if (const auto* g = std::get_if<GridLayout>(&_layout))
            return grid_index(descriptor, g->bounds, g->bins);
        return static_cast<std::size_t>(nearest_centroid(descriptor, std::get<CvtLayout>(_layout).centroids));
    }

    InsertOutcome Archive::try_insert(Elite candidate)
    {
        if (!std::isfinite(candidate.evaluation.fitness))
            throw InvalidInput("archive: candidate fitness is not finite");
        const std::size_t niche = niche_of(candidate.evaluation.descriptor);
        auto& cell = _cells[niche];
        if (!cell) {
            cell = std::move(candidate);
            _filled.push_back(niche);
            return InsertOutcome::new_cell;
        }
        if (candidate.evaluation.fitness > cell->evaluation.fitness) {
            cell = std::move(candidate);
            return InsertOutcome::improved;
        }
        return InsertOutcome::rejected;
    }

    const Elite* Archive::find(std::size_t niche) const
    {
        if (niche >= _cells.size() || !_cells[niche])
            return nullptr;
        return &*_cells[niche];
    }

    std::vector<std::size_t> Archive::filled_sorted() const
    {
        auto keys = _filled;
        std::sort(keys.begin(), keys.end());
        return keys;
    }

    std::optional<double> Archive::best_fitness() const
    {
        std::optional<double> best;
        for (std::size_t n : _filled) {
            const double f = _cells[n]->evaluation.fitness;
            if (!best || f > *best)
                best = f;
        }
        return best;
    }

    void Archive::clear()
    {
        for (auto& c : _cells)
            c.reset();
        _filled.clear();
    }

    ArchiveMetrics archive_metrics(const Archive& archive, const FitnessBounds& fb)
    {
        ArchiveMetrics m;
        if (archive.niche_count() == 0)
            return m;
        m.coverage = static_cast<double>(archive.size()) / static_cast<double>(archive.niche_count());
        const double span = fb.max - fb.min;
        // Summed in niche order so the value depends only on the current contents.
        for (std::size_t n : archive.filled_sorted())
            m.qd_score += std::clamp((archive.find(n)->evaluation.fitness - fb.min) / span, 0., 1.);
        return m;
    }

} // namespace qdlab
