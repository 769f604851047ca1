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

#include <qdlab/variation.hpp>

#include <qdlab/errors.hpp>

namespace qdlab {

    RealVector clamp_to(const RealVector& g, const Bounds& bounds)
    {
        return g.cwiseMax(bounds.lo).cwiseMin(bounds.hi);
    }

    RealVector mutate_gaussian(const RealVector& g, const Bounds& gene_bounds, const VariationConfig& cfg, Rng& rng)
    {
        if (g.size() != gene_bounds.size())
            throw InvalidInput("mutate_gaussian: genome length differs from gene bounds");
        RealVector out = g;
        for (Eigen::Index j = 0; j < g.size(); ++j) {
            // Both draws happen for every gene so the stream does not depend on p_mut outcomes.
            const bool hit = rng.bernoulli(cfg.p_mut);
            const double z = rng.normal();
            if (hit)
                out(j) += cfg.sigma_gauss * (gene_bounds.hi(j) - gene_bounds.lo(j)) * z;
        }
        return clamp_to(out, gene_bounds);
    }

    RealVector iso_line(const RealVector& g1, const RealVector& g2, const Bounds& gene_bounds, const VariationConfig& cfg, Rng& rng)
    {
        if (g1.size() != g2.size())
            throw InvalidInput("iso_line: parents have lengths " + std::to_string(g1.size()) + " and " + std::to_string(g2.size()));
        if (g1.size() != gene_bounds.size())
            throw InvalidInput("iso_line: genome length differs from gene bounds");
        RealVector iso(g1.size());
        for (Eigen::Index j = 0; j < g1.size(); ++j)
            iso(j) = rng.normal();
        const double line = rng.normal();
        const RealVector range = gene_bounds.hi - gene_bounds.lo;
        RealVector child = g1 + cfg.sigma_iso * range.cwiseProduct(iso) + (cfg.sigma_line * line) * (g2 - g1);
        return clamp_to(child, gene_bounds);
    }

} // namespace qdlab
