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

#ifndef QDLAB_VARIATION_HPP
#define QDLAB_VARIATION_HPP

#include <qdlab/rng.hpp>
#include <qdlab/types.hpp>

namespace qdlab {

    /// Scales are fractions of each gene's range so one config fits every domain.
    struct VariationConfig {
        double sigma_gauss = 0.1;
        double p_mut = 0.2;
        double sigma_iso = 0.01;
        double sigma_line = 0.2;

        bool operator==(const VariationConfig&) const = default;
    };

    RealVector clamp_to(const RealVector& g, const Bounds& bounds);

    /// Each gene, with probability p_mut, gets N(0, (sigma_gauss * range)^2) added; then clamped.
    RealVector mutate_gaussian(const RealVector& g, const Bounds& gene_bounds, const VariationConfig& cfg, Rng& rng);

    /// Iso+line recombination:
    ///   child = g1 + sigma_iso * range .* N(0, I) + sigma_line * N(0, 1) * (g2 - g1)
    /// with one scalar line coefficient shared by all genes; then clamped.
    RealVector iso_line(const RealVector& g1, const RealVector& g2, const Bounds& gene_bounds, const VariationConfig& cfg, Rng& rng);

} // namespace qdlab

#endif
