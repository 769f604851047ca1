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

#include <qdlab/domain.hpp>

#include <qdlab/domains/cppn.hpp>
#include <qdlab/errors.hpp>

namespace qdlab {

    RealVector random_real_vector(const Bounds& bounds, Rng& rng)
    {
        RealVector g(bounds.size());
        for (Eigen::Index j = 0; j < g.size(); ++j)
            g(j) = rng.uniform(bounds.lo(j), bounds.hi(j));
        return g;
    }

    Genome vary(const DomainSpec& domain, const Genome& parent1, const Genome& parent2, const VariationConfig& cfg, Rng& rng)
    {
        if (domain.genome_kind == GenomeKind::cppn)
            return cppn_mutate(std::get<CppnGenome>(parent1), domain.cppn_rates, rng);
        const auto& a = std::get<RealVector>(parent1);
        const auto& b = std::get<RealVector>(parent2);
        return mutate_gaussian(iso_line(a, b, domain.gene_bounds, cfg, rng), domain.gene_bounds, cfg, rng);
    }

    Evaluation clamp_evaluation(Evaluation e, const DomainSpec& domain)
    {
        if (!std::isfinite(e.fitness))
            throw InvalidInput(domain.name + ": evaluation produced a non-finite fitness");
        if (e.descriptor.size() != domain.descriptor_dim())
            throw InvalidInput(domain.name + ": descriptor dimension mismatch");
        e.fitness = std::clamp(e.fitness, domain.fitness_bounds.min, domain.fitness_bounds.max);
        e.descriptor = e.descriptor.cwiseMax(domain.descriptor_bounds.lo).cwiseMin(domain.descriptor_bounds.hi);
        return e;
    }

} // namespace qdlab
