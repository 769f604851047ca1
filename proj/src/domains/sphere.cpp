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

#include <qdlab/domains/sphere.hpp>

#include <qdlab/errors.hpp>

namespace qdlab {

    Evaluation sphere_evaluate(const RealVector& g)
    {
        if (g.size() < 2)
            throw InvalidInput("sphere: need at least 2 genes");
        Evaluation e;
        e.fitness = -(g.array() - 0.5).square().sum();
        e.descriptor = g.head(2);
        return e;
    }

    DomainSpec make_sphere_domain(int n)
    {
        if (n < 2)
            throw InvalidInput("sphere: need at least 2 genes");
        DomainSpec d;
        d.name = "sphere";
        d.genome_kind = GenomeKind::real_vector;
        d.gene_bounds = Bounds::unit(n);
        d.descriptor_bounds = Bounds::unit(2);
        d.fitness_bounds = {-n / 4., 0.};
        d.evaluate = [n](const Genome& g) {
            const auto* v = std::get_if<RealVector>(&g);
            if (!v || v->size() != n)
                throw InvalidInput("sphere: expected a real vector of length " + std::to_string(n));
            return sphere_evaluate(*v);
        };
        const Bounds genes = d.gene_bounds;
        d.random_genome = [genes](Rng& rng) -> Genome { return random_real_vector(genes, rng); };
        return d;
    }

} // namespace qdlab
