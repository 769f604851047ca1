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

#ifndef QDLAB_DOMAIN_HPP
#define QDLAB_DOMAIN_HPP

#include <functional>
#include <string>

#include <qdlab/rng.hpp>
#include <qdlab/types.hpp>
#include <qdlab/variation.hpp>

namespace qdlab {

    struct CppnMutationRates {
        double weight_perturb = 0.8; // per edge
        double weight_sigma = 0.3;
        double add_connection = 0.1;
        double add_node = 0.05;
        double change_activation = 0.05;

        static CppnMutationRates none() { return {0., 0.3, 0., 0., 0.}; }
    };

    /// A benchmark problem: genome space, evaluation, and the declared
    /// descriptor and fitness bounds the archives normalize against.
    struct DomainSpec {
        std::string name;
        GenomeKind genome_kind = GenomeKind::real_vector;
        Bounds gene_bounds; // real-vector genomes only
        Bounds descriptor_bounds;
        FitnessBounds fitness_bounds;
        CppnMutationRates cppn_rates; // CPPN genomes only

        /// Pure; may be called concurrently.
        std::function<Evaluation(const Genome&)> evaluate;
        std::function<Genome(Rng&)> random_genome;

        Eigen::Index descriptor_dim() const { return descriptor_bounds.size(); }
    };

    /// Uniform random real vector inside `bounds`.
    RealVector random_real_vector(const Bounds& bounds, Rng& rng);

    /// One child from two parents: iso_line then mutate_gaussian for real
    /// vectors, cppn_mutate of the first parent for CPPN genomes.
    Genome vary(const DomainSpec& domain, const Genome& parent1, const Genome& parent2, const VariationConfig& cfg, Rng& rng);

    /// Clamps fitness and descriptor into the domain's declared bounds.
    Evaluation clamp_evaluation(Evaluation e, const DomainSpec& domain);

} // namespace qdlab

#endif
