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

#ifndef QDLAB_ENGINES_HPP
#define QDLAB_ENGINES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <qdlab/archive.hpp>
#include <qdlab/domain.hpp>
#include <qdlab/novelty.hpp>
#include <qdlab/variation.hpp>

namespace qdlab {

    struct EngineConfig {
        std::size_t budget = 10000; // total evaluations
        std::size_t batch = 100; // children per MAP-Elites generation
        std::size_t init_count = 0; // 0: max(100, niches / 10)
        std::uint64_t seed = 1;
        unsigned workers = 1; // evaluation threads; results do not depend on it
    };

    struct NsConfig {
        int pop_size = 100;
        int k = 15;
        double rho = 0.05;
        bool local_competition = false;
        double blend_weight = 0.5;
        int tournament_size = 3;
    };

    struct GaConfig {
        int pop_size = 100;
        int tournament_size = 3;
        int elite_keep = 5;
    };

    struct MetricsRow {
        std::size_t evals = 0;
        double coverage = 0.;
        double qd_score = 0.;
        double best_fitness = 0.;
    };

    using MetricsLog = std::vector<MetricsRow>;

    std::size_t default_init_count(std::size_t niche_count);

    /// Tournament with replacement; the highest score wins, ties go to the
    /// contestant drawn first.
    std::size_t tournament_select(std::span<const double> scores, int size, Rng& rng);

    /// Ranks scaled into [0, 1] (1 = largest); tied values share their mean rank.
    std::vector<double> rank_normalize(std::span<const double> values);

    /// Evaluates genomes[i] into out[i] over `workers` threads, clamped into the domain bounds.
    std::vector<Evaluation> evaluate_all(const DomainSpec& domain, std::span<const Genome> genomes, unsigned workers);

    /// MAP-Elites: uniform random bootstrap, then batches of children of two
    /// uniformly drawn elites, inserted in batch order. `archive` is filled in place.
    MetricsLog run_map_elites(const DomainSpec& domain, Archive& archive, const VariationConfig& variation, const EngineConfig& cfg);

    struct NsScores {
        std::vector<double> novelty;
        std::vector<double> selection;
    };

    /// Novelty of each individual against the archive plus the rest of the
    /// population, and the selection score derived from it: the novelty
    /// itself, or with local competition
    ///   w * rank_norm(novelty) + (1 - w) * (fraction of the k nearest neighbors strictly outperformed).
    NsScores score_population(std::span<const Evaluation> population, const NoveltyArchive& archive, const NsConfig& cfg);

    struct NoveltyResult {
        NoveltyArchive archive;
        std::optional<Elite> best; // by raw fitness
        MetricsLog log;
    };

    /// Novelty Search (optionally with local competition). When `observer` is
    /// given, every evaluated individual is offered to it and coverage / QD
    /// score in the log come from it.
    NoveltyResult run_novelty_search(const DomainSpec& domain, const NsConfig& ns, const VariationConfig& variation, const EngineConfig& cfg, Archive* observer = nullptr);

    struct GaResult {
        std::optional<Elite> best;
        MetricsLog log;
    };

    /// Elitist generational GA on raw fitness: keeps the elite_keep best and
    /// refills by tournament selection and variation.
    GaResult run_objective_ga(const DomainSpec& domain, const GaConfig& ga, const VariationConfig& variation, const EngineConfig& cfg, Archive* observer = nullptr);

} // namespace qdlab

#endif
