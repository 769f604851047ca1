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

#include <qdlab/engines.hpp>

#include <algorithm>
#include <numeric>

#include <qdlab/errors.hpp>
#include <qdlab/parallel.hpp>

namespace qdlab {

    std::size_t default_init_count(std::size_t niche_count) { return std::max<std::size_t>(100, niche_count / 10); }

    std::size_t tournament_select(std::span<const double> scores, int size, Rng& rng)
    {
        if (scores.empty() || size < 1)
            throw InvalidInput("tournament_select: empty population or size < 1");
        std::size_t winner = rng.index(scores.size());
        for (int i = 1; i < size; ++i) {
            const std::size_t c = rng.index(scores.size());
            if (scores[c] > scores[winner])
                winner = c;
        }
        return winner;
    }

    std::vector<double> rank_normalize(std::span<const double> values)
    {
        const std::size_t n = values.size();
        std::vector<double> out(n, 1.);
        if (n < 2)
            return out;
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i;
            while (j + 1 < n && values[order[j + 1]] == values[order[i]])
                ++j;
            const double mean_rank = 0.5 * static_cast<double>(i + j);
            for (std::size_t t = i; t <= j; ++t)
                out[order[t]] = mean_rank / static_cast<double>(n - 1);
            i = j + 1;
        }
        return out;
    }

    std::vector<Evaluation> evaluate_all(const DomainSpec& domain, std::span<const Genome> genomes, unsigned workers)
    {
        std::vector<Evaluation> out(genomes.size());
        parallel_for(genomes.size(), workers, [&](std::size_t i) { out[i] = clamp_evaluation(domain.evaluate(genomes[i]), domain); });
        return out;
    }

    namespace {
        void check_engine(const EngineConfig& cfg)
        {
            if (cfg.batch < 1)
                throw InvalidInput("engine: batch must be >= 1");
        }

        std::vector<Genome> random_genomes(const DomainSpec& domain, std::size_t count, std::uint64_t seed, std::uint64_t counter, unsigned workers)
        {
            std::vector<Genome> out(count);
            parallel_for(count, workers, [&](std::size_t i) {
                Rng rng = Rng::substream(seed, counter + i);
                out[i] = domain.random_genome(rng);
            });
            return out;
        }

        /// Best-ever individual and the optional observer archive, shared by NS and the GA.
        struct Tracker {
            const DomainSpec& domain;
            Archive* observer;
            std::optional<Elite> best;
            MetricsLog log;

            void observe(std::span<const Genome> genomes, std::span<const Evaluation> evals)
            {
                for (std::size_t i = 0; i < genomes.size(); ++i) {
                    if (!best || evals[i].fitness > best->evaluation.fitness)
                        best = Elite{genomes[i], evals[i]};
                    if (observer)
                        observer->try_insert(Elite{genomes[i], evals[i]});
                }
            }

            void record(std::size_t evals)
            {
                MetricsRow row{evals, 0., 0., best ? best->evaluation.fitness : domain.fitness_bounds.min};
                if (observer) {
                    const auto m = archive_metrics(*observer, domain.fitness_bounds);
                    row.coverage = m.coverage;
                    row.qd_score = m.qd_score;
                }
                log.push_back(row);
            }
        };

        void check_observer(const DomainSpec& domain, const Archive* observer)
        {
            if (observer && observer->descriptor_dim() != domain.descriptor_dim())
                throw InvalidInput("engine: observer archive dimension differs from the domain descriptor");
        }
    } // namespace

    MetricsLog run_map_elites(const DomainSpec& domain, Archive& archive, const VariationConfig& variation, const EngineConfig& cfg)
    {
        check_engine(cfg);
        if (domain.descriptor_dim() != archive.descriptor_dim())
            throw InvalidInput("map_elites: domain descriptor has dimension " + std::to_string(domain.descriptor_dim()) + ", archive has "
                + std::to_string(archive.descriptor_dim()));

        MetricsLog log;
        std::size_t evals = 0;
        std::uint64_t counter = 0;
        auto record = [&] {
            const auto m = archive_metrics(archive, domain.fitness_bounds);
            log.push_back({evals, m.coverage, m.qd_score, archive.best_fitness().value_or(domain.fitness_bounds.min)});
        };
        auto insert_all = [&](std::vector<Genome>& genomes) {
            const auto results = evaluate_all(domain, genomes, cfg.workers);
            for (std::size_t i = 0; i < genomes.size(); ++i)
                archive.try_insert(Elite{std::move(genomes[i]), results[i]});
            evals += genomes.size();
            counter += genomes.size();
            record();
        };

        if (cfg.budget == 0)
            return log;
        if (archive.empty()) {
            const std::size_t init = cfg.init_count > 0 ? cfg.init_count : default_init_count(archive.niche_count());
            if (cfg.budget < init)
                throw InvalidInput("map_elites: budget " + std::to_string(cfg.budget) + " is below init_count " + std::to_string(init));
            auto genomes = random_genomes(domain, init, cfg.seed, counter, cfg.workers);
            insert_all(genomes);
        }

        while (evals < cfg.budget) {
            const std::size_t m = std::min(cfg.batch, cfg.budget - evals);
            const std::vector<std::size_t> parents = archive.filled();
            std::vector<Genome> children(m);
            parallel_for(m, cfg.workers, [&](std::size_t j) {
                Rng rng = Rng::substream(cfg.seed, counter + j);
                const Elite& a = *archive.find(parents[rng.index(parents.size())]);
                const Elite& b = *archive.find(parents[rng.index(parents.size())]);
                children[j] = vary(domain, a.genome, b.genome, variation, rng);
            });
            insert_all(children);
        }
        return log;
    }

    NsScores score_population(std::span<const Evaluation> population, const NoveltyArchive& archive, const NsConfig& cfg)
    {
        const std::size_t n = population.size();
        const std::size_t a = archive.size();
        NsScores s;
        s.novelty.resize(n);

        struct Neighbor {
            double distance;
            double fitness;
        };
        std::vector<std::vector<Neighbor>> neighbors(cfg.local_competition ? n : 0);

        for (std::size_t i = 0; i < n; ++i) {
            const Descriptor& d = population[i].descriptor;
            std::vector<double> distances;
            distances.reserve(a + n);
            for (const auto& e : archive.entries())
                distances.push_back(euclidean_distance(d, e.descriptor));
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    distances.push_back(euclidean_distance(d, population[j].descriptor));

            if (cfg.local_competition) {
                auto& nb = neighbors[i];
                nb.reserve(distances.size());
                for (std::size_t t = 0; t < a; ++t) {
                    const auto& e = archive[t];
                    nb.push_back({distances[t], e.elite ? e.elite->evaluation.fitness : -std::numeric_limits<double>::infinity()});
                }
                for (std::size_t j = 0, t = a; j < n; ++j)
                    if (j != i)
                        nb.push_back({distances[t++], population[j].fitness});
            }
            s.novelty[i] = mean_of_k_smallest(distances, cfg.k);
        }

        if (!cfg.local_competition) {
            s.selection = s.novelty;
            return s;
        }

        const auto ranks = rank_normalize(s.novelty);
        s.selection.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto& nb = neighbors[i];
            const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(cfg.k), nb.size());
            std::stable_sort(nb.begin(), nb.end(), [](const Neighbor& x, const Neighbor& y) { return x.distance < y.distance; });
            std::size_t beaten = 0;
            for (std::size_t t = 0; t < m; ++t)
                if (population[i].fitness > nb[t].fitness)
                    ++beaten;
            const double quality = m > 0 ? static_cast<double>(beaten) / static_cast<double>(m) : 0.;
            s.selection[i] = cfg.blend_weight * ranks[i] + (1. - cfg.blend_weight) * quality;
        }
        return s;
    }

    NoveltyResult run_novelty_search(const DomainSpec& domain, const NsConfig& ns, const VariationConfig& variation, const EngineConfig& cfg, Archive* observer)
    {
        check_engine(cfg);
        check_observer(domain, observer);
        if (ns.pop_size < 2 || ns.k < 1 || ns.tournament_size < 1 || ns.blend_weight < 0. || ns.blend_weight > 1.)
            throw InvalidInput("novelty_search: need pop_size >= 2, k >= 1, tournament_size >= 1, blend_weight in [0, 1]");

        NoveltyResult result{NoveltyArchive(ns.rho, ns.k), std::nullopt, {}};
        Tracker tracker{domain, observer, std::nullopt, {}};
        if (cfg.budget == 0)
            return result;
        const auto pop_size = static_cast<std::size_t>(ns.pop_size);
        if (cfg.budget < pop_size)
            throw InvalidInput("novelty_search: budget " + std::to_string(cfg.budget) + " is below pop_size " + std::to_string(pop_size));

        std::size_t evals = 0;
        std::uint64_t counter = 0;
        std::vector<Genome> population = random_genomes(domain, pop_size, cfg.seed, counter, cfg.workers);
        counter += pop_size;

        while (true) {
            const auto results = evaluate_all(domain, population, cfg.workers);
            evals += population.size();
            tracker.observe(population, results);

            const NsScores scores = score_population(results, result.archive, ns);
            for (std::size_t i = 0; i < population.size(); ++i)
                result.archive.update(results[i].descriptor, scores.novelty[i], Elite{population[i], results[i]});
            tracker.record(evals);
            if (evals >= cfg.budget)
                break;

            const std::size_t m = std::min(pop_size, cfg.budget - evals);
            std::vector<Genome> offspring(m);
            parallel_for(m, cfg.workers, [&](std::size_t j) {
                Rng rng = Rng::substream(cfg.seed, counter + j);
                const std::size_t a = tournament_select(scores.selection, ns.tournament_size, rng);
                const std::size_t b = tournament_select(scores.selection, ns.tournament_size, rng);
                offspring[j] = vary(domain, population[a], population[b], variation, rng);
            });
            counter += m;
            population = std::move(offspring);
        }

        result.best = std::move(tracker.best);
        result.log = std::move(tracker.log);
        return result;
    }

    GaResult run_objective_ga(const DomainSpec& domain, const GaConfig& ga, const VariationConfig& variation, const EngineConfig& cfg, Archive* observer)
    {
        check_engine(cfg);
        check_observer(domain, observer);
        if (ga.pop_size < 2 || ga.tournament_size < 1 || ga.elite_keep < 0 || ga.elite_keep >= ga.pop_size)
            throw InvalidInput("objective_ga: need pop_size >= 2, tournament_size >= 1, 0 <= elite_keep < pop_size");

        Tracker tracker{domain, observer, std::nullopt, {}};
        if (cfg.budget == 0)
            return {};
        const auto pop_size = static_cast<std::size_t>(ga.pop_size);
        if (cfg.budget < pop_size)
            throw InvalidInput("objective_ga: budget " + std::to_string(cfg.budget) + " is below pop_size " + std::to_string(pop_size));

        std::uint64_t counter = 0;
        std::vector<Genome> population = random_genomes(domain, pop_size, cfg.seed, counter, cfg.workers);
        counter += pop_size;
        std::vector<Evaluation> results = evaluate_all(domain, population, cfg.workers);
        std::size_t evals = population.size();
        tracker.observe(population, results);
        tracker.record(evals);

        const auto keep = static_cast<std::size_t>(ga.elite_keep);
        while (evals < cfg.budget) {
            std::vector<double> fitness(results.size());
            for (std::size_t i = 0; i < results.size(); ++i)
                fitness[i] = results[i].fitness;
            std::vector<std::size_t> order(results.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });

            const std::size_t m = std::min(pop_size - keep, cfg.budget - evals);
            std::vector<Genome> offspring(m);
            parallel_for(m, cfg.workers, [&](std::size_t j) {
                Rng rng = Rng::substream(cfg.seed, counter + j);
                const std::size_t a = tournament_select(fitness, ga.tournament_size, rng);
                const std::size_t b = tournament_select(fitness, ga.tournament_size, rng);
                offspring[j] = vary(domain, population[a], population[b], variation, rng);
            });
            counter += m;
            const auto offspring_results = evaluate_all(domain, offspring, cfg.workers);
            evals += m;
            tracker.observe(offspring, offspring_results);

            std::vector<Genome> next_pop;
            std::vector<Evaluation> next_results;
            next_pop.reserve(keep + m);
            next_results.reserve(keep + m);
            for (std::size_t t = 0; t < keep && t < order.size(); ++t) {
                next_pop.push_back(std::move(population[order[t]]));
                next_results.push_back(results[order[t]]);
            }
            for (std::size_t j = 0; j < m; ++j) {
                next_pop.push_back(std::move(offspring[j]));
                next_results.push_back(offspring_results[j]);
            }
            population = std::move(next_pop);
            results = std::move(next_results);
            tracker.record(evals);
        }
        return {std::move(tracker.best), std::move(tracker.log)};
    }

} // namespace qdlab
