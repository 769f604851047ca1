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

#include <doctest.h>

#include <atomic>
#include <map>
#include <memory>

#include <qdlab/archive_io.hpp>
#include <qdlab/domains/sphere.hpp>
#include <qdlab/engines.hpp>
#include <qdlab/errors.hpp>

using namespace qdlab;

namespace {

    Archive sphere_grid() { return Archive::grid(Bounds::unit(2), {10, 10}); }

    EngineConfig small_run(std::size_t budget, unsigned workers = 1)
    {
        EngineConfig cfg;
        cfg.budget = budget;
        cfg.batch = 50;
        cfg.init_count = 100;
        cfg.seed = 5;
        cfg.workers = workers;
        return cfg;
    }

    bool inside(const Genome& g, const Bounds& b)
    {
        const auto& v = std::get<RealVector>(g);
        return (v.array() >= b.lo.array()).all() && (v.array() <= b.hi.array()).all();
    }

} // namespace

TEST_SUITE("engines")
{
    TEST_CASE("budget equal to the bootstrap")
    {
        const DomainSpec d = make_sphere_domain(4);
        Archive a = sphere_grid();
        const MetricsLog log = run_map_elites(d, a, VariationConfig{}, small_run(100));
        REQUIRE(log.size() == 1);
        CHECK(log[0].evals == 100);
        CHECK(a.size() <= 100);
        CHECK(a.size() > 0);
        Archive fresh = sphere_grid();
        CHECK_THROWS_AS(run_map_elites(d, fresh, VariationConfig{}, small_run(50)), InvalidInput);
    }

    TEST_CASE("map-elites metrics are monotone and account for every evaluation")
    {
        DomainSpec d = make_sphere_domain(6);
        auto count = std::make_shared<std::atomic<std::size_t>>(0);
        d.evaluate = [count, inner = d.evaluate](const Genome& g) {
            ++*count;
            return inner(g);
        };
        Archive a = sphere_grid();
        const MetricsLog log = run_map_elites(d, a, VariationConfig{}, small_run(1234, 3));
        CHECK(count->load() == 1234);
        CHECK(log.back().evals == 1234);
        for (std::size_t i = 1; i < log.size(); ++i) {
            CHECK(log[i].evals > log[i - 1].evals);
            CHECK(log[i].coverage >= log[i - 1].coverage);
            CHECK(log[i].qd_score >= log[i - 1].qd_score);
            CHECK(log[i].best_fitness >= log[i - 1].best_fitness);
        }
        for (std::size_t n : a.filled())
            CHECK(inside(a.find(n)->genome, d.gene_bounds));
        CHECK(a.size() > 80);
    }

    TEST_CASE("results do not depend on the worker count")
    {
        const DomainSpec d = make_sphere_domain(5);
        Archive a1 = sphere_grid(), a4 = sphere_grid();
        const MetricsLog l1 = run_map_elites(d, a1, VariationConfig{}, small_run(2000, 1));
        const MetricsLog l4 = run_map_elites(d, a4, VariationConfig{}, small_run(2000, 4));
        CHECK(archive_csv(a1, GenomeKind::real_vector) == archive_csv(a4, GenomeKind::real_vector));
        CHECK(metrics_csv(l1) == metrics_csv(l4));

        NsConfig ns;
        ns.pop_size = 50;
        const auto n1 = run_novelty_search(d, ns, VariationConfig{}, small_run(1000, 1));
        const auto n4 = run_novelty_search(d, ns, VariationConfig{}, small_run(1000, 4));
        CHECK(metrics_csv(n1.log) == metrics_csv(n4.log));
        CHECK(novelty_archive_csv(n1.archive) == novelty_archive_csv(n4.archive));

        GaConfig ga;
        ga.pop_size = 50;
        const auto g1 = run_objective_ga(d, ga, VariationConfig{}, small_run(1000, 1));
        const auto g4 = run_objective_ga(d, ga, VariationConfig{}, small_run(1000, 4));
        CHECK(metrics_csv(g1.log) == metrics_csv(g4.log));
    }

    TEST_CASE("identical behaviors get identical novelty")
    {
        std::vector<Evaluation> pop(20, Evaluation{-1., Eigen::Vector2d(0.3, 0.6)});
        NoveltyArchive archive(0.05, 5);
        const NsScores s = score_population(pop, archive, NsConfig{});
        for (double v : s.novelty)
            CHECK(v == s.novelty[0]);
        CHECK(s.selection == s.novelty);
    }

    TEST_CASE("tournaments over tied scores pick uniformly")
    {
        Rng rng(3);
        const std::vector<double> scores(10, 0.25);
        std::map<std::size_t, int> hits;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
            ++hits[tournament_select(scores, 3, rng)];
        REQUIRE(hits.size() == 10);
        for (const auto& [idx, c] : hits)
            CHECK(std::abs(c - n / 10) < n / 100);
    }

    TEST_CASE("tournament prefers the best contestant")
    {
        Rng rng(4);
        const std::vector<double> scores{0., 1., 2., 3.};
        CHECK(tournament_select(scores, 64, rng) == 3);
    }

    TEST_CASE("rank normalization")
    {
        const std::vector<double> v{3., 1., 2., 2.};
        const auto r = rank_normalize(v);
        CHECK(r[0] == 1.);
        CHECK(r[1] == 0.);
        CHECK(r[2] == doctest::Approx(0.5));
        CHECK(r[3] == r[2]);
        CHECK(rank_normalize(std::vector<double>{7.}) == std::vector<double>{1.});
    }

    TEST_CASE("local competition blends novelty rank with neighbor wins")
    {
        std::vector<Evaluation> pop;
        for (int i = 0; i < 6; ++i)
            pop.push_back({double(i), Eigen::Vector2d(0.1 * i, 0.)});
        NoveltyArchive archive(0.05, 3);
        NsConfig cfg;
        cfg.k = 3;
        cfg.local_competition = true;
        cfg.blend_weight = 1.;
        const NsScores pure = score_population(pop, archive, cfg);
        CHECK(pure.selection == rank_normalize(pure.novelty));
        cfg.blend_weight = 0.;
        const NsScores lc = score_population(pop, archive, cfg);
        // The fittest individual beats every neighbor, the least fit none.
        CHECK(lc.selection[5] == 1.);
        CHECK(lc.selection[0] == 0.);
    }

    TEST_CASE("novelty search best fitness is monotone and the archive grows")
    {
        const DomainSpec d = make_sphere_domain(4);
        NsConfig ns;
        ns.pop_size = 40;
        Archive observer = sphere_grid();
        const auto r = run_novelty_search(d, ns, VariationConfig{}, small_run(2000), &observer);
        REQUIRE(r.best);
        CHECK(r.log.back().evals == 2000);
        for (std::size_t i = 1; i < r.log.size(); ++i) {
            CHECK(r.log[i].best_fitness >= r.log[i - 1].best_fitness);
            CHECK(r.log[i].coverage >= r.log[i - 1].coverage);
        }
        CHECK(r.archive.size() > 10);
        CHECK(observer.size() > 50);
        CHECK(r.best->evaluation.fitness == r.log.back().best_fitness);
    }

    TEST_CASE("objective GA with budget equal to the population returns the best initial individual")
    {
        const DomainSpec d = make_sphere_domain(4);
        GaConfig ga;
        ga.pop_size = 60;
        EngineConfig cfg = small_run(60);
        const auto r = run_objective_ga(d, ga, VariationConfig{}, cfg);
        REQUIRE(r.log.size() == 1);
        REQUIRE(r.best);
        CHECK(r.best->evaluation.fitness == r.log[0].best_fitness);
        CHECK(d.evaluate(r.best->genome).fitness == r.best->evaluation.fitness);

        // Rebuild the initial population independently and compare.
        double best = -1e300;
        for (std::size_t i = 0; i < 60; ++i) {
            Rng rng = Rng::substream(cfg.seed, i);
            best = std::max(best, d.evaluate(d.random_genome(rng)).fitness);
        }
        CHECK(r.best->evaluation.fitness == best);
    }

    TEST_CASE("objective GA converges on the sphere")
    {
        const DomainSpec d = make_sphere_domain(10);
        EngineConfig cfg;
        cfg.budget = 20000;
        cfg.seed = 11;
        const auto r = run_objective_ga(d, GaConfig{}, VariationConfig{}, cfg);
        REQUIRE(r.best);
        CHECK(r.best->evaluation.fitness > -1e-3);
    }
}
