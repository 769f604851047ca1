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

#include <numbers>
#include <set>

#include <qdlab/adapt.hpp>
#include <qdlab/errors.hpp>

using namespace qdlab;

namespace {

    // Random joint vectors dropped into a 40x40 grid over the arm descriptor square.
    Archive dense_arm_archive(std::uint64_t seed, int samples = 60000)
    {
        const ArmParams params;
        Archive a = Archive::grid(Bounds::unit(2), {40, 40});
        Rng rng(seed);
        for (int s = 0; s < samples; ++s) {
            RealVector theta(7);
            for (int i = 0; i < 7; ++i)
                theta(i) = rng.uniform(-std::numbers::pi, std::numbers::pi) * 0.6;
            a.try_insert({theta, arm_evaluate(theta, params)});
        }
        return a;
    }

} // namespace

TEST_SUITE("adapt")
{
    TEST_CASE("undamaged: the first trial is the niche nearest the target")
    {
        const ArmParams params;
        const Archive a = dense_arm_archive(41);
        for (const Eigen::Vector2d t : {Eigen::Vector2d(0.5, 0.3), Eigen::Vector2d(-0.2, 0.6), Eigen::Vector2d(0.1, -0.7)}) {
            AdaptConfig cfg;
            cfg.target = t;
            const auto r = run_adaptation(a, arm_reach_objective(params, std::nullopt, t), arm_reach_prior(params, t), cfg);
            REQUIRE_FALSE(r.trials.empty());

            std::size_t nearest = 0;
            double best = 1e300;
            for (std::size_t n : a.filled_sorted()) {
                const double dist = (arm_forward_kinematics(std::get<RealVector>(a.find(n)->genome), params) - t).norm();
                if (dist < best) {
                    best = dist;
                    nearest = n;
                }
            }
            CHECK(r.trials[0].niche == nearest);
            if (best <= cfg.success_eps) {
                CHECK(r.converged);
                CHECK(r.trials.size() == 1);
            }
        }
    }

    TEST_CASE("a single filled niche takes exactly one trial")
    {
        const ArmParams params;
        Archive a = Archive::grid(Bounds::unit(2), {10, 10});
        const RealVector theta = RealVector::Zero(7);
        a.try_insert({theta, arm_evaluate(theta, params)});
        const Eigen::Vector2d t(0., 0.5);
        const auto r = run_adaptation(a, arm_reach_objective(params, DamageSpec{}, t), arm_reach_prior(params, t), AdaptConfig{});
        CHECK(r.trials.size() == 1);
        CHECK_FALSE(r.converged);
        CHECK(std::get<RealVector>(r.best.genome) == theta);
        CHECK(r.best_objective == doctest::Approx(-(Eigen::Vector2d(1., 0.) - t).norm()));
    }

    TEST_CASE("no niche is tested twice and the best is the best observation")
    {
        const ArmParams params;
        const Archive a = dense_arm_archive(42, 5000);
        const Eigen::Vector2d t(0.3, 0.3);
        AdaptConfig cfg;
        cfg.success_eps = -1.; // unreachable: run to max_trials
        cfg.max_trials = 40;
        const auto r = run_adaptation(a, arm_reach_objective(params, DamageSpec{}, t), arm_reach_prior(params, t), cfg);
        CHECK(r.trials.size() == 40);
        CHECK_FALSE(r.converged);
        std::set<std::size_t> seen;
        double best = -1e300;
        for (const auto& row : r.trials) {
            CHECK(seen.insert(row.niche).second);
            best = std::max(best, row.observed);
        }
        CHECK(r.best_objective == best);
    }

    TEST_CASE("max_trials beyond the archive size stops when every niche is tested")
    {
        const ArmParams params;
        Archive a = Archive::grid(Bounds::unit(2), {10, 10});
        Rng rng(43);
        while (a.size() < 3) {
            RealVector theta(7);
            for (int i = 0; i < 7; ++i)
                theta(i) = rng.uniform(-1., 1.);
            a.try_insert({theta, arm_evaluate(theta, params)});
        }
        AdaptConfig cfg;
        cfg.success_eps = -1.;
        cfg.max_trials = 10;
        const Eigen::Vector2d t(0., 0.);
        const auto r = run_adaptation(a, arm_reach_objective(params, DamageSpec{}, t), arm_reach_prior(params, t), cfg);
        CHECK(r.trials.size() == a.size());
    }

    TEST_CASE("beta 0 starts at the prior maximum")
    {
        const ArmParams params;
        const Archive a = dense_arm_archive(44, 5000);
        const Eigen::Vector2d t(-0.4, -0.1);
        const auto prior = arm_reach_prior(params, t);
        AdaptConfig cfg;
        cfg.ucb_beta = 0.;
        const auto r = run_adaptation(a, arm_reach_objective(params, DamageSpec{}, t), prior, cfg);
        std::size_t arg = 0;
        double best = -1e300;
        for (std::size_t n : a.filled_sorted())
            if (const double p = prior(a.find(n)->evaluation.descriptor); p > best) {
                best = p;
                arg = n;
            }
        CHECK(r.trials[0].niche == arg);
        CHECK(r.trials[0].prior_mean == best);
    }

    TEST_CASE("empty archive is an error")
    {
        const Archive a = Archive::grid(Bounds::unit(2), {5, 5});
        const ArmParams params;
        const Eigen::Vector2d t(0., 0.);
        CHECK_THROWS_AS(run_adaptation(a, arm_reach_objective(params, std::nullopt, t), arm_reach_prior(params, t), AdaptConfig{}), InvalidInput);
    }

    TEST_CASE("random-order baseline")
    {
        const ArmParams params;
        const Archive a = dense_arm_archive(45, 5000);
        const Eigen::Vector2d t(0.2, 0.2);
        const auto obj = arm_reach_objective(params, std::nullopt, t);
        const auto n1 = random_order_trials(a, obj, 0.05, 1);
        CHECK(n1 == random_order_trials(a, obj, 0.05, 1));
        REQUIRE(n1);
        CHECK(*n1 >= 1);
        CHECK_FALSE(random_order_trials(a, obj, -1., 1));
    }
}
