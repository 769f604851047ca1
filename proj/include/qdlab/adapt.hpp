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

#ifndef QDLAB_ADAPT_HPP
#define QDLAB_ADAPT_HPP

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <vector>

#include <qdlab/archive.hpp>
#include <qdlab/domains/arm.hpp>
#include <qdlab/gp.hpp>

namespace qdlab {

    struct AdaptConfig {
        double ucb_beta = 0.5;
        int max_trials = 20;
        double success_eps = 0.02; // arm-length units
        Eigen::Vector2d target{0.5, 0.3};
        GaussianProcess<double>::Params gp;
    };

    struct TrialRow {
        int trial = 0;
        std::size_t niche = 0;
        double prior_mean = 0.;
        double posterior_mean = 0.; // at selection time
        double posterior_sd = 0.;
        double observed = 0.;
    };

    struct AdaptResult {
        std::size_t best_niche = 0;
        Elite best;
        double best_objective = 0.;
        bool converged = false;
        std::vector<TrialRow> trials;
    };

    using ObjectiveFn = std::function<double(const Genome&)>;
    using PriorMeanFn = std::function<double(const Descriptor&)>;

    /// Repertoire-based trial and error: a GP over elite descriptors, with the
    /// map-derived prior mean, picks the untested niche maximizing
    /// mean + beta * sd (ties: lowest niche), tests its elite on the real
    /// (damaged) system and conditions on the outcome. Stops once an objective
    /// >= -success_eps is observed, after max_trials, or when every niche has
    /// been tested.
    AdaptResult run_adaptation(const Archive& archive, const ObjectiveFn& damaged_objective, const PriorMeanFn& prior_mean, const AdaptConfig& cfg);

    /// -|end-effector under damage - target|. No damage: the intact arm.
    ObjectiveFn arm_reach_objective(const ArmParams& params, std::optional<DamageSpec> damage, const Eigen::Vector2d& target);

    /// -|undamaged end-effector encoded by the descriptor - target|.
    PriorMeanFn arm_reach_prior(const ArmParams& params, const Eigen::Vector2d& target);

    /// Trials a uniformly random testing order needs to hit the success
    /// threshold; nullopt if no niche succeeds.
    std::optional<int> random_order_trials(const Archive& archive, const ObjectiveFn& objective, double success_eps, std::uint64_t seed);

} // namespace qdlab

#endif
