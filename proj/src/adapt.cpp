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

#include <qdlab/adapt.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <qdlab/errors.hpp>
#include <qdlab/rng.hpp>

namespace qdlab {

    AdaptResult run_adaptation(const Archive& archive, const ObjectiveFn& damaged_objective, const PriorMeanFn& prior_mean, const AdaptConfig& cfg)
    {
        if (archive.empty())
            throw InvalidInput("adaptation: archive is empty");
        if (cfg.max_trials < 1)
            throw InvalidInput("adaptation: max_trials must be >= 1");

        const std::vector<std::size_t> niches = archive.filled_sorted();
        const auto n = static_cast<Eigen::Index>(niches.size());
        const Eigen::Index d = archive.descriptor_dim();

        Matrix descriptors(n, d);
        Vector prior(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Descriptor& desc = archive.find(niches[static_cast<std::size_t>(i)])->evaluation.descriptor;
            descriptors.row(i) = desc.transpose();
            prior(i) = prior_mean(desc);
        }

        GaussianProcess<double> gp(cfg.gp, [&prior_mean](const Vector& x) { return prior_mean(x); }, d);
        std::vector<bool> tested(static_cast<std::size_t>(n), false);

        AdaptResult result;
        bool have_best = false;
        for (int trial = 1; trial <= cfg.max_trials; ++trial) {
            const auto post = gp.posterior(descriptors);
            Eigen::Index pick = -1;
            double best_acq = -std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < n; ++i) {
                if (tested[static_cast<std::size_t>(i)])
                    continue;
                const double acq = post.mean(i) + cfg.ucb_beta * std::sqrt(post.variance(i));
                if (pick < 0 || acq > best_acq) {
                    best_acq = acq;
                    pick = i;
                }
            }
            if (pick < 0)
                break; // every niche tested

            const std::size_t niche = niches[static_cast<std::size_t>(pick)];
            const Elite& elite = *archive.find(niche);
            const double observed = damaged_objective(elite.genome);
            tested[static_cast<std::size_t>(pick)] = true;
            result.trials.push_back({trial, niche, prior(pick), post.mean(pick), std::sqrt(post.variance(pick)), observed});
            gp.add_sample(descriptors.row(pick).transpose(), observed);

            if (!have_best || observed > result.best_objective) {
                have_best = true;
                result.best_objective = observed;
                result.best_niche = niche;
                result.best = elite;
            }
            if (result.best_objective >= -cfg.success_eps) {
                result.converged = true;
                break;
            }
        }
        return result;
    }

    ObjectiveFn arm_reach_objective(const ArmParams& params, std::optional<DamageSpec> damage, const Eigen::Vector2d& target)
    {
        return [params, damage, target](const Genome& g) {
            const auto& theta = std::get<RealVector>(g);
            const Eigen::Vector2d p = damage ? arm_damaged_position(theta, params, *damage) : arm_forward_kinematics(theta, params);
            return -(p - target).norm();
        };
    }

    PriorMeanFn arm_reach_prior(const ArmParams& params, const Eigen::Vector2d& target)
    {
        return [params, target](const Descriptor& d) { return -(arm_descriptor_to_position(d, params) - target).norm(); };
    }

    std::optional<int> random_order_trials(const Archive& archive, const ObjectiveFn& objective, double success_eps, std::uint64_t seed)
    {
        std::vector<std::size_t> order = archive.filled_sorted();
        Rng rng(seed);
        std::shuffle(order.begin(), order.end(), rng.engine());
        for (std::size_t i = 0; i < order.size(); ++i)
            if (objective(archive.find(order[i])->genome) >= -success_eps)
                return static_cast<int>(i + 1);
        return std::nullopt;
    }

} // namespace qdlab
