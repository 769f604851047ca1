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

#include <qdlab/domains/arm.hpp>

#include <cmath>
#include <numbers>

#include <qdlab/errors.hpp>

namespace qdlab {

    namespace {
        void check_length(const RealVector& theta, const ArmParams& params)
        {
            if (theta.size() != params.n_joints)
                throw InvalidInput("arm: expected " + std::to_string(params.n_joints) + " joint angles, got " + std::to_string(theta.size()));
        }
    } // namespace

    Eigen::Vector2d arm_forward_kinematics(const RealVector& theta, const ArmParams& params)
    {
        check_length(theta, params);
        const double l = params.link_length();
        Eigen::Vector2d p = Eigen::Vector2d::Zero();
        double phi = 0.;
        for (Eigen::Index i = 0; i < theta.size(); ++i) {
            phi += theta(i);
            p.x() += l * std::cos(phi);
            p.y() += l * std::sin(phi);
        }
        return p;
    }

    Eigen::Vector2d arm_damaged_position(const RealVector& theta, const ArmParams& params, const DamageSpec& damage)
    {
        check_length(theta, params);
        if (damage.locked_joint < 0 || damage.locked_joint >= params.n_joints)
            throw InvalidInput("arm: locked joint " + std::to_string(damage.locked_joint) + " out of range");
        RealVector realized = theta;
        realized(damage.locked_joint) = damage.locked_angle;
        return arm_forward_kinematics(realized, params);
    }

    double joint_variance(const RealVector& theta)
    {
        const Eigen::Index n = theta.size();
        double s = 0.;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j)
                s += (theta(i) - theta(j)) * (theta(i) - theta(j));
        return s / static_cast<double>(n * n);
    }

    Evaluation arm_evaluate(const RealVector& theta, const ArmParams& params)
    {
        const Eigen::Vector2d p = arm_forward_kinematics(theta, params);
        const double reach = params.reach();
        constexpr double pi2 = std::numbers::pi * std::numbers::pi;
        Evaluation e;
        e.fitness = std::clamp(-joint_variance(theta), -pi2, 0.);
        e.descriptor = ((p.array() + reach) / (2. * reach)).cwiseMax(0.).cwiseMin(1.).matrix();
        return e;
    }

    Eigen::Vector2d arm_descriptor_to_position(const Descriptor& d, const ArmParams& params)
    {
        return (2. * d.array() - 1.).matrix() * params.reach();
    }

    DomainSpec make_arm_domain(const ArmParams& params)
    {
        if (params.n_joints < 1)
            throw InvalidInput("arm: need at least one joint");
        DomainSpec d;
        d.name = "arm";
        d.genome_kind = GenomeKind::real_vector;
        d.gene_bounds = Bounds::uniform(params.n_joints, -std::numbers::pi, std::numbers::pi);
        d.descriptor_bounds = Bounds::unit(2);
        d.fitness_bounds = {-std::numbers::pi * std::numbers::pi, 0.};
        d.evaluate = [params](const Genome& g) {
            const auto* v = std::get_if<RealVector>(&g);
            if (!v)
                throw InvalidInput("arm: expected a real-vector genome");
            return arm_evaluate(*v, params);
        };
        const Bounds genes = d.gene_bounds;
        d.random_genome = [genes](Rng& rng) -> Genome { return random_real_vector(genes, rng); };
        return d;
    }

} // namespace qdlab
