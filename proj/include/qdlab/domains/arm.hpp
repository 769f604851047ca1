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

#ifndef QDLAB_DOMAINS_ARM_HPP
#define QDLAB_DOMAINS_ARM_HPP

#include <Eigen/Core>

#include <optional>

#include <qdlab/domain.hpp>

namespace qdlab {

    /// Planar arm with uniform links of total length 1 and joints in [-pi, pi].
    struct ArmParams {
        int n_joints = 7;

        double link_length() const { return 1. / n_joints; }
        double reach() const { return 1.; }
    };

    /// A joint held at a fixed angle whatever the controller commands.
    struct DamageSpec {
        int locked_joint = 3;
        double locked_angle = 0.;
    };

    /// End-effector position; each link's absolute angle is the running sum of joint angles.
    Eigen::Vector2d arm_forward_kinematics(const RealVector& theta, const ArmParams& params);

    /// Same as forward kinematics with the locked joint overridden.
    Eigen::Vector2d arm_damaged_position(const RealVector& theta, const ArmParams& params, const DamageSpec& damage);

    /// Population variance of the joint angles, computed from pairwise
    /// differences so a constant vector gives exactly zero.
    double joint_variance(const RealVector& theta);

    /// fitness = -variance(theta) in [-pi^2, 0]; descriptor = end-effector mapped into [0, 1]^2.
    Evaluation arm_evaluate(const RealVector& theta, const ArmParams& params);

    /// Descriptor in [0, 1]^2 back to the plane.
    Eigen::Vector2d arm_descriptor_to_position(const Descriptor& d, const ArmParams& params);

    DomainSpec make_arm_domain(const ArmParams& params = {});

} // namespace qdlab

#endif
