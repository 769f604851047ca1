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

#ifndef QDLAB_DOMAINS_MAZE_HPP
#define QDLAB_DOMAINS_MAZE_HPP

#include <Eigen/Core>

#include <optional>
#include <vector>

#include <qdlab/domain.hpp>

namespace qdlab {

    /// Deceptive point maze: a wall blocks the straight line from start to goal,
    /// leaving a gap on the left.
    struct MazeWorld {
        Eigen::Vector2d start{0.5, 0.1};
        Eigen::Vector2d goal{0.5, 0.95};
        Eigen::Vector2d wall_a{0.2, 0.5};
        Eigen::Vector2d wall_b{1.0, 0.5};
        double step = 0.05;
        int horizon = 20;
        double standoff = 1e-6;

        int genome_length() const { return 2 * horizon; }
    };

    /// Parameter t in [0, 1] along p->q of the first point of the segment that
    /// touches [a, b], or nullopt when they do not touch. Collinear overlaps
    /// report the first overlapping point.
    std::optional<double> segment_hit(const Eigen::Vector2d& p, const Eigen::Vector2d& q, const Eigen::Vector2d& a, const Eigen::Vector2d& b);

    /// Positions visited, start included (horizon + 1 points). Each step moves
    /// by step * (u_t, v_t) with commands clamped to [-1, 1], the destination
    /// clamped to the unit square; a move that would touch the wall stops
    /// `standoff` short of the contact point.
    std::vector<Eigen::Vector2d> maze_trajectory(const RealVector& commands, const MazeWorld& world);

    /// fitness = -|final - goal| in [-sqrt(2), 0]; descriptor = final position.
    Evaluation maze_evaluate(const RealVector& commands, const MazeWorld& world);

    DomainSpec make_maze_domain(const MazeWorld& world = {});

} // namespace qdlab

#endif
