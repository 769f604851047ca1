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

#include <qdlab/domains/maze.hpp>

#include <cmath>

#include <qdlab/errors.hpp>

namespace qdlab {

    namespace {
        double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }
    } // namespace

    std::optional<double> segment_hit(const Eigen::Vector2d& p, const Eigen::Vector2d& q, const Eigen::Vector2d& a, const Eigen::Vector2d& b)
    {
        const Eigen::Vector2d r = q - p;
        const Eigen::Vector2d s = b - a;
        const Eigen::Vector2d ap = a - p;
        const double rr = r.squaredNorm();
        if (rr == 0.)
            return std::nullopt;
        const double denom = cross(r, s);
        if (denom != 0.) {
            const double t = cross(ap, s) / denom;
            const double u = cross(ap, r) / denom;
            if (t >= 0. && t <= 1. && u >= 0. && u <= 1.)
                return t;
            return std::nullopt;
        }
        if (cross(ap, r) != 0.)
            return std::nullopt; // parallel, disjoint lines
        double t0 = ap.dot(r) / rr;
        double t1 = (b - p).dot(r) / rr;
        if (t0 > t1)
            std::swap(t0, t1);
        if (t1 < 0. || t0 > 1.)
            return std::nullopt;
        return std::max(0., t0);
    }

    std::vector<Eigen::Vector2d> maze_trajectory(const RealVector& commands, const MazeWorld& world)
    {
        if (commands.size() != world.genome_length())
            throw InvalidInput("maze: expected " + std::to_string(world.genome_length()) + " commands, got " + std::to_string(commands.size()));
        std::vector<Eigen::Vector2d> path;
        path.reserve(static_cast<std::size_t>(world.horizon) + 1);
        Eigen::Vector2d pos = world.start;
        path.push_back(pos);
        for (int t = 0; t < world.horizon; ++t) {
            const Eigen::Vector2d u(std::clamp(commands(2 * t), -1., 1.), std::clamp(commands(2 * t + 1), -1., 1.));
            // Clamp first: the wall ends on the boundary, so a move that leaves
            // the square could otherwise slip around its end.
            Eigen::Vector2d next = (pos + world.step * u).cwiseMax(0.).cwiseMin(1.);
            if (const auto hit = segment_hit(pos, next, world.wall_a, world.wall_b)) {
                const double len = (next - pos).norm();
                const double frac = std::max(0., *hit - world.standoff / len);
                next = pos + frac * (next - pos);
            }
            pos = next;
            path.push_back(pos);
        }
        return path;
    }

    Evaluation maze_evaluate(const RealVector& commands, const MazeWorld& world)
    {
        const Eigen::Vector2d final_pos = maze_trajectory(commands, world).back();
        Evaluation e;
        e.fitness = std::clamp(-(final_pos - world.goal).norm(), -std::sqrt(2.), 0.);
        e.descriptor = final_pos;
        return e;
    }

    DomainSpec make_maze_domain(const MazeWorld& world)
    {
        DomainSpec d;
        d.name = "maze";
        d.genome_kind = GenomeKind::real_vector;
        d.gene_bounds = Bounds::uniform(world.genome_length(), -1., 1.);
        d.descriptor_bounds = Bounds::unit(2);
        d.fitness_bounds = {-std::sqrt(2.), 0.};
        d.evaluate = [world](const Genome& g) {
            const auto* v = std::get_if<RealVector>(&g);
            if (!v)
                throw InvalidInput("maze: expected a real-vector genome");
            return maze_evaluate(*v, world);
        };
        const Bounds genes = d.gene_bounds;
        d.random_genome = [genes](Rng& rng) -> Genome { return random_real_vector(genes, rng); };
        return d;
    }

} // namespace qdlab
