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

#ifndef QDLAB_TYPES_HPP
#define QDLAB_TYPES_HPP

#include <Eigen/Core>

#include <variant>

#include <qdlab/cppn_genome.hpp>

namespace qdlab {

    using Vector = Eigen::VectorXd;
    using Matrix = Eigen::MatrixXd;

    /// Behavioral descriptor: where a solution sits in behavior space.
    using Descriptor = Eigen::VectorXd;

    using RealVector = Eigen::VectorXd;
    using Genome = std::variant<RealVector, CppnGenome>;

    enum class GenomeKind { real_vector, cppn };

    inline GenomeKind kind_of(const Genome& g) { return std::holds_alternative<RealVector>(g) ? GenomeKind::real_vector : GenomeKind::cppn; }

    /// Fitness follows the maximization convention.
    struct Evaluation {
        double fitness = 0.;
        Descriptor descriptor;
    };

    struct Elite {
        Genome genome;
        Evaluation evaluation;
    };

    /// Per-dimension closed box [lo_i, hi_i].
    struct Bounds {
        Vector lo;
        Vector hi;

        Eigen::Index size() const { return lo.size(); }
        static Bounds unit(Eigen::Index d) { return {Vector::Zero(d), Vector::Ones(d)}; }
        static Bounds uniform(Eigen::Index d, double lo, double hi) { return {Vector::Constant(d, lo), Vector::Constant(d, hi)}; }
    };

    struct FitnessBounds {
        double min = 0.;
        double max = 1.;
    };

} // namespace qdlab

#endif
