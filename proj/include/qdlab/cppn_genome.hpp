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

#ifndef QDLAB_CPPN_GENOME_HPP
#define QDLAB_CPPN_GENOME_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qdlab {

    enum class Activation { linear, sine, gaussian, sigmoid, absolute };

    inline constexpr Activation all_activations[] = {Activation::linear, Activation::sine, Activation::gaussian, Activation::sigmoid, Activation::absolute};

    std::string_view to_string(Activation a);
    std::optional<Activation> activation_from_string(std::string_view s);

    enum class NodeKind { input, hidden, output };

    struct CppnNode {
        int id = 0;
        NodeKind kind = NodeKind::hidden;
        Activation activation = Activation::linear;

        bool operator==(const CppnNode&) const = default;
    };

    struct CppnEdge {
        int src = 0;
        int dst = 0;
        double weight = 0.;

        bool operator==(const CppnEdge&) const = default;
    };

    /// Feed-forward function-composition graph queried once per pixel.
    ///
    /// `nodes` is kept in a topological order: the four inputs (x, y, r, bias)
    /// come first with ids 0..3, the single output node (id 4) comes last, and
    /// every edge goes from an earlier node to a later one.
    struct CppnGenome {
        static constexpr int input_x = 0;
        static constexpr int input_y = 1;
        static constexpr int input_r = 2;
        static constexpr int input_bias = 3;
        static constexpr int num_inputs = 4;
        static constexpr int output_id = 4;
        static constexpr double weight_limit = 3.;

        std::vector<CppnNode> nodes;
        std::vector<CppnEdge> edges;
        int next_id = output_id + 1;

        /// Inputs plus one output node with the given activation, no edges.
        static CppnGenome minimal(Activation output_activation = Activation::linear);

        /// Position of node `id` in `nodes`, or -1.
        int position(int id) const;
        bool has_edge(int src, int dst) const;

        bool operator==(const CppnGenome&) const = default;
    };

    /// Structural validation: unique ids, inputs first, exactly one output,
    /// edges reference known nodes, never enter an input or leave the output,
    /// finite weights inside [-3, 3], and the edge set is acyclic (checked with
    /// Kahn's algorithm, independently of the stored order) with the stored
    /// order consistent with it. Returns an empty string when valid.
    std::string validate(const CppnGenome& genome);

} // namespace qdlab

#endif
