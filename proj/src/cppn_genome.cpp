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

#include <qdlab/cppn_genome.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace qdlab {

    std::string_view to_string(Activation a)
    {
        switch (a) {
        case Activation::linear: return "linear";
        case Activation::sine: return "sine";
        case Activation::gaussian: return "gaussian";
        case Activation::sigmoid: return "sigmoid";
        case Activation::absolute: return "absolute";
        }
        return "linear";
    }

    std::optional<Activation> activation_from_string(std::string_view s)
    {
        for (Activation a : all_activations)
            if (to_string(a) == s)
                return a;
        return std::nullopt;
    }

    CppnGenome CppnGenome::minimal(Activation output_activation)
    {
        CppnGenome g;
        for (int i = 0; i < num_inputs; ++i)
            g.nodes.push_back({i, NodeKind::input, Activation::linear});
        g.nodes.push_back({output_id, NodeKind::output, output_activation});
        return g;
    }

    int CppnGenome::position(int id) const
    {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].id == id)
                return static_cast<int>(i);
        return -1;
    }

    bool CppnGenome::has_edge(int src, int dst) const
    {
        return std::any_of(edges.begin(), edges.end(), [&](const CppnEdge& e) { return e.src == src && e.dst == dst; });
    }

    std::string validate(const CppnGenome& genome)
    {
        const auto& nodes = genome.nodes;
        if (nodes.size() < CppnGenome::num_inputs + 1)
            return "too few nodes";
        std::unordered_map<int, std::size_t> pos;
        int outputs = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!pos.emplace(nodes[i].id, i).second)
                return "duplicate node id " + std::to_string(nodes[i].id);
            if (nodes[i].id >= genome.next_id)
                return "node id " + std::to_string(nodes[i].id) + " not below next_id";
            const bool should_be_input = i < CppnGenome::num_inputs;
            if (should_be_input != (nodes[i].kind == NodeKind::input))
                return "inputs must be exactly the first four nodes";
            if (should_be_input && nodes[i].id != static_cast<int>(i))
                return "input ids must be 0..3";
            if (nodes[i].kind == NodeKind::output) {
                ++outputs;
                if (nodes[i].id != CppnGenome::output_id)
                    return "output node must have id 4";
            }
        }
        if (outputs != 1)
            return "expected exactly one output node, found " + std::to_string(outputs);

        std::unordered_map<int, int> indegree;
        std::unordered_map<int, std::vector<int>> out_edges;
        std::unordered_set<long long> seen;
        for (const auto& e : genome.edges) {
            auto s = pos.find(e.src);
            auto d = pos.find(e.dst);
            if (s == pos.end() || d == pos.end())
                return "edge references unknown node";
            if (nodes[d->second].kind == NodeKind::input)
                return "edge into an input node";
            if (nodes[s->second].kind == NodeKind::output)
                return "edge out of the output node";
            if (!std::isfinite(e.weight) || std::abs(e.weight) > CppnGenome::weight_limit)
                return "weight out of range";
            if (!seen.insert((static_cast<long long>(e.src) << 32) | static_cast<unsigned>(e.dst)).second)
                return "duplicate edge";
            if (s->second >= d->second)
                return "stored node order is not topological";
            ++indegree[e.dst];
            out_edges[e.src].push_back(e.dst);
        }

        // Kahn's algorithm on the edge set alone.
        std::vector<int> ready;
        for (const auto& n : nodes)
            if (indegree[n.id] == 0)
                ready.push_back(n.id);
        std::size_t visited = 0;
        while (!ready.empty()) {
            const int id = ready.back();
            ready.pop_back();
            ++visited;
            for (int dst : out_edges[id])
                if (--indegree[dst] == 0)
                    ready.push_back(dst);
        }
        if (visited != nodes.size())
            return "graph has a cycle";
        return {};
    }

} // namespace qdlab
