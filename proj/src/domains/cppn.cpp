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

#include <qdlab/domains/cppn.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include <qdlab/errors.hpp>

namespace qdlab {

    double apply_activation(Activation a, double s)
    {
        switch (a) {
        case Activation::linear: return s;
        case Activation::sine: return std::sin(std::numbers::pi * s);
        case Activation::gaussian: return std::exp(-s * s / 2.);
        case Activation::sigmoid: return 1. / (1. + std::exp(-s));
        case Activation::absolute: return std::abs(s);
        }
        return s;
    }

    double cppn_coordinate(int i, int extent)
    {
        // The numerator is an exact integer, so mirrored pixels get exactly negated coordinates.
        return static_cast<double>(2 * i - (extent - 1)) / static_cast<double>(extent - 1);
    }

    namespace {
        /// Genome flattened to positions for repeated queries.
        struct CompiledCppn {
            struct Link {
                std::size_t src;
                double weight;
            };
            std::vector<Activation> activation;
            std::vector<std::vector<Link>> incoming;
            std::size_t output = 0;

            explicit CompiledCppn(const CppnGenome& g) : activation(g.nodes.size()), incoming(g.nodes.size())
            {
                for (std::size_t i = 0; i < g.nodes.size(); ++i) {
                    activation[i] = g.nodes[i].activation;
                    if (g.nodes[i].kind == NodeKind::output)
                        output = i;
                }
                // Edges in stored order keep the summation order fixed.
                for (const auto& e : g.edges) {
                    const int s = g.position(e.src);
                    const int d = g.position(e.dst);
                    if (s < 0 || d < 0)
                        throw InvalidInput("cppn: edge references unknown node");
                    incoming[static_cast<std::size_t>(d)].push_back({static_cast<std::size_t>(s), e.weight});
                }
            }

            double query(double x, double y, std::vector<double>& values) const
            {
                values.assign(activation.size(), 0.);
                values[CppnGenome::input_x] = x;
                values[CppnGenome::input_y] = y;
                values[CppnGenome::input_r] = std::sqrt(x * x + y * y);
                values[CppnGenome::input_bias] = 1.;
                for (std::size_t i = CppnGenome::num_inputs; i < activation.size(); ++i) {
                    double s = 0.;
                    for (const auto& l : incoming[i])
                        s += l.weight * values[l.src];
                    values[i] = apply_activation(activation[i], s);
                }
                return values[output];
            }
        };
    } // namespace

    double cppn_query(const CppnGenome& genome, double x, double y)
    {
        std::vector<double> values;
        return CompiledCppn(genome).query(x, y, values);
    }

    std::uint8_t quantize_output(double v)
    {
        const double s = apply_activation(Activation::sigmoid, v);
        const double q = std::floor(s * 255. + 0.5);
        return static_cast<std::uint8_t>(std::clamp(q, 0., 255.));
    }

    GrayImage cppn_render(const CppnGenome& genome, int width, int height)
    {
        if (width < 2 || height < 2)
            throw InvalidInput("cppn_render: width and height must be >= 2");
        const CompiledCppn net(genome);
        GrayImage img{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height)};
        std::vector<double> values;
        for (int j = 0; j < height; ++j) {
            const double y = cppn_coordinate(j, height);
            for (int i = 0; i < width; ++i)
                img.pixels[static_cast<std::size_t>(j) * width + i] = quantize_output(net.query(cppn_coordinate(i, width), y, values));
        }
        return img;
    }

    void cppn_add_node(CppnGenome& genome, std::size_t edge_index, Activation activation)
    {
        if (edge_index >= genome.edges.size())
            throw InvalidInput("cppn_add_node: no such edge");
        const CppnEdge old = genome.edges[edge_index];
        const int id = genome.next_id++;
        // Right after the source (and after the inputs) keeps the order
        // topological and the output last.
        const int pos = std::max(genome.position(old.src) + 1, CppnGenome::num_inputs);
        genome.nodes.insert(genome.nodes.begin() + pos, CppnNode{id, NodeKind::hidden, activation});
        genome.edges.erase(genome.edges.begin() + static_cast<std::ptrdiff_t>(edge_index));
        genome.edges.push_back({old.src, id, 1.});
        genome.edges.push_back({id, old.dst, old.weight});
    }

    namespace {
        Activation random_activation(Rng& rng)
        {
            return all_activations[rng.index(std::size(all_activations))];
        }

        double clamp_weight(double w) { return std::clamp(w, -CppnGenome::weight_limit, CppnGenome::weight_limit); }

        /// Adds a missing forward edge between two random nodes; false if the pick was not possible.
        bool add_random_connection(CppnGenome& g, Rng& rng)
        {
            std::vector<std::pair<int, int>> candidates;
            for (std::size_t a = 0; a < g.nodes.size(); ++a) {
                if (g.nodes[a].kind == NodeKind::output)
                    continue;
                for (std::size_t b = std::max<std::size_t>(a + 1, CppnGenome::num_inputs); b < g.nodes.size(); ++b)
                    if (!g.has_edge(g.nodes[a].id, g.nodes[b].id))
                        candidates.emplace_back(g.nodes[a].id, g.nodes[b].id);
            }
            if (candidates.empty())
                return false;
            const auto [src, dst] = candidates[rng.index(candidates.size())];
            g.edges.push_back({src, dst, rng.uniform(-CppnGenome::weight_limit, CppnGenome::weight_limit)});
            return true;
        }
    } // namespace

    CppnGenome cppn_mutate(const CppnGenome& genome, const CppnMutationRates& rates, Rng& rng)
    {
        CppnGenome g = genome;
        for (auto& e : g.edges) {
            const bool hit = rng.bernoulli(rates.weight_perturb);
            const double z = rng.normal();
            if (hit)
                e.weight = clamp_weight(e.weight + rates.weight_sigma * z);
        }
        if (rng.bernoulli(rates.add_connection))
            add_random_connection(g, rng);
        if (rng.bernoulli(rates.add_node) && !g.edges.empty()) {
            const std::size_t e = rng.index(g.edges.size());
            cppn_add_node(g, e, random_activation(rng));
        }
        if (rng.bernoulli(rates.change_activation)) {
            const std::size_t non_inputs = g.nodes.size() - CppnGenome::num_inputs;
            g.nodes[CppnGenome::num_inputs + rng.index(non_inputs)].activation = random_activation(rng);
        }
        return g;
    }

    CppnGenome random_cppn(Rng& rng, int structural_steps)
    {
        CppnGenome g = CppnGenome::minimal(random_activation(rng));
        for (int i = 0; i < CppnGenome::num_inputs; ++i)
            g.edges.push_back({i, CppnGenome::output_id, rng.uniform(-CppnGenome::weight_limit, CppnGenome::weight_limit)});
        for (int s = 0; s < structural_steps; ++s) {
            if (rng.bernoulli(0.5))
                cppn_add_node(g, rng.index(g.edges.size()), random_activation(rng));
            else
                add_random_connection(g, rng);
        }
        return g;
    }

    Evaluation image_evaluate(const GrayImage& render, const GrayImage& target)
    {
        if (render.width != target.width || render.height != target.height)
            throw InvalidInput("image_evaluate: render is " + std::to_string(render.width) + "x" + std::to_string(render.height) + ", target is "
                + std::to_string(target.width) + "x" + std::to_string(target.height));
        const int w = render.width;
        const int h = render.height;
        long long abs_err = 0;
        long long intensity = 0;
        long long asym = 0;
        for (int j = 0; j < h; ++j)
            for (int i = 0; i < w; ++i) {
                const int p = render(i, j);
                abs_err += std::abs(p - target(i, j));
                intensity += p;
                asym += std::abs(p - render(w - 1 - i, j));
            }
        const double n = static_cast<double>(w) * h;
        Evaluation e;
        e.fitness = -(static_cast<double>(abs_err) / n) / 255.;
        e.descriptor.resize(2);
        e.descriptor << static_cast<double>(intensity) / n / 255., 1. - static_cast<double>(asym) / n / 255.;
        return e;
    }

    Evaluation cppn_image_evaluate(const CppnGenome& genome, const GrayImage& target)
    {
        return image_evaluate(cppn_render(genome, target.width, target.height), target);
    }

    DomainSpec make_cppn_image_domain(GrayImage target, int init_structural_steps)
    {
        DomainSpec d;
        d.name = "cppn_image";
        d.genome_kind = GenomeKind::cppn;
        d.descriptor_bounds = Bounds::unit(2);
        d.fitness_bounds = {-1., 0.};
        auto shared = std::make_shared<const GrayImage>(std::move(target));
        d.evaluate = [shared](const Genome& g) {
            const auto* c = std::get_if<CppnGenome>(&g);
            if (!c)
                throw InvalidInput("cppn_image: expected a CPPN genome");
            return cppn_image_evaluate(*c, *shared);
        };
        d.random_genome = [init_structural_steps](Rng& rng) -> Genome { return random_cppn(rng, init_structural_steps); };
        return d;
    }

    std::string encode_pgm(const GrayImage& image)
    {
        std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
        out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
        return out;
    }

    GrayImage decode_pgm(const std::string& bytes)
    {
        std::istringstream in(bytes);
        std::string magic;
        int w = 0;
        int h = 0;
        int maxval = 0;
        in >> magic >> w >> h >> maxval;
        if (!in || magic != "P5" || maxval != 255 || w < 1 || h < 1)
            throw FormatError("pgm: unsupported header");
        in.get();
        GrayImage img{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h)};
        in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
        if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
            throw FormatError("pgm: truncated pixel data");
        return img;
    }

} // namespace qdlab
