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

#ifndef QDLAB_DOMAINS_CPPN_HPP
#define QDLAB_DOMAINS_CPPN_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <qdlab/cppn_genome.hpp>
#include <qdlab/domain.hpp>
#include <qdlab/rng.hpp>

namespace qdlab {

    /// 8-bit grayscale image, row-major.
    struct GrayImage {
        int width = 0;
        int height = 0;
        std::vector<std::uint8_t> pixels;

        std::uint8_t operator()(int i, int j) const { return pixels[static_cast<std::size_t>(j) * width + i]; }
        bool operator==(const GrayImage&) const = default;
    };

    double apply_activation(Activation a, double s);

    /// Pixel coordinate i of a W-wide grid, in [-1, 1]; exactly antisymmetric:
    /// coordinate(W-1-i) == -coordinate(i).
    double cppn_coordinate(int i, int extent);

    /// Raw output-node value at one point (before squashing).
    double cppn_query(const CppnGenome& genome, double x, double y);

    /// sigmoid, then round-half-up into [0, 255].
    std::uint8_t quantize_output(double v);

    GrayImage cppn_render(const CppnGenome& genome, int width, int height);

    /// Split edge `edge_index` with a new node (incoming weight 1, outgoing the old weight).
    void cppn_add_node(CppnGenome& genome, std::size_t edge_index, Activation activation);

    CppnGenome cppn_mutate(const CppnGenome& genome, const CppnMutationRates& rates, Rng& rng);

    /// Inputs wired straight to the output with uniform weights in [-3, 3] and
    /// a random output activation, followed by `structural_steps` add-node /
    /// add-connection mutations.
    CppnGenome random_cppn(Rng& rng, int structural_steps = 0);

    /// fitness = -mean |pixel - target| / 255; descriptor = (mean intensity / 255, left-right symmetry).
    Evaluation cppn_image_evaluate(const CppnGenome& genome, const GrayImage& target);
    Evaluation image_evaluate(const GrayImage& render, const GrayImage& target);

    DomainSpec make_cppn_image_domain(GrayImage target, int init_structural_steps = 2);

    /// Binary PGM (P5, maxval 255).
    std::string encode_pgm(const GrayImage& image);
    GrayImage decode_pgm(const std::string& bytes);

} // namespace qdlab

#endif
