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

#ifndef QDLAB_CONFIG_HPP
#define QDLAB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <qdlab/engines.hpp>
#include <qdlab/variation.hpp>

namespace qdlab {

    /// Everything a run needs. Text form: `[section]` headers and
    /// `key = value` lines (keys before any header belong to [run]),
    /// `#` comments, lists comma-separated.
    struct RunConfig {
        struct Run {
            std::string algorithm = "map_elites"; // map_elites | novelty_search | objective_ga
            std::string domain = "sphere"; // sphere | arm | maze | cppn_image
            std::size_t budget = 10000;
            std::uint64_t seed = 1;
            std::size_t batch = 100;
            std::size_t init_count = 0; // 0: automatic
            unsigned workers = 1;
            bool operator==(const Run&) const = default;
        } run;

        struct Domain {
            int sphere_dim = 10;
            int arm_joints = 7;
            int image_size = 32;
            std::uint64_t target_seed = 7;
            int target_complexity = 8;
            bool operator==(const Domain&) const = default;
        } domain;

        struct ArchiveSection {
            std::string kind = "grid"; // grid | cvt
            std::vector<int> bins{10, 10};
            int k = 1000;
            std::size_t cvt_samples = 100000;
            int cvt_iters = 100;
            bool operator==(const ArchiveSection&) const = default;
        } archive;

        VariationConfig variation;

        struct Ns {
            int pop_size = 100;
            int k = 15;
            double rho = 0.05;
            bool local_competition = false;
            double blend_weight = 0.5;
            int tournament_size = 3;
            bool operator==(const Ns&) const = default;
        } ns;

        struct Ga {
            int pop_size = 100;
            int tournament_size = 3;
            int elite_keep = 5;
            bool operator==(const Ga&) const = default;
        } ga;

        struct Adapt {
            double ucb_beta = 0.5;
            int max_trials = 20;
            double success_eps = 0.02;
            std::vector<double> target{0.5, 0.3};
            bool damage = true;
            int locked_joint = 3;
            double locked_angle = 0.;
            double length_scale = 0.2;
            double sigma_f = 0.5;
            double sigma_n = 0.01;
            bool operator==(const Adapt&) const = default;
        } adapt;

        bool operator==(const RunConfig&) const = default;

        EngineConfig engine() const;
        NsConfig ns_config() const;
        GaConfig ga_config() const;
    };

    /// Throws FormatError naming `source` and the offending line.
    RunConfig parse_config(std::string_view text, std::string_view source = "config");

    /// Every key, defaults included; reparses to an equal config.
    std::string serialize_config(const RunConfig& cfg);

} // namespace qdlab

#endif
