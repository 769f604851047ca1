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

#ifndef QDLAB_EXPERIMENT_HPP
#define QDLAB_EXPERIMENT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <qdlab/archive.hpp>
#include <qdlab/config.hpp>
#include <qdlab/domain.hpp>
#include <qdlab/domains/cppn.hpp>

namespace qdlab {

    /// Held-out target picture for the image domain.
    GrayImage make_target_image(const RunConfig::Domain& cfg);

    DomainSpec make_domain(const RunConfig& cfg);
    Archive make_archive(const RunConfig& cfg, const DomainSpec& domain);

    /// Entry point behind the `qdlab` executable. Subcommands: run, adapt, plot, stats.
    int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qdlab

#endif
