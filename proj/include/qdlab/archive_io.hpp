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

#ifndef QDLAB_ARCHIVE_IO_HPP
#define QDLAB_ARCHIVE_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <qdlab/adapt.hpp>
#include <qdlab/archive.hpp>
#include <qdlab/engines.hpp>
#include <qdlab/novelty.hpp>
#include <qdlab/text.hpp>

namespace qdlab {

    /// Writes to a sibling temporary file, then renames over `path`.
    void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
    std::string read_file(const std::filesystem::path& path);

    std::string serialize_cppn(const CppnGenome& genome);
    CppnGenome parse_cppn(std::string_view text, std::string_view source);

    struct StoredArchive {
        Archive archive;
        FitnessBounds fitness_bounds;
        GenomeKind genome_kind = GenomeKind::real_vector;
    };

    /// Writes `archive.meta` (tessellation and bounds), `archive.csv`,
    /// `centroids.csv` for CVT archives, and `genomes/niche_<n>.cppn` for CPPN genomes.
    void save_archive(const Archive& archive, const FitnessBounds& fitness_bounds, GenomeKind genome_kind, const std::filesystem::path& directory);
    StoredArchive load_archive(const std::filesystem::path& directory);

    std::string archive_csv(const Archive& archive, GenomeKind genome_kind);
    std::string centroids_csv(const Matrix& centroids);
    std::string metrics_csv(const MetricsLog& log);
    std::string trials_csv(const std::vector<TrialRow>& trials);
    std::string novelty_archive_csv(const NoveltyArchive& archive);

} // namespace qdlab

#endif
