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

#ifndef QDLAB_HEATMAP_HPP
#define QDLAB_HEATMAP_HPP

#include <array>
#include <filesystem>
#include <string>

#include <qdlab/archive.hpp>
#include <qdlab/errors.hpp>

namespace qdlab {

    class UnsupportedDimension : public InvalidInput {
    public:
        using InvalidInput::InvalidInput;
    };

    using Rgb = std::array<int, 3>;

    inline constexpr Rgb color_low{0, 0, 139}; // dark blue at f_min
    inline constexpr Rgb color_high{255, 255, 0}; // yellow at f_max
    inline constexpr Rgb color_empty{128, 128, 128};
    inline constexpr int cvt_raster = 256;

    /// Linear ramp between color_low and color_high, clamped.
    Rgb fitness_color(double fitness, const FitnessBounds& fb);
    std::string to_hex(const Rgb& c);

    /// SVG heatmap of a 2-D archive. Grids: one rect per niche. CVT: a
    /// 256 x 256 raster colored by each cell's nearest centroid (runs of equal
    /// color within a row merged into one rect). Always carries a legend.
    std::string heatmap_svg(const Archive& archive, const FitnessBounds& fb);
    void emit_heatmap(const Archive& archive, const FitnessBounds& fb, const std::filesystem::path& path);

} // namespace qdlab

#endif
