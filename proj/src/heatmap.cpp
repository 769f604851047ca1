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

#include <qdlab/heatmap.hpp>

#include <cmath>
#include <cstdio>

#include <qdlab/archive_io.hpp>

namespace qdlab {

    namespace {
        constexpr double plot_x = 40.;
        constexpr double plot_y = 20.;
        constexpr double plot_size = 400.;

        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6g", v);
            return buf;
        }

        std::string rect(const char* cls, double x, double y, double w, double h, const Rgb& c)
        {
            return "<rect class=\"" + std::string(cls) + "\" x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" fill=\""
                + to_hex(c) + "\"/>\n";
        }

        Rgb niche_color(const Archive& archive, std::size_t niche, const FitnessBounds& fb)
        {
            const Elite* e = archive.find(niche);
            return e ? fitness_color(e->evaluation.fitness, fb) : color_empty;
        }
    } // namespace

    Rgb fitness_color(double fitness, const FitnessBounds& fb)
    {
        const double t = fb.max > fb.min ? std::clamp((fitness - fb.min) / (fb.max - fb.min), 0., 1.) : 1.;
        Rgb c;
        for (std::size_t i = 0; i < 3; ++i)
            c[i] = static_cast<int>(std::lround(color_low[i] + t * (color_high[i] - color_low[i])));
        return c;
    }

    std::string to_hex(const Rgb& c)
    {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c[0], c[1], c[2]);
        return buf;
    }

    std::string heatmap_svg(const Archive& archive, const FitnessBounds& fb)
    {
        if (archive.descriptor_dim() != 2)
            throw UnsupportedDimension("unsupported dimension: heatmaps need a 2-D descriptor, archive has " + std::to_string(archive.descriptor_dim()));

        std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" height=\"440\" viewBox=\"0 0 560 440\">\n";
        svg += "<defs><linearGradient id=\"fitness\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\"><stop offset=\"0\" stop-color=\"" + to_hex(color_low)
            + "\"/><stop offset=\"1\" stop-color=\"" + to_hex(color_high) + "\"/></linearGradient></defs>\n";
        svg += "<rect x=\"0\" y=\"0\" width=\"560\" height=\"440\" fill=\"#ffffff\"/>\n";

        svg += "<g id=\"map\">\n";
        if (archive.is_grid()) {
            const auto& bins = archive.grid_layout().bins;
            const double w = plot_size / bins[0];
            const double h = plot_size / bins[1];
            for (int i = 0; i < bins[0]; ++i)
                for (int j = 0; j < bins[1]; ++j) {
                    const auto niche = static_cast<std::size_t>(i) * static_cast<std::size_t>(bins[1]) + static_cast<std::size_t>(j);
                    svg += rect("niche", plot_x + i * w, plot_y + (bins[1] - 1 - j) * h, w, h, niche_color(archive, niche, fb));
                }
        }
        else {
            const auto& layout = archive.cvt_layout();
            const double cell = plot_size / cvt_raster;
            Eigen::Vector2d p;
            for (int row = 0; row < cvt_raster; ++row) {
                // Row 0 is the top of the plot, i.e. the largest second coordinate.
                p(1) = layout.bounds.lo(1) + (cvt_raster - 1 - row + 0.5) / cvt_raster * (layout.bounds.hi(1) - layout.bounds.lo(1));
                int run_start = 0;
                Rgb run_color{};
                for (int col = 0; col <= cvt_raster; ++col) {
                    Rgb c{};
                    if (col < cvt_raster) {
                        p(0) = layout.bounds.lo(0) + (col + 0.5) / cvt_raster * (layout.bounds.hi(0) - layout.bounds.lo(0));
                        c = niche_color(archive, static_cast<std::size_t>(nearest_centroid(p, layout.centroids)), fb);
                    }
                    if (col == 0) {
                        run_color = c;
                    }
                    else if (col == cvt_raster || c != run_color) {
                        svg += rect("raster", plot_x + run_start * cell, plot_y + row * cell, (col - run_start) * cell, cell, run_color);
                        run_start = col;
                        run_color = c;
                    }
                }
            }
        }
        svg += "</g>\n";

        svg += "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
        svg += "<rect x=\"470\" y=\"20\" width=\"20\" height=\"300\" fill=\"url(#fitness)\"/>\n";
        svg += "<text x=\"495\" y=\"28\">" + format_real(fb.max) + "</text>\n";
        svg += "<text x=\"495\" y=\"320\">" + format_real(fb.min) + "</text>\n";
        svg += "<rect x=\"470\" y=\"340\" width=\"20\" height=\"20\" fill=\"" + to_hex(color_empty) + "\"/>\n";
        svg += "<text x=\"495\" y=\"354\">empty</text>\n";
        svg += "<text x=\"470\" y=\"12\">fitness</text>\n";
        svg += "</g>\n</svg>\n";
        return svg;
    }

    void emit_heatmap(const Archive& archive, const FitnessBounds& fb, const std::filesystem::path& path)
    {
        write_file_atomic(path, heatmap_svg(archive, fb));
    }

} // namespace qdlab
