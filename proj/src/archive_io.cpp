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

#include <qdlab/archive_io.hpp>

#include <fstream>
#include <map>
#include <sstream>

#include <qdlab/errors.hpp>

namespace qdlab {

    namespace fs = std::filesystem;

    void write_file_atomic(const fs::path& path, std::string_view contents)
    {
        fs::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw FormatError(path.string() + ": cannot open for writing");
            out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
            out.flush();
            if (!out)
                throw FormatError(path.string() + ": write failed");
        }
        fs::rename(tmp, path);
    }

    std::string read_file(const fs::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw FormatError(path.string() + ": cannot open for reading");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    namespace {
        struct LineReader {
            std::string source;
            std::string text;
            std::vector<std::string_view> lines;

            LineReader(std::string source_name, std::string contents) : source(std::move(source_name)), text(std::move(contents))
            {
                lines = split(text, '\n');
                if (!lines.empty() && lines.back().empty())
                    lines.pop_back();
                for (auto& l : lines)
                    if (!l.empty() && l.back() == '\r')
                        l.remove_suffix(1);
            }

            [[nodiscard]] FormatError error(std::size_t index, const std::string& msg) const { return FormatError(source + ":" + std::to_string(index + 1) + ": " + msg); }

            double real(std::size_t index, std::string_view field) const
            {
                const auto v = to_real(field);
                if (!v)
                    throw error(index, "expected a real number, got '" + std::string(field) + "'");
                return *v;
            }

            long long integer(std::size_t index, std::string_view field) const
            {
                const auto v = to_integer(field);
                if (!v)
                    throw error(index, "expected an integer, got '" + std::string(field) + "'");
                return *v;
            }
        };

        std::string join_reals(const Vector& v, char sep)
        {
            std::string s;
            for (Eigen::Index i = 0; i < v.size(); ++i)
                s += (i ? std::string(1, sep) : std::string()) + format_real(v(i));
            return s;
        }

        Vector parse_reals(const LineReader& r, std::size_t line, std::string_view text, char sep)
        {
            const auto parts = split(text, sep);
            Vector v(static_cast<Eigen::Index>(parts.size()));
            for (std::size_t i = 0; i < parts.size(); ++i)
                v(static_cast<Eigen::Index>(i)) = r.real(line, parts[i]);
            return v;
        }

        std::string cppn_file_name(std::size_t niche) { return "genomes/niche_" + std::to_string(niche) + ".cppn"; }

        std::string archive_header(Eigen::Index d)
        {
            std::string h = "niche";
            for (Eigen::Index j = 0; j < d; ++j)
                h += ",desc_" + std::to_string(j);
            return h + ",fitness,genome\n";
        }
    } // namespace

    std::string serialize_cppn(const CppnGenome& genome)
    {
        std::string out;
        for (const auto& n : genome.nodes)
            out += "node," + std::to_string(n.id) + "," + (n.kind == NodeKind::input ? std::string("input") : std::string(to_string(n.activation))) + "\n";
        for (const auto& e : genome.edges)
            out += "edge," + std::to_string(e.src) + "," + std::to_string(e.dst) + "," + format_real(e.weight) + "\n";
        return out;
    }

    CppnGenome parse_cppn(std::string_view text, std::string_view source)
    {
        const LineReader r{std::string(source), std::string(text)};
        CppnGenome g;
        g.next_id = CppnGenome::output_id + 1;
        for (std::size_t i = 0; i < r.lines.size(); ++i) {
            const auto f = split(r.lines[i], ',');
            if (f[0] == "node" && f.size() == 3) {
                const int id = static_cast<int>(r.integer(i, f[1]));
                CppnNode node{id, NodeKind::hidden, Activation::linear};
                if (f[2] == "input") {
                    node.kind = NodeKind::input;
                }
                else {
                    const auto a = activation_from_string(f[2]);
                    if (!a)
                        throw r.error(i, "unknown activation '" + std::string(f[2]) + "'");
                    node.activation = *a;
                    if (id == CppnGenome::output_id)
                        node.kind = NodeKind::output;
                }
                g.nodes.push_back(node);
                g.next_id = std::max(g.next_id, id + 1);
            }
            else if (f[0] == "edge" && f.size() == 4) {
                g.edges.push_back({static_cast<int>(r.integer(i, f[1])), static_cast<int>(r.integer(i, f[2])), r.real(i, f[3])});
            }
            else {
                throw r.error(i, "expected 'node,id,activation' or 'edge,src,dst,weight'");
            }
        }
        if (const auto why = validate(g); !why.empty())
            throw FormatError(std::string(source) + ": invalid CPPN genome: " + why);
        return g;
    }

    std::string archive_csv(const Archive& archive, GenomeKind genome_kind)
    {
        std::string out = archive_header(archive.descriptor_dim());
        for (std::size_t niche : archive.filled_sorted()) {
            const Elite& e = *archive.find(niche);
            out += std::to_string(niche) + "," + join_reals(e.evaluation.descriptor, ',') + "," + format_real(e.evaluation.fitness) + ",";
            if (genome_kind == GenomeKind::cppn)
                out += cppn_file_name(niche);
            else
                out += join_reals(std::get<RealVector>(e.genome), ';');
            out += "\n";
        }
        return out;
    }

    std::string centroids_csv(const Matrix& centroids)
    {
        std::string out = "centroid";
        for (Eigen::Index j = 0; j < centroids.cols(); ++j)
            out += ",c_" + std::to_string(j);
        out += "\n";
        for (Eigen::Index i = 0; i < centroids.rows(); ++i)
            out += std::to_string(i) + "," + join_reals(centroids.row(i).transpose(), ',') + "\n";
        return out;
    }

    std::string metrics_csv(const MetricsLog& log)
    {
        std::string out = "evals,coverage,qd_score,best_fitness\n";
        for (const auto& r : log)
            out += std::to_string(r.evals) + "," + format_real(r.coverage) + "," + format_real(r.qd_score) + "," + format_real(r.best_fitness) + "\n";
        return out;
    }

    std::string trials_csv(const std::vector<TrialRow>& trials)
    {
        std::string out = "trial,niche,prior_mean,posterior_mean,posterior_sd,observed\n";
        for (const auto& t : trials)
            out += std::to_string(t.trial) + "," + std::to_string(t.niche) + "," + format_real(t.prior_mean) + "," + format_real(t.posterior_mean) + ","
                + format_real(t.posterior_sd) + "," + format_real(t.observed) + "\n";
        return out;
    }

    std::string novelty_archive_csv(const NoveltyArchive& archive)
    {
        std::string out = "entry";
        const Eigen::Index d = archive.size() ? archive[0].descriptor.size() : 0;
        for (Eigen::Index j = 0; j < d; ++j)
            out += ",desc_" + std::to_string(j);
        out += ",fitness\n";
        for (std::size_t i = 0; i < archive.size(); ++i) {
            const auto& e = archive[i];
            out += std::to_string(i) + "," + join_reals(e.descriptor, ',') + "," + (e.elite ? format_real(e.elite->evaluation.fitness) : std::string()) + "\n";
        }
        return out;
    }

    void save_archive(const Archive& archive, const FitnessBounds& fb, GenomeKind genome_kind, const fs::path& directory)
    {
        fs::create_directories(directory);
        std::string meta;
        meta += "kind = " + std::string(archive.is_grid() ? "grid" : "cvt") + "\n";
        meta += "dim = " + std::to_string(archive.descriptor_dim()) + "\n";
        meta += "lo = " + join_reals(archive.bounds().lo, ',') + "\n";
        meta += "hi = " + join_reals(archive.bounds().hi, ',') + "\n";
        if (archive.is_grid()) {
            std::string bins;
            for (int b : archive.grid_layout().bins)
                bins += (bins.empty() ? "" : ",") + std::to_string(b);
            meta += "bins = " + bins + "\n";
        }
        else {
            meta += "k = " + std::to_string(archive.niche_count()) + "\n";
        }
        meta += "fitness_min = " + format_real(fb.min) + "\n";
        meta += "fitness_max = " + format_real(fb.max) + "\n";
        meta += "genome = " + std::string(genome_kind == GenomeKind::cppn ? "cppn" : "real_vector") + "\n";

        if (archive.is_cvt())
            write_file_atomic(directory / "centroids.csv", centroids_csv(archive.cvt_layout().centroids));
        if (genome_kind == GenomeKind::cppn) {
            fs::create_directories(directory / "genomes");
            for (std::size_t niche : archive.filled_sorted())
                write_file_atomic(directory / cppn_file_name(niche), serialize_cppn(std::get<CppnGenome>(archive.find(niche)->genome)));
        }
        write_file_atomic(directory / "archive.meta", meta);
        write_file_atomic(directory / "archive.csv", archive_csv(archive, genome_kind));
    }

    StoredArchive load_archive(const fs::path& directory)
    {
        const auto meta_path = directory / "archive.meta";
        const LineReader meta(meta_path.string(), read_file(meta_path));
        std::map<std::string, std::pair<std::string, std::size_t>> kv;
        for (std::size_t i = 0; i < meta.lines.size(); ++i) {
            const auto eq = meta.lines[i].find('=');
            if (eq == std::string_view::npos)
                throw meta.error(i, "expected 'key = value'");
            kv[std::string(trim(meta.lines[i].substr(0, eq)))] = {std::string(trim(meta.lines[i].substr(eq + 1))), i};
        }
        auto get = [&](const std::string& key) -> const std::pair<std::string, std::size_t>& {
            const auto it = kv.find(key);
            if (it == kv.end())
                throw FormatError(meta_path.string() + ": missing key '" + key + "'");
            return it->second;
        };

        const auto& [dim_text, dim_line] = get("dim");
        const auto d = static_cast<Eigen::Index>(meta.integer(dim_line, dim_text));
        Bounds bounds{parse_reals(meta, get("lo").second, get("lo").first, ','), parse_reals(meta, get("hi").second, get("hi").first, ',')};
        if (d < 1 || bounds.lo.size() != d || bounds.hi.size() != d)
            throw meta.error(dim_line, "bounds do not match dim");
        const FitnessBounds fb{meta.real(get("fitness_min").second, get("fitness_min").first), meta.real(get("fitness_max").second, get("fitness_max").first)};
        const auto& [genome_text, genome_line] = get("genome");
        if (genome_text != "cppn" && genome_text != "real_vector")
            throw meta.error(genome_line, "unknown genome kind '" + genome_text + "'");
        const GenomeKind genome_kind = genome_text == "cppn" ? GenomeKind::cppn : GenomeKind::real_vector;

        const auto& [kind, kind_line] = get("kind");
        std::optional<Archive> archive;
        if (kind == "grid") {
            const auto& [bins_text, bins_line] = get("bins");
            std::vector<int> bins;
            for (auto b : split(bins_text, ','))
                bins.push_back(static_cast<int>(meta.integer(bins_line, b)));
            archive = Archive::grid(bounds, bins);
        }
        else if (kind == "cvt") {
            const auto centroids_path = directory / "centroids.csv";
            const LineReader c(centroids_path.string(), read_file(centroids_path));
            const auto k = static_cast<Eigen::Index>(meta.integer(get("k").second, get("k").first));
            if (static_cast<Eigen::Index>(c.lines.size()) != k + 1)
                throw FormatError(centroids_path.string() + ": expected " + std::to_string(k) + " centroid rows");
            Matrix centroids(k, d);
            for (Eigen::Index i = 0; i < k; ++i) {
                const auto line = static_cast<std::size_t>(i + 1);
                const auto f = split(c.lines[line], ',');
                if (static_cast<Eigen::Index>(f.size()) != d + 1 || c.integer(line, f[0]) != i)
                    throw c.error(line, "malformed centroid row");
                for (Eigen::Index j = 0; j < d; ++j)
                    centroids(i, j) = c.real(line, f[static_cast<std::size_t>(j + 1)]);
            }
            archive = Archive::cvt(bounds, centroids);
        }
        else {
            throw meta.error(kind_line, "unknown archive kind '" + kind + "'");
        }

        const auto csv_path = directory / "archive.csv";
        const LineReader csv(csv_path.string(), read_file(csv_path));
        if (csv.lines.empty() || std::string(csv.lines[0]) + "\n" != archive_header(d))
            throw csv.error(0, "unexpected header");
        for (std::size_t i = 1; i < csv.lines.size(); ++i) {
            const auto f = split(csv.lines[i], ',');
            if (static_cast<Eigen::Index>(f.size()) != d + 3)
                throw csv.error(i, "expected " + std::to_string(d + 3) + " fields, got " + std::to_string(f.size()));
            const long long niche = csv.integer(i, f[0]);
            Evaluation ev;
            ev.descriptor.resize(d);
            for (Eigen::Index j = 0; j < d; ++j)
                ev.descriptor(j) = csv.real(i, f[static_cast<std::size_t>(j + 1)]);
            ev.fitness = csv.real(i, f[static_cast<std::size_t>(d + 1)]);
            const auto genome_field = f[static_cast<std::size_t>(d + 2)];
            Genome genome;
            if (genome_kind == GenomeKind::cppn) {
                const auto path = directory / std::string(genome_field);
                genome = parse_cppn(read_file(path), path.string());
            }
            else {
                genome = parse_reals(csv, i, genome_field, ';');
            }
            if (niche < 0 || static_cast<std::size_t>(niche) != archive->niche_of(ev.descriptor))
                throw csv.error(i, "niche " + std::to_string(niche) + " does not match its descriptor");
            if (archive->find(static_cast<std::size_t>(niche)))
                throw csv.error(i, "duplicate niche " + std::to_string(niche));
            archive->try_insert(Elite{std::move(genome), std::move(ev)});
        }
        return {std::move(*archive), fb, genome_kind};
    }

} // namespace qdlab
