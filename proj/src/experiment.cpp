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

#include <qdlab/experiment.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include <qdlab/adapt.hpp>
#include <qdlab/archive_io.hpp>
#include <qdlab/cvt.hpp>
#include <qdlab/domains/arm.hpp>
#include <qdlab/domains/maze.hpp>
#include <qdlab/domains/sphere.hpp>
#include <qdlab/engines.hpp>
#include <qdlab/errors.hpp>
#include <qdlab/heatmap.hpp>

namespace qdlab {

    namespace fs = std::filesystem;

    GrayImage make_target_image(const RunConfig::Domain& cfg)
    {
        Rng rng(mix64(cfg.target_seed));
        return cppn_render(random_cppn(rng, cfg.target_complexity), cfg.image_size, cfg.image_size);
    }

    DomainSpec make_domain(const RunConfig& cfg)
    {
        const auto& name = cfg.run.domain;
        if (name == "sphere")
            return make_sphere_domain(cfg.domain.sphere_dim);
        if (name == "arm")
            return make_arm_domain(ArmParams{cfg.domain.arm_joints});
        if (name == "maze")
            return make_maze_domain();
        if (name == "cppn_image")
            return make_cppn_image_domain(make_target_image(cfg.domain));
        throw InvalidInput("unknown domain '" + name + "'");
    }

    Archive make_archive(const RunConfig& cfg, const DomainSpec& domain)
    {
        const auto& a = cfg.archive;
        if (a.kind == "grid") {
            if (static_cast<Eigen::Index>(a.bins.size()) != domain.descriptor_dim())
                throw InvalidInput("dimension mismatch: archive bins has " + std::to_string(a.bins.size()) + " entries, domain '" + domain.name + "' descriptor has "
                    + std::to_string(domain.descriptor_dim()) + " dimensions");
            return Archive::grid(domain.descriptor_bounds, a.bins);
        }
        if (a.cvt_samples < 10 * static_cast<std::size_t>(a.k))
            throw InvalidInput("cvt_samples must be at least 10 * k");
        const CvtParams params{a.k, a.cvt_samples, a.cvt_iters, mix64(cfg.run.seed ^ 0x5eedc47ULL)};
        return Archive::cvt(domain.descriptor_bounds, build_cvt(params, domain.descriptor_bounds).centroids);
    }

    namespace {

        void prepare_output(const fs::path& dir, bool force)
        {
            if (fs::exists(dir) && !fs::is_empty(dir) && !force)
                throw InvalidInput("output directory " + dir.string() + " already exists and is not empty (use --force to overwrite)");
            fs::create_directories(dir);
        }

        RunConfig load_config(const std::string& path)
        {
            return parse_config(read_file(path), path);
        }

        int cmd_run(const std::string& config_path, const fs::path& out_dir, std::optional<std::uint64_t> seed, bool force, std::ostream& out)
        {
            RunConfig cfg = load_config(config_path);
            if (seed)
                cfg.run.seed = *seed;
            const DomainSpec domain = make_domain(cfg);
            Archive archive = make_archive(cfg, domain);
            prepare_output(out_dir, force);
            write_file_atomic(out_dir / "config.ini", serialize_config(cfg));

            const EngineConfig engine = cfg.engine();
            MetricsLog log;
            std::optional<Elite> best;
            if (cfg.run.algorithm == "map_elites") {
                log = run_map_elites(domain, archive, cfg.variation, engine);
                for (std::size_t n : archive.filled_sorted())
                    if (!best || archive.find(n)->evaluation.fitness > best->evaluation.fitness)
                        best = *archive.find(n);
            }
            else if (cfg.run.algorithm == "novelty_search") {
                auto result = run_novelty_search(domain, cfg.ns_config(), cfg.variation, engine, &archive);
                write_file_atomic(out_dir / "novelty_archive.csv", novelty_archive_csv(result.archive));
                log = std::move(result.log);
                best = std::move(result.best);
            }
            else {
                auto result = run_objective_ga(domain, cfg.ga_config(), cfg.variation, engine, &archive);
                log = std::move(result.log);
                best = std::move(result.best);
            }

            save_archive(archive, domain.fitness_bounds, domain.genome_kind, out_dir);
            write_file_atomic(out_dir / "metrics.csv", metrics_csv(log));
            if (domain.genome_kind == GenomeKind::cppn) {
                const int s = cfg.domain.image_size;
                write_file_atomic(out_dir / "target.pgm", encode_pgm(make_target_image(cfg.domain)));
                if (best)
                    write_file_atomic(out_dir / "best.pgm", encode_pgm(cppn_render(std::get<CppnGenome>(best->genome), s, s)));
            }
            const auto m = archive_metrics(archive, domain.fitness_bounds);
            out << cfg.run.algorithm << " on " << domain.name << ": " << (log.empty() ? 0 : log.back().evals) << " evaluations, coverage " << format_real(m.coverage)
                << ", qd_score " << format_real(m.qd_score) << ", best fitness " << (best ? format_real(best->evaluation.fitness) : std::string("none")) << "\n";
            return 0;
        }

        int cmd_adapt(const fs::path& archive_dir, const std::string& config_path, const fs::path& out_dir, bool force, std::ostream& out)
        {
            const RunConfig cfg = load_config(config_path);
            const StoredArchive stored = load_archive(archive_dir);
            const ArmParams arm{cfg.domain.arm_joints};
            if (stored.genome_kind != GenomeKind::real_vector)
                throw InvalidInput("adapt: archive does not hold arm genomes");
            if (stored.archive.descriptor_dim() != 2)
                throw InvalidInput("dimension mismatch: adapt needs a 2-D arm archive");
            for (std::size_t n : stored.archive.filled())
                if (std::get<RealVector>(stored.archive.find(n)->genome).size() != arm.n_joints)
                    throw InvalidInput("dimension mismatch: archive genomes do not have " + std::to_string(arm.n_joints) + " joints");

            AdaptConfig ac;
            ac.ucb_beta = cfg.adapt.ucb_beta;
            ac.max_trials = cfg.adapt.max_trials;
            ac.success_eps = cfg.adapt.success_eps;
            ac.target = Eigen::Vector2d(cfg.adapt.target[0], cfg.adapt.target[1]);
            ac.gp = {cfg.adapt.length_scale, cfg.adapt.sigma_f, cfg.adapt.sigma_n};
            std::optional<DamageSpec> damage;
            if (cfg.adapt.damage)
                damage = DamageSpec{cfg.adapt.locked_joint, cfg.adapt.locked_angle};

            prepare_output(out_dir, force);
            write_file_atomic(out_dir / "config.ini", serialize_config(cfg));
            const AdaptResult r = run_adaptation(stored.archive, arm_reach_objective(arm, damage, ac.target), arm_reach_prior(arm, ac.target), ac);
            write_file_atomic(out_dir / "trials.csv", trials_csv(r.trials));
            out << "trials " << r.trials.size() << "\n"
                << "converged " << (r.converged ? "true" : "false") << "\n"
                << "best_niche " << r.best_niche << "\n"
                << "best_objective " << format_real(r.best_objective) << "\n";
            return 0;
        }

        int cmd_plot(const fs::path& archive_dir, const fs::path& path, std::ostream& out)
        {
            const StoredArchive stored = load_archive(archive_dir);
            const fs::path target = path.empty() ? archive_dir / "heatmap.svg" : path;
            emit_heatmap(stored.archive, stored.fitness_bounds, target);
            out << "wrote " << target.string() << "\n";
            return 0;
        }

        int cmd_stats(const fs::path& archive_dir, std::ostream& out)
        {
            const StoredArchive stored = load_archive(archive_dir);
            const auto m = archive_metrics(stored.archive, stored.fitness_bounds);
            out << "coverage " << format_real(m.coverage) << "\n"
                << "qd_score " << format_real(m.qd_score) << "\n"
                << "best_fitness " << format_real(stored.archive.best_fitness().value_or(stored.fitness_bounds.min)) << "\n";
            return 0;
        }

    } // namespace

    int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
    {
        CLI::App app{"Quality-diversity experiments: MAP-Elites, novelty search, objective GA, map-based recovery", "qdlab"};
        app.require_subcommand(1);

        std::string config_path;
        std::string out_dir;
        std::string archive_dir;
        std::string plot_path;
        std::optional<std::uint64_t> seed;
        bool force = false;

        auto* run = app.add_subcommand("run", "Run the configured engine and write archive, metrics and config echo");
        run->add_option("--config", config_path, "Config file")->required();
        run->add_option("--out", out_dir, "Output directory")->required();
        run->add_option("--seed", seed, "Override [run] seed");
        run->add_flag("--force", force, "Overwrite a non-empty output directory");

        auto* adapt = app.add_subcommand("adapt", "Recover from arm damage using a saved archive");
        adapt->add_option("--archive", archive_dir, "Archive directory")->required();
        adapt->add_option("--config", config_path, "Config file ([adapt] section)")->required();
        adapt->add_option("--out", out_dir, "Output directory for the trial log")->required();
        adapt->add_flag("--force", force, "Overwrite a non-empty output directory");

        auto* plot = app.add_subcommand("plot", "Write an SVG fitness heatmap of a 2-D archive");
        plot->add_option("--archive", archive_dir, "Archive directory")->required();
        plot->add_option("--out", plot_path, "SVG path (default: <archive>/heatmap.svg)");

        auto* stats = app.add_subcommand("stats", "Print coverage, QD score and best fitness");
        stats->add_option("--archive", archive_dir, "Archive directory")->required();

        try {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError& e) {
            return app.exit(e, out, err);
        }

        try {
            if (run->parsed())
                return cmd_run(config_path, out_dir, seed, force, out);
            if (adapt->parsed())
                return cmd_adapt(archive_dir, config_path, out_dir, force, out);
            if (plot->parsed())
                return cmd_plot(archive_dir, plot_path, out);
            return cmd_stats(archive_dir, out);
        }
        catch (const std::exception& e) {
            err << "qdlab: " << e.what() << "\n";
            return 1;
        }
    }

} // namespace qdlab
