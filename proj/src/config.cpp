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

#include <qdlab/config.hpp>

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <qdlab/errors.hpp>
#include <qdlab/text.hpp>

namespace qdlab {

    EngineConfig RunConfig::engine() const { return {run.budget, run.batch, run.init_count, run.seed, run.workers}; }
    NsConfig RunConfig::ns_config() const { return {ns.pop_size, ns.k, ns.rho, ns.local_competition, ns.blend_weight, ns.tournament_size}; }
    GaConfig RunConfig::ga_config() const { return {ga.pop_size, ga.tournament_size, ga.elite_keep}; }

    namespace {

        /// Thrown by field parsers; turned into a FormatError with the line attached.
        struct FieldError {
            std::string message;
        };

        struct Field {
            std::string section;
            std::string key;
            std::function<void(RunConfig&, std::string_view)> parse;
            std::function<std::string(const RunConfig&)> print;
        };

        template <typename T, typename Get>
        Field integer(std::string section, std::string key, Get get, long long lo, long long hi = std::numeric_limits<int>::max())
        {
            auto parse = [get, lo, hi](RunConfig& c, std::string_view v) {
                const auto x = to_integer(v);
                if (!x)
                    throw FieldError{"expected an integer, got '" + std::string(v) + "'"};
                if (*x < lo || *x > hi)
                    throw FieldError{"value " + std::to_string(*x) + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"};
                get(c) = static_cast<T>(*x);
            };
            auto print = [get](const RunConfig& c) { return std::to_string(get(c)); };
            return {std::move(section), std::move(key), parse, print};
        }

        template <typename Get>
        Field seed(std::string section, std::string key, Get get)
        {
            auto parse = [get](RunConfig& c, std::string_view v) {
                const auto x = to_unsigned(v);
                if (!x)
                    throw FieldError{"expected an unsigned 64-bit integer, got '" + std::string(v) + "'"};
                get(c) = *x;
            };
            auto print = [get](const RunConfig& c) { return std::to_string(get(c)); };
            return {std::move(section), std::move(key), parse, print};
        }

        enum class Lower { inclusive, exclusive };

        template <typename Get>
        Field real(std::string section, std::string key, Get get, double lo, Lower lower, double hi = std::numeric_limits<double>::infinity())
        {
            auto parse = [get, lo, lower, hi](RunConfig& c, std::string_view v) {
                const auto x = to_real(v);
                if (!x)
                    throw FieldError{"expected a finite real number, got '" + std::string(v) + "'"};
                const bool ok_lo = lower == Lower::inclusive ? *x >= lo : *x > lo;
                if (!ok_lo || *x > hi)
                    throw FieldError{"value " + format_real(*x) + " out of range (must be " + (lower == Lower::inclusive ? ">= " : "> ") + format_real(lo)
                        + (std::isfinite(hi) ? " and <= " + format_real(hi) : std::string()) + ")"};
                get(c) = *x;
            };
            auto print = [get](const RunConfig& c) { return format_real(get(c)); };
            return {std::move(section), std::move(key), parse, print};
        }

        template <typename Get>
        Field boolean(std::string section, std::string key, Get get)
        {
            auto parse = [get](RunConfig& c, std::string_view v) {
                if (v == "true")
                    get(c) = true;
                else if (v == "false")
                    get(c) = false;
                else
                    throw FieldError{"expected true or false, got '" + std::string(v) + "'"};
            };
            auto print = [get](const RunConfig& c) { return std::string(get(c) ? "true" : "false"); };
            return {std::move(section), std::move(key), parse, print};
        }

        template <typename Get>
        Field choice(std::string section, std::string key, Get get, std::vector<std::string> allowed)
        {
            auto parse = [get, allowed](RunConfig& c, std::string_view v) {
                for (const auto& a : allowed)
                    if (a == v) {
                        get(c) = a;
                        return;
                    }
                std::string list;
                for (const auto& a : allowed)
                    list += (list.empty() ? "" : ", ") + a;
                throw FieldError{"'" + std::string(v) + "' is not one of: " + list};
            };
            auto print = [get](const RunConfig& c) { return get(c); };
            return {std::move(section), std::move(key), parse, print};
        }

        template <typename Get>
        Field int_list(std::string section, std::string key, Get get, int lo)
        {
            auto parse = [get, lo](RunConfig& c, std::string_view v) {
                std::vector<int> out;
                for (auto item : split(v, ',')) {
                    const auto x = to_integer(item);
                    if (!x)
                        throw FieldError{"expected a comma-separated list of integers, got '" + std::string(v) + "'"};
                    if (*x < lo || *x > std::numeric_limits<int>::max())
                        throw FieldError{"list entry " + std::to_string(*x) + " out of range (must be >= " + std::to_string(lo) + ")"};
                    out.push_back(static_cast<int>(*x));
                }
                get(c) = std::move(out);
            };
            auto print = [get](const RunConfig& c) {
                std::string s;
                for (int x : get(c))
                    s += (s.empty() ? "" : ",") + std::to_string(x);
                return s;
            };
            return {std::move(section), std::move(key), parse, print};
        }

        template <typename Get>
        Field real_list(std::string section, std::string key, Get get, std::size_t length)
        {
            auto parse = [get, length](RunConfig& c, std::string_view v) {
                std::vector<double> out;
                for (auto item : split(v, ',')) {
                    const auto x = to_real(item);
                    if (!x)
                        throw FieldError{"expected a comma-separated list of reals, got '" + std::string(v) + "'"};
                    out.push_back(*x);
                }
                if (out.size() != length)
                    throw FieldError{"expected " + std::to_string(length) + " values, got " + std::to_string(out.size())};
                get(c) = std::move(out);
            };
            auto print = [get](const RunConfig& c) {
                std::string s;
                for (double x : get(c))
                    s += (s.empty() ? "" : ",") + format_real(x);
                return s;
            };
            return {std::move(section), std::move(key), parse, print};
        }

        const std::vector<Field>& fields()
        {
            using L = Lower;
            static const std::vector<Field> table = {
                choice("run", "algorithm", [](auto& c) -> auto& { return c.run.algorithm; }, {"map_elites", "novelty_search", "objective_ga"}),
                choice("run", "domain", [](auto& c) -> auto& { return c.run.domain; }, {"sphere", "arm", "maze", "cppn_image"}),
                integer<std::size_t>("run", "budget", [](auto& c) -> auto& { return c.run.budget; }, 0, 1'000'000'000'000LL),
                seed("run", "seed", [](auto& c) -> auto& { return c.run.seed; }),
                integer<std::size_t>("run", "batch", [](auto& c) -> auto& { return c.run.batch; }, 1, 100'000'000),
                integer<std::size_t>("run", "init_count", [](auto& c) -> auto& { return c.run.init_count; }, 0, 1'000'000'000'000LL),
                integer<unsigned>("run", "workers", [](auto& c) -> auto& { return c.run.workers; }, 1, 1024),

                integer<int>("domain", "sphere_dim", [](auto& c) -> auto& { return c.domain.sphere_dim; }, 2),
                integer<int>("domain", "arm_joints", [](auto& c) -> auto& { return c.domain.arm_joints; }, 1),
                integer<int>("domain", "image_size", [](auto& c) -> auto& { return c.domain.image_size; }, 2, 4096),
                seed("domain", "target_seed", [](auto& c) -> auto& { return c.domain.target_seed; }),
                integer<int>("domain", "target_complexity", [](auto& c) -> auto& { return c.domain.target_complexity; }, 0, 10000),

                choice("archive", "kind", [](auto& c) -> auto& { return c.archive.kind; }, {"grid", "cvt"}),
                int_list("archive", "bins", [](auto& c) -> auto& { return c.archive.bins; }, 1),
                integer<int>("archive", "k", [](auto& c) -> auto& { return c.archive.k; }, 1),
                integer<std::size_t>("archive", "cvt_samples", [](auto& c) -> auto& { return c.archive.cvt_samples; }, 1, 1'000'000'000LL),
                integer<int>("archive", "cvt_iters", [](auto& c) -> auto& { return c.archive.cvt_iters; }, 0),

                real("variation", "sigma_gauss", [](auto& c) -> auto& { return c.variation.sigma_gauss; }, 0., L::exclusive),
                real("variation", "p_mut", [](auto& c) -> auto& { return c.variation.p_mut; }, 0., L::inclusive, 1.),
                real("variation", "sigma_iso", [](auto& c) -> auto& { return c.variation.sigma_iso; }, 0., L::inclusive),
                real("variation", "sigma_line", [](auto& c) -> auto& { return c.variation.sigma_line; }, 0., L::inclusive),

                integer<int>("ns", "pop_size", [](auto& c) -> auto& { return c.ns.pop_size; }, 2),
                integer<int>("ns", "k", [](auto& c) -> auto& { return c.ns.k; }, 1),
                real("ns", "rho", [](auto& c) -> auto& { return c.ns.rho; }, 0., L::exclusive),
                boolean("ns", "local_competition", [](auto& c) -> auto& { return c.ns.local_competition; }),
                real("ns", "blend_weight", [](auto& c) -> auto& { return c.ns.blend_weight; }, 0., L::inclusive, 1.),
                integer<int>("ns", "tournament_size", [](auto& c) -> auto& { return c.ns.tournament_size; }, 1),

                integer<int>("ga", "pop_size", [](auto& c) -> auto& { return c.ga.pop_size; }, 2),
                integer<int>("ga", "tournament_size", [](auto& c) -> auto& { return c.ga.tournament_size; }, 1),
                integer<int>("ga", "elite_keep", [](auto& c) -> auto& { return c.ga.elite_keep; }, 0),

                real("adapt", "ucb_beta", [](auto& c) -> auto& { return c.adapt.ucb_beta; }, 0., L::inclusive),
                integer<int>("adapt", "max_trials", [](auto& c) -> auto& { return c.adapt.max_trials; }, 1),
                real("adapt", "success_eps", [](auto& c) -> auto& { return c.adapt.success_eps; }, 0., L::exclusive),
                real_list("adapt", "target", [](auto& c) -> auto& { return c.adapt.target; }, 2),
                boolean("adapt", "damage", [](auto& c) -> auto& { return c.adapt.damage; }),
                integer<int>("adapt", "locked_joint", [](auto& c) -> auto& { return c.adapt.locked_joint; }, 0),
                real("adapt", "locked_angle", [](auto& c) -> auto& { return c.adapt.locked_angle; }, -std::numeric_limits<double>::max(), L::inclusive),
                real("adapt", "length_scale", [](auto& c) -> auto& { return c.adapt.length_scale; }, 0., L::exclusive),
                real("adapt", "sigma_f", [](auto& c) -> auto& { return c.adapt.sigma_f; }, 0., L::exclusive),
                real("adapt", "sigma_n", [](auto& c) -> auto& { return c.adapt.sigma_n; }, 0., L::inclusive),
            };
            return table;
        }

        const std::vector<std::string>& section_order()
        {
            static const std::vector<std::string> order = {"run", "domain", "archive", "variation", "ns", "ga", "adapt"};
            return order;
        }

    } // namespace

    RunConfig parse_config(std::string_view text, std::string_view source)
    {
        RunConfig cfg;
        std::string section = "run"; // keys before the first header
        std::map<std::string, int> seen; // "section.key" -> line
        auto fail = [&](int line, const std::string& msg) -> FormatError { return FormatError(std::string(source) + ":" + std::to_string(line) + ": " + msg); };

        int line_no = 0;
        for (auto raw : split(text, '\n')) {
            ++line_no;
            if (const auto hash = raw.find('#'); hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            const auto line = trim(raw);
            if (line.empty())
                continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw fail(line_no, "malformed section header '" + std::string(line) + "'");
                section = std::string(trim(line.substr(1, line.size() - 2)));
                const auto& order = section_order();
                if (std::find(order.begin(), order.end(), section) == order.end())
                    throw fail(line_no, "unknown section [" + section + "]");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw fail(line_no, "expected 'key = value', got '" + std::string(line) + "'");
            const std::string key(trim(line.substr(0, eq)));
            const auto value = trim(line.substr(eq + 1));
            const auto& table = fields();
            const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.section == section && f.key == key; });
            if (it == table.end())
                throw fail(line_no, "unknown key '" + key + "' in section [" + section + "]");
            if (!seen.emplace(section + "." + key, line_no).second)
                throw fail(line_no, "duplicate key '" + key + "' in section [" + section + "]");
            try {
                it->parse(cfg, value);
            }
            catch (const FieldError& e) {
                throw fail(line_no, key + ": " + e.message);
            }
        }

        auto line_of = [&](const std::string& k) {
            const auto it = seen.find(k);
            return it == seen.end() ? 0 : it->second;
        };
        if (cfg.run.budget > 0 && cfg.run.init_count > cfg.run.budget)
            throw fail(line_of("run.init_count"), "init_count: exceeds budget " + std::to_string(cfg.run.budget));
        if (cfg.ga.elite_keep >= cfg.ga.pop_size)
            throw fail(line_of("ga.elite_keep"), "elite_keep: must be below ga pop_size " + std::to_string(cfg.ga.pop_size));
        if (cfg.adapt.locked_joint >= cfg.domain.arm_joints)
            throw fail(line_of("adapt.locked_joint"), "locked_joint: must be below arm_joints " + std::to_string(cfg.domain.arm_joints));
        if (cfg.archive.bins.empty())
            throw fail(line_of("archive.bins"), "bins: empty list");
        return cfg;
    }

    std::string serialize_config(const RunConfig& cfg)
    {
        std::ostringstream out;
        bool first = true;
        for (const auto& section : section_order()) {
            out << (first ? "" : "\n") << "[" << section << "]\n";
            first = false;
            for (const auto& f : fields())
                if (f.section == section)
                    out << f.key << " = " << f.print(cfg) << "\n";
        }
        return out.str();
    }

} // namespace qdlab
