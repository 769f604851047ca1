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

#include <doctest.h>

#include <filesystem>

#include <qdlab/archive_io.hpp>
#include <qdlab/cvt.hpp>
#include <qdlab/domains/cppn.hpp>
#include <qdlab/errors.hpp>

#include "temp_dir.hpp"

using namespace qdlab;
namespace fs = std::filesystem;

namespace {

    Archive two_elite_grid()
    {
        Archive a = Archive::grid(Bounds::unit(2), {10, 10});
        a.try_insert({RealVector(Eigen::Vector2d(0.1, 0.2)), {-0.5, Eigen::Vector2d(0.1, 0.2)}});
        a.try_insert({RealVector(Eigen::Vector2d(1., -3.5)), {0.25, Eigen::Vector2d(0.95, 0.05)}});
        return a;
    }

    std::string slurp(const fs::path& p) { return read_file(p); }

    void write(const fs::path& p, const std::string& s) { write_file_atomic(p, s); }

} // namespace

TEST_SUITE("io")
{
    TEST_CASE("empty archive writes only the header")
    {
        const TempDir tmp;
        save_archive(Archive::grid(Bounds::unit(3), {2, 2, 2}), {0., 1.}, GenomeKind::real_vector, tmp.path());
        CHECK(slurp(tmp.path() / "archive.csv") == "niche,desc_0,desc_1,desc_2,fitness,genome\n");
        CHECK(load_archive(tmp.path()).archive.empty());
    }

    TEST_CASE("two-elite grid golden file")
    {
        const TempDir tmp;
        save_archive(two_elite_grid(), {-1., 1.}, GenomeKind::real_vector, tmp.path());
        CHECK(slurp(tmp.path() / "archive.csv")
            == "niche,desc_0,desc_1,fitness,genome\n"
               "12,0.10000000000000001,0.20000000000000001,-0.5,0.10000000000000001;0.20000000000000001\n"
               "90,0.94999999999999996,0.050000000000000003,0.25,1;-3.5\n");
        CHECK(slurp(tmp.path() / "archive.meta")
            == "kind = grid\ndim = 2\nlo = 0,0\nhi = 1,1\nbins = 10,10\nfitness_min = -1\nfitness_max = 1\ngenome = real_vector\n");
    }

    TEST_CASE("real-vector archives round-trip bit for bit")
    {
        Rng rng(61);
        const CvtResult cvt = build_cvt({50, 20000, 20, 3}, Bounds::unit(2));
        Archive a = Archive::cvt(Bounds::unit(2), cvt.centroids);
        for (int i = 0; i < 500; ++i) {
            RealVector g(3);
            g << rng.normal(), rng.normal() * 1e-300, rng.uniform() * 1e300;
            a.try_insert({g, {rng.normal(), Eigen::Vector2d(rng.uniform(), rng.uniform())}});
        }
        const TempDir t1, t2;
        save_archive(a, {-3., 3.}, GenomeKind::real_vector, t1.path());
        const StoredArchive loaded = load_archive(t1.path());
        CHECK(loaded.fitness_bounds.min == -3.);
        REQUIRE(loaded.archive.size() == a.size());
        for (std::size_t n : a.filled_sorted()) {
            const Elite* x = a.find(n);
            const Elite* y = loaded.archive.find(n);
            REQUIRE(y);
            CHECK(std::get<RealVector>(x->genome) == std::get<RealVector>(y->genome));
            CHECK(x->evaluation.fitness == y->evaluation.fitness);
            CHECK(x->evaluation.descriptor == y->evaluation.descriptor);
        }
        CHECK(loaded.archive.cvt_layout().centroids == cvt.centroids);
        save_archive(loaded.archive, loaded.fitness_bounds, loaded.genome_kind, t2.path());
        for (const char* f : {"archive.csv", "archive.meta", "centroids.csv"})
            CHECK(slurp(t1.path() / f) == slurp(t2.path() / f));
    }

    TEST_CASE("CPPN archives round-trip to identical renders")
    {
        Rng rng(62);
        const GrayImage target = cppn_render(random_cppn(rng, 5), 16, 16);
        Archive a = Archive::grid(Bounds::unit(2), {8, 8});
        for (int i = 0; i < 200; ++i) {
            CppnGenome g = random_cppn(rng, static_cast<int>(rng.index(8)));
            const Evaluation e = cppn_image_evaluate(g, target);
            a.try_insert({std::move(g), e});
        }
        const TempDir t1, t2;
        save_archive(a, {-1., 0.}, GenomeKind::cppn, t1.path());
        const StoredArchive loaded = load_archive(t1.path());
        CHECK(loaded.genome_kind == GenomeKind::cppn);
        REQUIRE(loaded.archive.size() == a.size());
        for (std::size_t n : a.filled_sorted()) {
            const auto& x = std::get<CppnGenome>(a.find(n)->genome);
            const auto& y = std::get<CppnGenome>(loaded.archive.find(n)->genome);
            CHECK(cppn_render(x, 16, 16) == cppn_render(y, 16, 16));
        }
        save_archive(loaded.archive, loaded.fitness_bounds, loaded.genome_kind, t2.path());
        CHECK(slurp(t1.path() / "archive.csv") == slurp(t2.path() / "archive.csv"));
    }

    TEST_CASE("cppn text format")
    {
        CppnGenome g = CppnGenome::minimal(Activation::sine);
        g.edges.push_back({0, 4, 0.1});
        const std::string text = serialize_cppn(g);
        CHECK(text == "node,0,input\nnode,1,input\nnode,2,input\nnode,3,input\nnode,4,sine\nedge,0,4,0.10000000000000001\n");
        CHECK(parse_cppn(text, "g.cppn") == g);
        CHECK_THROWS_WITH_AS(parse_cppn("node,0,input\nbogus\n", "g.cppn"), doctest::Contains("g.cppn:2:"), FormatError);
        CHECK_THROWS_WITH_AS(parse_cppn("node,0,input\nnode,4,cosine\n", "g.cppn"), doctest::Contains("g.cppn:2:"), FormatError);
    }

    TEST_CASE("corrupt files name the file and line")
    {
        const TempDir tmp;
        save_archive(two_elite_grid(), {-1., 1.}, GenomeKind::real_vector, tmp.path());
        const fs::path csv = tmp.path() / "archive.csv";
        const std::string good = slurp(csv);

        write(csv, good + "33,0.3,0.3,oops,0.1;0.2\n");
        CHECK_THROWS_WITH_AS(load_archive(tmp.path()), doctest::Contains("archive.csv:4:"), FormatError);

        write(csv, good + "34,0.3,0.3,0.1,0.1;0.2\n");
        CHECK_THROWS_WITH_AS(load_archive(tmp.path()), doctest::Contains("archive.csv:4: niche 34 does not match"), FormatError);

        write(csv, good + "12,0.1,0.2\n");
        CHECK_THROWS_WITH_AS(load_archive(tmp.path()), doctest::Contains("archive.csv:4:"), FormatError);

        write(csv, "niche,fitness\n");
        CHECK_THROWS_WITH_AS(load_archive(tmp.path()), doctest::Contains("archive.csv:1:"), FormatError);

        write(csv, good);
        write(tmp.path() / "archive.meta", "kind = grid\ndim = two\n");
        CHECK_THROWS_WITH_AS(load_archive(tmp.path()), doctest::Contains("archive.meta:2:"), FormatError);

        fs::remove(tmp.path() / "archive.meta");
        CHECK_THROWS_WITH_AS(load_archive(tmp.path()), doctest::Contains("archive.meta"), FormatError);
    }

    TEST_CASE("atomic writes leave no temporary behind")
    {
        const TempDir tmp;
        write_file_atomic(tmp.path() / "a.txt", "one");
        write_file_atomic(tmp.path() / "a.txt", "two");
        CHECK(slurp(tmp.path() / "a.txt") == "two");
        int files = 0;
        for ([[maybe_unused]] const auto& e : fs::directory_iterator(tmp.path()))
            ++files;
        CHECK(files == 1);
    }

    TEST_CASE("metrics and trial logs")
    {
        CHECK(metrics_csv({{100, 0.5, 1.25, -0.1}}) == "evals,coverage,qd_score,best_fitness\n100,0.5,1.25,-0.10000000000000001\n");
        CHECK(trials_csv({{1, 7, -0.5, -0.25, 0.5, -0.125}}) == "trial,niche,prior_mean,posterior_mean,posterior_sd,observed\n1,7,-0.5,-0.25,0.5,-0.125\n");
    }
}
