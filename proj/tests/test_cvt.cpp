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

#include <qdlab/cvt.hpp>
#include <qdlab/errors.hpp>

using namespace qdlab;

TEST_SUITE("cvt")
{
    TEST_CASE("one centroid sits at the center of mass")
    {
        const auto r = build_cvt({1, 100000, 50, 1}, Bounds::unit(2));
        REQUIRE(r.centroids.rows() == 1);
        CHECK((r.centroids.row(0) - Eigen::RowVector2d(0.5, 0.5)).norm() < 0.02);
    }

    TEST_CASE("two centroids on the unit interval approach the optimal quantizer")
    {
        // The optimal 2-point quantizer of U[0, 1] puts its codewords at 1/4 and 3/4.
        const auto r = build_cvt({2, 100000, 100, 2}, Bounds::unit(1));
        const double a = std::min(r.centroids(0, 0), r.centroids(1, 0));
        const double b = std::max(r.centroids(0, 0), r.centroids(1, 0));
        CHECK(std::abs(a - 0.25) < 0.02);
        CHECK(std::abs(b - 0.75) < 0.02);
    }

    TEST_CASE("deterministic given inputs and seed")
    {
        const auto a = build_cvt({20, 5000, 30, 9}, Bounds::unit(2));
        const auto b = build_cvt({20, 5000, 30, 9}, Bounds::unit(2));
        const auto c = build_cvt({20, 5000, 30, 10}, Bounds::unit(2));
        CHECK(a.centroids == b.centroids);
        CHECK(a.centroids != c.centroids);
    }

    TEST_CASE("centroids stay inside the bounds")
    {
        const Bounds b{Eigen::Vector2d(-1, 2), Eigen::Vector2d(3, 2.5)};
        const auto r = build_cvt({50, 5000, 20, 4}, b);
        for (Eigen::Index i = 0; i < r.centroids.rows(); ++i) {
            CHECK(r.centroids(i, 0) >= -1);
            CHECK(r.centroids(i, 0) <= 3);
            CHECK(r.centroids(i, 1) >= 2);
            CHECK(r.centroids(i, 1) <= 2.5);
        }
    }

    TEST_CASE("cells are balanced for k = 100")
    {
        const auto r = build_cvt({100, 100000, 100, 3}, Bounds::unit(2));
        const double mean = 100000. / 100.;
        int balanced = 0;
        for (auto c : r.counts)
            balanced += (c >= 0.5 * mean && c <= 1.5 * mean);
        CHECK(balanced >= 90);
    }

    TEST_CASE("k larger than the sample count is rejected")
    {
        CHECK_THROWS_AS(build_cvt({11, 10, 5, 0}, Bounds::unit(2)), InvalidInput);
        CHECK_THROWS_AS(build_cvt({0, 10, 5, 0}, Bounds::unit(2)), InvalidInput);
    }
}
