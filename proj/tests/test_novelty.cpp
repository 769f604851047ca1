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

#include <algorithm>
#include <cmath>
#include <random>

#include <qdlab/errors.hpp>
#include <qdlab/novelty.hpp>

using namespace qdlab;

namespace {
    /// Sort every distance, average the first k.
    double brute_novelty(const Descriptor& q, const std::vector<Descriptor>& refs, int k)
    {
        if (refs.empty())
            return std::numeric_limits<double>::infinity();
        std::vector<double> d;
        for (const auto& r : refs) {
            double s = 0.;
            for (Eigen::Index j = 0; j < q.size(); ++j)
                s += (q(j) - r(j)) * (q(j) - r(j));
            d.push_back(std::sqrt(s));
        }
        std::sort(d.begin(), d.end());
        const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(k), d.size());
        double sum = 0.;
        for (std::size_t i = 0; i < m; ++i)
            sum += d[i];
        return sum / static_cast<double>(m);
    }
} // namespace

TEST_SUITE("novelty")
{
    TEST_CASE("novelty_score examples")
    {
        const std::vector<Descriptor> one{Eigen::Vector2d(0, 0)};
        CHECK(novelty_score(Eigen::Vector2d(3, 4), one, 1) == 5.0);

        const std::vector<Descriptor> two{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0)};
        CHECK(novelty_score(Eigen::Vector2d(0, 0), two, 2) == 0.5);
        // Fewer references than k: average over all of them.
        CHECK(novelty_score(Eigen::Vector2d(0, 0), two, 15) == 0.5);

        const std::vector<Descriptor> none;
        CHECK(novelty_score(Eigen::Vector2d(0, 0), none, 3) == max_novelty);
        CHECK(std::isinf(max_novelty));
    }

    TEST_CASE("novelty_score equals the sort-everything oracle")
    {
        std::mt19937_64 gen(17);
        std::uniform_real_distribution<double> u(-1., 1.);
        std::uniform_int_distribution<int> size(0, 200), kd(1, 20), dim(1, 5);
        for (int t = 0; t < 500; ++t) {
            const int d = dim(gen);
            std::vector<Descriptor> refs(static_cast<std::size_t>(size(gen)));
            for (auto& r : refs)
                r = Descriptor::NullaryExpr(d, [&] { return u(gen); });
            const Descriptor q = Descriptor::NullaryExpr(d, [&] { return u(gen); });
            const int k = kd(gen);
            REQUIRE(novelty_score(q, refs, k) == brute_novelty(q, refs, k));
        }
    }

    TEST_CASE("threshold admission")
    {
        NoveltyArchive a(0.1, 15);
        CHECK(a.update(Eigen::Vector2d(0, 0), max_novelty));
        CHECK(a.size() == 1);
        CHECK(a.update(Eigen::Vector2d(1, 0), 0.5));
        CHECK(a.size() == 2);
        CHECK_FALSE(a.update(Eigen::Vector2d(2, 0), 0.05));
        CHECK_FALSE(a.update(Eigen::Vector2d(2, 0), 0.1));
        CHECK(a.size() == 2);
        CHECK(a[1].descriptor(0) == 1.0);
        CHECK_THROWS_AS(NoveltyArchive(0., 15), InvalidInput);
    }
}
