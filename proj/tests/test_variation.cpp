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

#include <cmath>

#include <qdlab/errors.hpp>
#include <qdlab/variation.hpp>

using namespace qdlab;

TEST_SUITE("variation")
{
    TEST_CASE("zero scales are the identity")
    {
        Rng rng(1);
        const Bounds b = Bounds::uniform(5, -2., 2.);
        const RealVector g = (RealVector(5) << -1.5, 0.25, 1.999, -2., 2.).finished();

        VariationConfig cfg;
        cfg.sigma_gauss = 0.;
        cfg.p_mut = 1.;
        CHECK(mutate_gaussian(g, b, cfg, rng) == g);

        cfg = VariationConfig{};
        cfg.p_mut = 0.;
        CHECK(mutate_gaussian(g, b, cfg, rng) == g);

        cfg.sigma_iso = 0.;
        cfg.sigma_line = 0.;
        const RealVector g2 = RealVector::Constant(5, 0.3);
        CHECK(iso_line(g, g2, b, cfg, rng) == g);

        cfg.sigma_line = 0.7;
        CHECK(iso_line(g, g, b, cfg, rng) == g);
    }

    TEST_CASE("gaussian mutation matches its declared distribution")
    {
        Rng rng(7);
        const Bounds b = Bounds::uniform(1, -1., 1.);
        VariationConfig cfg;
        cfg.sigma_gauss = 0.05; // sd 0.1 on a range of 2: far from both edges
        cfg.p_mut = 1.;
        const RealVector g = RealVector::Zero(1);
        const int n = 100000;
        double sum = 0., sum2 = 0.;
        for (int i = 0; i < n; ++i) {
            const double x = mutate_gaussian(g, b, cfg, rng)(0);
            sum += x;
            sum2 += x * x;
        }
        const double mean = sum / n;
        const double sd = std::sqrt(sum2 / n - mean * mean);
        CHECK(std::abs(mean) <= 0.01 * 2.);
        CHECK(std::abs(sd - 0.1) <= 0.05 * 0.1);
    }

    TEST_CASE("iso_line children with no isotropic part lie on the parent line")
    {
        Rng rng(8);
        const Bounds b = Bounds::unit(3);
        const RealVector g1 = (RealVector(3) << 0.4, 0.5, 0.6).finished();
        const RealVector g2 = (RealVector(3) << 0.45, 0.48, 0.62).finished();
        const RealVector dir = g2 - g1;
        VariationConfig cfg;
        cfg.sigma_iso = 0.;
        cfg.sigma_line = 0.2;

        const int n = 100000;
        double s1 = 0., s2 = 0., s4 = 0., worst = 0.;
        for (int i = 0; i < n; ++i) {
            const RealVector delta = iso_line(g1, g2, b, cfg, rng) - g1;
            const double c = delta.dot(dir) / dir.squaredNorm();
            worst = std::max(worst, (delta - c * dir).norm());
            s1 += c;
            s2 += c * c;
            s4 += c * c * c * c;
        }
        CHECK(worst < 1e-12);
        const double mean = s1 / n;
        const double var = s2 / n - mean * mean;
        CHECK(std::abs(mean) < 4. * 0.2 / std::sqrt(n));
        CHECK(std::abs(std::sqrt(var) - 0.2) < 0.05 * 0.2);
        // Normal kurtosis is 3.
        CHECK(std::abs(s4 / n / (var * var) - 3.) < 0.15);
    }

    TEST_CASE("outputs stay inside the gene bounds")
    {
        Rng rng(9);
        const Bounds b{(RealVector(3) << -1, 0, 10).finished(), (RealVector(3) << 1, 0.1, 20).finished()};
        VariationConfig cfg;
        cfg.sigma_gauss = 2.;
        cfg.p_mut = 1.;
        cfg.sigma_iso = 1.;
        cfg.sigma_line = 3.;
        for (int i = 0; i < 2000; ++i) {
            const RealVector a = b.lo + (b.hi - b.lo).cwiseProduct(RealVector::Random(3).cwiseAbs());
            const RealVector c = b.lo + (b.hi - b.lo).cwiseProduct(RealVector::Random(3).cwiseAbs());
            const RealVector child = mutate_gaussian(iso_line(a, c, b, cfg, rng), b, cfg, rng);
            REQUIRE((child.array() >= b.lo.array()).all());
            REQUIRE((child.array() <= b.hi.array()).all());
        }
    }

    TEST_CASE("same substream, same child")
    {
        const Bounds b = Bounds::unit(4);
        const RealVector g1 = RealVector::Constant(4, 0.2);
        const RealVector g2 = RealVector::Constant(4, 0.7);
        const VariationConfig cfg;
        Rng r1 = Rng::substream(42, 7);
        Rng r2 = Rng::substream(42, 7);
        CHECK(mutate_gaussian(iso_line(g1, g2, b, cfg, r1), b, cfg, r1) == mutate_gaussian(iso_line(g1, g2, b, cfg, r2), b, cfg, r2));
    }

    TEST_CASE("vanishing sigma approaches the identity")
    {
        Rng rng(10);
        const Bounds b = Bounds::uniform(6, -3., 3.);
        VariationConfig cfg;
        cfg.sigma_gauss = 1e-12;
        cfg.p_mut = 1.;
        const RealVector g = RealVector::LinSpaced(6, -2., 2.);
        for (int i = 0; i < 100; ++i)
            CHECK((mutate_gaussian(g, b, cfg, rng) - g).cwiseAbs().maxCoeff() < 1e-6 * 6.);
    }

    TEST_CASE("iso_line rejects parents of different length")
    {
        Rng rng(1);
        CHECK_THROWS_AS(iso_line(RealVector::Zero(3), RealVector::Zero(4), Bounds::unit(3), VariationConfig{}, rng), InvalidInput);
    }
}
