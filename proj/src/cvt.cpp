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

#include <qdlab/cvt.hpp>

#include <algorithm>
#include <limits>

#include <qdlab/errors.hpp>
#include <qdlab/parallel.hpp>
#include <qdlab/rng.hpp>

namespace qdlab {

    namespace {
        // Column-major copy of the centroids so the per-sample distance scan vectorizes over k.
        void assign(const Matrix& samples, const Matrix& centroids, std::vector<Eigen::Index>& labels, Vector& dist2)
        {
            const Eigen::Index n = samples.rows();
            const Vector c_norm = centroids.rowwise().squaredNorm();
            constexpr Eigen::Index block = 2048;
            const Eigen::Index blocks = (n + block - 1) / block;
            parallel_for(static_cast<std::size_t>(blocks), default_workers(), [&](std::size_t b) {
                const Eigen::Index begin = static_cast<Eigen::Index>(b) * block;
                const Eigen::Index rows = std::min(block, n - begin);
                // |c - x|^2 = |c|^2 - 2 c.x + |x|^2, the |x|^2 term is constant per sample.
                const Matrix cross = centroids * samples.middleRows(begin, rows).transpose();
                for (Eigen::Index i = 0; i < rows; ++i) {
                    Eigen::Index best;
                    (c_norm - 2. * cross.col(i)).minCoeff(&best);
                    labels[static_cast<std::size_t>(begin + i)] = best;
                    dist2(begin + i) = (centroids.row(best) - samples.row(begin + i)).squaredNorm();
                }
            });
        }
    } // namespace

    CvtResult build_cvt(const CvtParams& params, const Bounds& bounds)
    {
        const Eigen::Index d = bounds.size();
        const auto k = static_cast<Eigen::Index>(params.k);
        const auto n = static_cast<Eigen::Index>(params.n_samples);
        if (params.k < 1 || d < 1)
            throw InvalidInput("build_cvt: need k >= 1 and d >= 1");
        if (k > n)
            throw InvalidInput("build_cvt: k = " + std::to_string(k) + " exceeds n_samples = " + std::to_string(n));
        if (params.max_iters < 0)
            throw InvalidInput("build_cvt: max_iters must be >= 0");

        Rng rng(params.seed);
        Matrix samples(n, d);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                samples(i, j) = rng.uniform(bounds.lo(j), bounds.hi(j));

        // k-means++ seeding.
        Matrix centroids(k, d);
        Vector nearest2 = Vector::Constant(n, std::numeric_limits<double>::infinity());
        Eigen::Index pick = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
        for (Eigen::Index c = 0; c < k; ++c) {
            centroids.row(c) = samples.row(pick);
            nearest2 = nearest2.cwiseMin((samples.rowwise() - centroids.row(c)).rowwise().squaredNorm());
            if (c + 1 == k)
                break;
            const double total = nearest2.sum();
            if (!(total > 0.)) {
                pick = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
                continue;
            }
            double r = rng.uniform() * total;
            pick = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                r -= nearest2(i);
                if (r < 0.) {
                    pick = i;
                    break;
                }
            }
        }

        std::vector<Eigen::Index> labels(static_cast<std::size_t>(n), -1);
        std::vector<Eigen::Index> next(static_cast<std::size_t>(n));
        Vector dist2(n);
        CvtResult result;
        for (int it = 0; it < params.max_iters; ++it) {
            assign(samples, centroids, next, dist2);
            const bool changed = next != labels;
            labels = next;
            result.iterations = it + 1;
            if (!changed)
                break;

            Matrix sums = Matrix::Zero(k, d);
            std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
            for (Eigen::Index i = 0; i < n; ++i) {
                sums.row(labels[static_cast<std::size_t>(i)]) += samples.row(i);
                ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
            }
            for (Eigen::Index c = 0; c < k; ++c) {
                if (counts[static_cast<std::size_t>(c)] > 0) {
                    centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
                    continue;
                }
                // Empty cluster: move it onto the worst-represented sample.
                Eigen::Index far;
                dist2.maxCoeff(&far);
                centroids.row(c) = samples.row(far);
                dist2(far) = 0.;
            }
        }

        assign(samples, centroids, labels, dist2);
        result.counts.assign(static_cast<std::size_t>(k), 0);
        for (auto l : labels)
            ++result.counts[static_cast<std::size_t>(l)];
        result.centroids = std::move(centroids);
        return result;
    }

} // namespace qdlab
