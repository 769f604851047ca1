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

#ifndef QDLAB_GP_HPP
#define QDLAB_GP_HPP

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <string>
#include <utility>

#include <qdlab/errors.hpp>

namespace qdlab {

    /// Gaussian-process regression with a squared-exponential kernel
    ///   k(a, b) = sigma_f^2 exp(-|a - b|^2 / (2 l^2))
    /// on residuals from a user-supplied prior mean.
    template <typename Scalar = double>
    class GaussianProcess {
    public:
        using vec_t = Eigen::Matrix<Scalar, -1, 1>;
        using mat_t = Eigen::Matrix<Scalar, -1, -1>;
        using mean_fn_t = std::function<Scalar(const vec_t&)>;

        struct Params {
            Scalar length_scale = Scalar(0.2);
            Scalar sigma_f = Scalar(0.5);
            Scalar sigma_n = Scalar(0.01);
        };

        struct Posterior {
            vec_t mean;
            vec_t variance;
        };

        GaussianProcess(const Params& params, mean_fn_t prior_mean, Eigen::Index dim)
            : _params(params), _prior_mean(std::move(prior_mean)), _samples(0, dim), _observations(0), _residuals(0)
        {
            if (!(params.length_scale > 0) || !(params.sigma_f > 0) || !(params.sigma_n >= 0))
                throw InvalidInput("GaussianProcess: need length_scale > 0, sigma_f > 0, sigma_n >= 0");
        }

        const Params& params() const { return _params; }
        Eigen::Index dim() const { return _samples.cols(); }
        Eigen::Index num_samples() const { return _samples.rows(); }
        const mat_t& samples() const { return _samples; }
        const vec_t& observations() const { return _observations; }

        Scalar prior_mean(const vec_t& x) const { return _prior_mean(x); }

        template <typename DerivedA, typename DerivedB>
        Scalar kernel(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) const
        {
            const Scalar d2 = (a - b).squaredNorm();
            return _params.sigma_f * _params.sigma_f * std::exp(-d2 / (Scalar(2) * _params.length_scale * _params.length_scale));
        }

        /// Adds one observation and refactorizes.
        void add_sample(const vec_t& x, Scalar y)
        {
            if (x.size() != dim())
                throw InvalidInput("GaussianProcess: sample dimension mismatch");
            const Eigen::Index n = num_samples();
            _samples.conservativeResize(n + 1, Eigen::NoChange);
            _samples.row(n) = x.transpose();
            _observations.conservativeResize(n + 1);
            _observations(n) = y;
            _refactor();
        }

        /// Replaces the training set (rows of `x`).
        void set_samples(const mat_t& x, const vec_t& y)
        {
            if (x.cols() != dim() || x.rows() != y.size())
                throw InvalidInput("GaussianProcess: training set shape mismatch");
            _samples = x;
            _observations = y;
            _refactor();
        }

        /// Posterior mean and variance at each row of `queries`.
        Posterior posterior(const mat_t& queries) const
        {
            if (queries.cols() != dim())
                throw InvalidInput("GaussianProcess: query dimension mismatch");
            const Eigen::Index m = queries.rows();
            const Eigen::Index n = num_samples();
            Posterior post{vec_t(m), vec_t(m)};
            const Scalar prior_var = _params.sigma_f * _params.sigma_f;
            for (Eigen::Index q = 0; q < m; ++q) {
                const vec_t xq = queries.row(q).transpose();
                const Scalar mq = _prior_mean(xq);
                if (n == 0) {
                    post.mean(q) = mq;
                    post.variance(q) = prior_var;
                    continue;
                }
                vec_t k_star(n);
                for (Eigen::Index i = 0; i < n; ++i)
                    k_star(i) = kernel(_samples.row(i).transpose(), xq);
                post.mean(q) = mq + k_star.dot(_alpha);
                const vec_t v = _llt.matrixL().solve(k_star);
                post.variance(q) = std::max(Scalar(0), prior_var - v.squaredNorm());
            }
            return post;
        }

    private:
        void _refactor()
        {
            const Eigen::Index n = num_samples();
            mat_t k(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j <= i; ++j)
                    k(i, j) = k(j, i) = kernel(_samples.row(i).transpose(), _samples.row(j).transpose());
            k.diagonal().array() += _params.sigma_n * _params.sigma_n;

            _llt.compute(k);
            // Exactly repeated inputs without noise give a singular matrix that
            // LLT can still push through with a round-off pivot.
            const Scalar floor = std::sqrt(std::numeric_limits<Scalar>::epsilon()) * _params.sigma_f * Scalar(1e-4);
            if (_llt.info() != Eigen::Success || (n > 0 && _llt.matrixLLT().diagonal().minCoeff() <= floor))
                throw NumericalError("GaussianProcess: kernel matrix with " + std::to_string(n)
                    + " samples is not positive definite (duplicate inputs with sigma_n = " + std::to_string(static_cast<double>(_params.sigma_n)) + "?)");

            _residuals.resize(n);
            for (Eigen::Index i = 0; i < n; ++i)
                _residuals(i) = _observations(i) - _prior_mean(_samples.row(i).transpose());
            _alpha = _llt.solve(_residuals);
        }

        Params _params;
        mean_fn_t _prior_mean;
        mat_t _samples;
        vec_t _observations;
        vec_t _residuals;
        vec_t _alpha;
        Eigen::LLT<mat_t> _llt;
    };

} // namespace qdlab

#endif
