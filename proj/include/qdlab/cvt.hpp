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

#ifndef QDLAB_CVT_HPP
#define QDLAB_CVT_HPP

#include <cstdint>
#include <vector>

#include <qdlab/types.hpp>

namespace qdlab {

    struct CvtParams {
        int k = 1000;
        std::size_t n_samples = 100000;
        int max_iters = 100;
        std::uint64_t seed = 0;
    };

    struct CvtResult {
        Matrix centroids; // k x d
        std::vector<std::size_t> counts; // samples per centroid under the final assignment
        int iterations = 0;
    };

    /// Centroidal Voronoi tessellation of `bounds` approximated by Lloyd's
    /// k-means on uniform samples, seeded k-means++ style (D^2 sampling).
    /// Clusters that empty out are moved to the sample farthest from its
    /// centroid. Deterministic in (params, bounds).
    CvtResult build_cvt(const CvtParams& params, const Bounds& bounds);

} // namespace qdlab

#endif
