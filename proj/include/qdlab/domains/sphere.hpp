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

#ifndef QDLAB_DOMAINS_SPHERE_HPP
#define QDLAB_DOMAINS_SPHERE_HPP

#include <qdlab/domain.hpp>

namespace qdlab {

    /// fitness = -sum (g_i - 0.5)^2, descriptor = (g_1, g_2). Genes in [0, 1], n >= 2.
    Evaluation sphere_evaluate(const RealVector& g);

    DomainSpec make_sphere_domain(int n);

} // namespace qdlab

#endif
