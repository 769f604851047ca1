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

#include <qdlab/novelty.hpp>

#include <qdlab/errors.hpp>

namespace qdlab {

    NoveltyArchive::NoveltyArchive(double rho, int k) : _rho(rho), _k(k)
    {
        if (!(rho > 0.) || k < 1)
            throw InvalidInput("novelty archive: need rho > 0 and k >= 1");
    }

    bool NoveltyArchive::update(const Descriptor& descriptor, double score, std::optional<Elite> elite)
    {
        if (!(score > _rho))
            return false;
        _entries.push_back({descriptor, std::move(elite)});
        return true;
    }

} // namespace qdlab
