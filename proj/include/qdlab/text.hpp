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

#ifndef QDLAB_TEXT_HPP
#define QDLAB_TEXT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qdlab {

    /// printf %.17g: enough digits to round-trip any double.
    std::string format_real(double v);

    /// Whole-string finite decimal, or nullopt.
    std::optional<double> to_real(std::string_view text);
    std::optional<long long> to_integer(std::string_view text);
    std::optional<unsigned long long> to_unsigned(std::string_view text);

    std::string_view trim(std::string_view s);
    std::vector<std::string_view> split(std::string_view s, char sep);

} // namespace qdlab

#endif
