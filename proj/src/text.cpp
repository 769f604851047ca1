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

#include <qdlab/text.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>

namespace qdlab {

    std::string format_real(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    std::optional<double> to_real(std::string_view text)
    {
        text = trim(text);
        if (!text.empty() && text.front() == '+')
            text.remove_prefix(1);
        double v = 0.;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v))
            return std::nullopt;
        return v;
    }

    std::optional<long long> to_integer(std::string_view text)
    {
        text = trim(text);
        if (!text.empty() && text.front() == '+')
            text.remove_prefix(1);
        long long v = 0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || ec != std::errc() || end != text.data() + text.size())
            return std::nullopt;
        return v;
    }

    std::optional<unsigned long long> to_unsigned(std::string_view text)
    {
        text = trim(text);
        if (!text.empty() && text.front() == '+')
            text.remove_prefix(1);
        if (text.empty() || text.front() == '-')
            return std::nullopt;
        unsigned long long v = 0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || end != text.data() + text.size())
            return std::nullopt;
        return v;
    }

    std::string_view trim(std::string_view s)
    {
        const auto ws = " \t\r\n";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string_view::npos)
            return {};
        const auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

    std::vector<std::string_view> split(std::string_view s, char sep)
    {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true) {
            const auto p = s.find(sep, start);
            if (p == std::string_view::npos) {
                out.push_back(s.substr(start));
                return out;
            }
            out.push_back(s.substr(start, p - start));
            start = p + 1;
        }
    }

} // namespace qdlab
