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

#ifndef QDLAB_ERRORS_HPP
#define QDLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdlab {

    /// Precondition violated by the caller (bad dimensions, non-finite values, ...).
    class InvalidInput : public std::invalid_argument {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// A numerical routine could not complete, e.g. a failed Cholesky factorization.
    class NumericalError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Malformed or unreadable file / config text. The message names the file and line.
    class FormatError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

} // namespace qdlab

#endif
