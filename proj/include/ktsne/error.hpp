/*
 * Copyright (c) 2026, the ktsne authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace ktsne {

enum class ErrorKind {
    Parameter,    // out-of-range or inconsistent arguments
    Dimension,    // mismatched vector/matrix shapes
    Input,        // non-finite, degenerate, or otherwise unusable data
    Format,       // malformed file contents
    Io,           // filesystem failures
    Divergence,   // optimization produced non-finite or exploding values
    Unsupported,  // operation not defined for the given kernel kind
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace ktsne
