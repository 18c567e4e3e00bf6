/*
   Copyright 2026 The circnorm Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CIRCNORM_ERRORS_HPP
#define CIRCNORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace circnorm {

/// Argument outside the mathematical domain of an operation (bad exponent,
/// index out of range, shape mismatch, zero polynomial where nonzero needed).
class DomainError : public std::invalid_argument {
   public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured size cap (coefficient count, enumeration size) would be exceeded.
class ResourceError : public std::length_error {
   public:
    explicit ResourceError(const std::string& what) : std::length_error(what) {}
};

/// A checked identity or inequality failed beyond its tolerance. Signals an
/// implementation bug or a numerical breakdown, never bad user input.
class ConsistencyError : public std::logic_error {
   public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace circnorm

#endif
