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

/**
 * @file json_io.hpp
 * @brief File formats shared by the CLI and output serialization.
 *
 *   polynomial   [c_0, c_1, ...], each entry a real or an [re, im] pair;
 *                also {"coeffs": [...]} and, for Laurent, {"k_min": k, "coeffs": [...]}
 *   VFunction    {"space": {"dim", "field", "norm_kind", "r", "weights"?},
 *                 "points": [labels], "values": row-major d x |E|}
 *   Func1D       {"backend": "poly", "coeffs": [...]} or {"backend": "grid", "samples": [...]}
 *
 * Output numbers are printed with 17 significant digits.
 */

#ifndef CIRCNORM_JSON_IO_HPP
#define CIRCNORM_JSON_IO_HPP

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "circnorm/errors.hpp"
#include "circnorm/finite_lp.hpp"
#include "circnorm/poly.hpp"
#include "circnorm/volterra.hpp"

namespace circnorm::io {

using Json = nlohmann::ordered_json;

/// Malformed or schema-violating input.
class InputError : public DomainError {
   public:
    explicit InputError(const std::string& what) : DomainError(what) {}
};

/// Parses text, reporting syntax errors with line and column.
Json parse(std::string_view text, const std::string& source = "<input>");
Json read_file(const std::string& path);

/// Serializes with 17 significant digits for every floating value.
void dump(const Json& j, std::ostream& os, int indent = 2);
std::string dump(const Json& j, int indent = 2);

/// "inf"/"infinity" (any case) or a number >= 1 as either a JSON number or string.
double parse_exponent(const Json& j);
double parse_exponent(std::string_view text);
Json exponent_to_json(double p);

std::vector<Complex> complex_array_from_json(const Json& j);
Json complex_to_json(Complex c);
Json complex_array_to_json(std::span<const Complex> c);

/// Coefficients exactly as written (no trimming), from an array or {"coeffs": ...}.
std::vector<Complex> coefficients_from_json(const Json& j);
Poly poly_from_json(const Json& j);
Json poly_to_json(const Poly& p);
LaurentPoly laurent_from_json(const Json& j);
Json laurent_to_json(const LaurentPoly& f);

NormedSpace space_from_json(const Json& j);
Json space_to_json(const NormedSpace& V);
VFunction vfunction_from_json(const Json& j);
Json vfunction_to_json(const VFunction& f);

Func1D func1d_from_json(const Json& j);
Json func1d_to_json(const Func1D& f);

}  // namespace circnorm::io

#endif
