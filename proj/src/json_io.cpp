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

#include "circnorm/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace circnorm::io {

namespace {

std::string number_text(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void dump_rec(const Json& j, std::ostream& os, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case Json::value_t::number_float:
            os << number_text(j.get<double>());
            return;
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                os << pad << Json(key).dump() << ": ";
                dump_rec(value, os, indent, depth + 1);
            }
            os << "\n" << close_pad << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            const bool flat = std::all_of(j.begin(), j.end(), is_scalar) ||
                              std::all_of(j.begin(), j.end(), [](const Json& e) {
                                  return e.is_array() && std::all_of(e.begin(), e.end(), is_scalar);
                              });
            if (flat) {
                os << "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    dump_rec(j[i], os, indent, depth + 1);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                dump_rec(j[i], os, indent, depth + 1);
            }
            os << "\n" << close_pad << "]";
            return;
        }
        default:
            os << j.dump();
    }
}

double number_from_json(const Json& j, const char* what) {
    if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
    return j.get<double>();
}

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

Json parse(std::string_view text, const std::string& source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << source << ": malformed JSON at line " << line << ", column " << col << " (byte " << e.byte << ")";
        throw InputError(os.str());
    }
}

Json read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

void dump(const Json& j, std::ostream& os, int indent) {
    dump_rec(j, os, indent, 0);
    os << "\n";
}

std::string dump(const Json& j, int indent) {
    std::ostringstream os;
    dump(j, os, indent);
    return os.str();
}

double parse_exponent(std::string_view text) {
    const std::string s = lower(std::string(text));
    if (s == "inf" || s == "infinity") return kInf;
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(s, &used);
        if (used != s.size()) throw InputError("");
    } catch (const std::exception&) {
        throw InputError("exponent \"" + std::string(text) + "\" is not a number or \"inf\"");
    }
    if (!(v >= 1.0)) throw InputError("exponent must be in [1, inf]");
    return v;
}

double parse_exponent(const Json& j) {
    if (j.is_string()) return parse_exponent(std::string_view(j.get<std::string>()));
    const double v = number_from_json(j, "exponent");
    if (!(v >= 1.0)) throw InputError("exponent must be in [1, inf]");
    return v;
}

Json exponent_to_json(double p) { return p == kInf ? Json("inf") : Json(p); }

std::vector<Complex> complex_array_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("expected an array of numbers or [re, im] pairs");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (e.is_number()) {
            out.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw InputError("array entries must be numbers or [re, im] pairs");
        }
    }
    return out;
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json complex_array_to_json(std::span<const Complex> c) {
    Json out = Json::array();
    for (const auto& x : c) out.push_back(complex_to_json(x));
    return out;
}

std::vector<Complex> coefficients_from_json(const Json& j) {
    auto c = complex_array_from_json(j.is_object() ? require(j, "coeffs") : j);
    if (c.empty()) throw InputError("coefficient array is empty");
    return c;
}

Poly poly_from_json(const Json& j) { return Poly(coefficients_from_json(j)); }

Json poly_to_json(const Poly& p) { return complex_array_to_json(p.coeffs()); }

LaurentPoly laurent_from_json(const Json& j) {
    LaurentPoly f;
    f.coeffs = coefficients_from_json(j);
    if (j.is_object() && j.contains("k_min")) {
        if (!j["k_min"].is_number_integer()) throw InputError("k_min must be an integer");
        f.k_min = j["k_min"].get<std::int64_t>();
    }
    return f;
}

Json laurent_to_json(const LaurentPoly& f) {
    Json out;
    out["k_min"] = f.k_min;
    out["coeffs"] = complex_array_to_json(f.coeffs);
    return out;
}

NormedSpace space_from_json(const Json& j) {
    NormedSpace V;
    const Json& dim = require(j, "dim");
    if (!dim.is_number_unsigned()) throw InputError("space.dim must be a positive integer");
    V.dim = dim.get<std::size_t>();
    const std::string field = j.value("field", std::string("real"));
    if (field == "real")
        V.field = Field::real;
    else if (field == "complex")
        V.field = Field::complex;
    else
        throw InputError("space.field must be \"real\" or \"complex\"");
    const std::string kind = j.value("norm_kind", std::string("lr"));
    if (kind == "lr")
        V.kind = NormKind::lr;
    else if (kind == "weighted_lr")
        V.kind = NormKind::weighted_lr;
    else
        throw InputError("space.norm_kind must be \"lr\" or \"weighted_lr\"");
    V.r = parse_exponent(require(j, "r"));
    if (j.contains("weights")) {
        if (!j["weights"].is_array()) throw InputError("space.weights must be an array");
        for (const auto& w : j["weights"]) V.weights.push_back(number_from_json(w, "weight"));
    }
    try {
        V.validate();
    } catch (const DomainError& e) {
        throw InputError(std::string("space: ") + e.what());
    }
    return V;
}

Json space_to_json(const NormedSpace& V) {
    Json out;
    out["dim"] = V.dim;
    out["field"] = V.field == Field::real ? "real" : "complex";
    out["norm_kind"] = V.kind == NormKind::lr ? "lr" : "weighted_lr";
    out["r"] = exponent_to_json(V.r);
    if (V.kind == NormKind::weighted_lr) out["weights"] = V.weights;
    return out;
}

VFunction vfunction_from_json(const Json& j) {
    NormedSpace V = space_from_json(require(j, "space"));
    std::vector<std::string> points;
    if (j.contains("points")) {
        if (!j["points"].is_array()) throw InputError("points must be an array of labels");
        for (const auto& p : j["points"]) points.push_back(p.is_string() ? p.get<std::string>() : p.dump());
    }
    const Json& vals = require(j, "values");
    if (!vals.is_array()) throw InputError("values must be an array");
    std::vector<Complex> flat;
    std::size_t cols = 0;
    // Row-major flat array; nested rows of [re, im] pairs are accepted too.
    if (!vals.empty() && vals[0].is_array() && !vals[0].empty() && vals[0][0].is_array()) {
        if (vals.size() != V.dim) throw InputError("values has " + std::to_string(vals.size()) + " rows, dim is " + std::to_string(V.dim));
        cols = vals[0].size();
        for (const auto& r : vals) {
            auto row = complex_array_from_json(r);
            if (row.size() != cols) throw InputError("value rows have different lengths");
            flat.insert(flat.end(), row.begin(), row.end());
        }
    } else {
        flat = complex_array_from_json(vals);
        if (flat.size() % V.dim != 0) throw InputError("value count is not a multiple of the dimension");
        cols = flat.size() / V.dim;
    }
    if (cols == 0) throw InputError("a function needs at least one point");
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(V.dim), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < V.dim; ++i)
        for (std::size_t x = 0; x < cols; ++x)
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x)) = flat[i * cols + x];
    try {
        return VFunction(std::move(V), std::move(M), std::move(points));
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
}

Json vfunction_to_json(const VFunction& f) {
    Json out;
    out["space"] = space_to_json(f.space());
    out["points"] = f.points();
    Json flat = Json::array();
    const auto& M = f.values();
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index x = 0; x < M.cols(); ++x) flat.push_back(complex_to_json(M(i, x)));
    out["values"] = flat;
    return out;
}

Func1D func1d_from_json(const Json& j) {
    const Json& backend = require(j, "backend");
    if (!backend.is_string()) throw InputError("backend must be \"poly\" or \"grid\"");
    const std::string b = backend.get<std::string>();
    try {
        if (b == "poly") return Func1D::poly(coefficients_from_json(require(j, "coeffs")));
        if (b == "grid") return Func1D::grid(complex_array_from_json(require(j, "samples")));
    } catch (const InputError&) {
        throw;
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    throw InputError("backend must be \"poly\" or \"grid\"");
}

Json func1d_to_json(const Func1D& f) {
    Json out;
    if (f.is_poly()) {
        out["backend"] = "poly";
        out["coeffs"] = complex_array_to_json(f.data());
    } else {
        out["backend"] = "grid";
        out["samples"] = complex_array_to_json(f.data());
    }
    return out;
}

}  // namespace circnorm::io
