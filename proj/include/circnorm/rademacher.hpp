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
 * @file rademacher.hpp
 * @brief Sign ensembles and Khintchine-type moment averages.
 *
 * A sign string s = (s_0, ..., s_n) in {+1, -1}^{n+1} is stored as a bitmask
 * with bit j set exactly when s_j = -1. Averages over all 2^{n+1} strings are
 * computed exhaustively (Gray-code order, so each step flips one sign) or by
 * Monte Carlo over a counter-based stream.
 */

#ifndef CIRCNORM_RADEMACHER_HPP
#define CIRCNORM_RADEMACHER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "circnorm/poly.hpp"

namespace circnorm {

class SignString {
   public:
    SignString(std::uint64_t mask, unsigned length);
    /// From explicit entries, each +1 or -1.
    static SignString from_signs(std::span<const int> signs);

    std::uint64_t mask() const noexcept { return mask_; }
    unsigned length() const noexcept { return length_; }
    std::vector<int> signs() const;

    friend bool operator==(const SignString&, const SignString&) = default;

   private:
    std::uint64_t mask_;
    unsigned length_;
};

/// r_j(s) = s_j.
int rademacher_value(const SignString& s, unsigned j);

/// Coefficients a_j s_j. The string must have one entry per coefficient.
std::vector<Complex> apply_signs(std::span<const Complex> a, const SignString& s);
Poly apply_signs(const Poly& p, const SignString& s);

enum class SampleMode { exhaustive, monte_carlo };

struct MomentEstimate {
    double value = 0.0;
    SampleMode mode = SampleMode::exhaustive;
    std::uint64_t samples = 0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
};

struct EnsembleOptions {
    SampleMode mode = SampleMode::exhaustive;
    std::uint64_t samples = 65536;
    std::uint64_t seed = 0;
    /// 0 resolves through resolve_threads().
    unsigned threads = 0;
    /// Largest n + 1 allowed in exhaustive mode.
    unsigned exhaustive_cap = 22;
};

/// (2m - 1)!! = (2m)! / (2^m m!), the 2m-th moment of a standard Gaussian.
double gaussian_moment_constant(unsigned m);

/// 2^{-n-1} sum_s |sum_j b_j r_j(s)|^{2m}, or its Monte Carlo estimate.
MomentEstimate khintchine_moment(std::span<const Complex> b, unsigned m, const EnsembleOptions& opts = {});

struct RatioScanReport {
    unsigned n = 0;
    unsigned m = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double max_ratio = 0.0;
    double min_ratio = 0.0;
    std::vector<Complex> argmax;
    double reference = 0.0;
    bool within_reference = false;
};

/// Exhaustive moment / (sum |b_j|^2)^m over `trials` random unit complex
/// vectors of length n + 1, compared against (2m - 1)!!.
RatioScanReport khintchine_ratio_scan(unsigned n, unsigned m, std::uint64_t trials, std::uint64_t seed,
                                      const EnsembleOptions& opts = {});

/// Average over sign strings of the exact circle moment of p_s. In exhaustive
/// mode the result is checked against (2m - 1)!! (sum |a_j|^2)^m and a
/// violation raises ConsistencyError.
MomentEstimate ensemble_circle_moment(std::span<const Complex> a, unsigned m, const EnsembleOptions& opts = {});

}  // namespace circnorm

#endif
