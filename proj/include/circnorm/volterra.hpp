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
 * @file volterra.hpp
 * @brief The Volterra operator T(f)(x) = int_0^x f(s) ds on C[0,1].
 *
 * Two backends:
 *   poly  exact power-basis coefficients in x; T is exact
 *   grid  N + 1 samples at x_i = i / N with linear interpolation; T is the
 *         cumulative trapezoid rule, exact for the interpolant
 */

#ifndef CIRCNORM_VOLTERRA_HPP
#define CIRCNORM_VOLTERRA_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circnorm/poly.hpp"

namespace circnorm {

inline constexpr std::size_t kDefaultGridIntervals = 4096;

class Func1D {
   public:
    enum class Backend { poly, grid };

    /// Power-basis coefficients c_k of x^k; trailing zeros are trimmed.
    static Func1D poly(std::vector<Complex> coeffs);
    /// Samples at i / N for i = 0..N, N >= 1.
    static Func1D grid(std::vector<Complex> samples);
    /// Samples any function onto a uniform grid with N intervals.
    static Func1D sampled(const Func1D& f, std::size_t intervals = kDefaultGridIntervals);

    Backend backend() const noexcept { return backend_; }
    bool is_poly() const noexcept { return backend_ == Backend::poly; }
    /// Coefficients (poly) or samples (grid).
    std::span<const Complex> data() const noexcept { return data_; }
    std::size_t intervals() const noexcept { return data_.size() - 1; }
    bool is_real() const noexcept;

    Complex operator()(double x) const;

   private:
    Func1D(Backend b, std::vector<Complex> data) : backend_(b), data_(std::move(data)) {}

    Backend backend_;
    std::vector<Complex> data_;
};

/// sup |f| on [0, 1]. Grid: exact (|.| of a linear segment is convex, so the
/// maximum sits at a node). Poly: 4096 Chebyshev-density nodes refined by
/// golden-section search around the leading local maxima.
double sup_norm_01(const Func1D& f);

/// int_0^1 |f|. Grid: exact per segment. Poly: adaptive Gauss-Kronrod split
/// at sign changes of Re f and Im f.
double l1_norm_01(const Func1D& f);

Func1D volterra_apply(const Func1D& f);
Func1D volterra_iterate(const Func1D& f, unsigned n);

/// Grid iterates beyond 64 accumulate quadrature error; the warning text, if any.
std::optional<std::string> iterate_warning(const Func1D& f, unsigned n);

struct VolterraItemCheck {
    double sup_f = 0.0;
    double sup_iterate = 0.0;       // ||T^n f||
    double factorial_bound = 0.0;   // ||f|| / n!
    double factorial_slack = 0.0;
    double sup_once = 0.0;          // ||T f||
    double l1 = 0.0;                // int |f|
    double l1_slack = 0.0;
};

struct VolterraReport {
    unsigned n = 0;
    double tolerance = 0.0;
    std::vector<VolterraItemCheck> items;
    double sum_sup_once = 0.0;      // sum_j ||T f_j||
    double sup_abs_sum = 0.0;       // || sum_j |f_j| ||
    double sum_slack = 0.0;
};

/// Checks ||T^n f|| <= ||f|| / n!, ||T f|| <= int |f| for every f in the list,
/// and sum_j ||T f_j|| <= || sum_j |f_j| ||. Tolerance is 1e-9 (poly) or 1e-6
/// for grids with N >= 4096, widened by (4096 / N)^2 for the coarsest grid
/// below that; relative to max(1, right side). A violation beyond it raises
/// ConsistencyError.
VolterraReport volterra_norm_checks(std::span<const Func1D> fs, unsigned n);

}  // namespace circnorm

#endif
