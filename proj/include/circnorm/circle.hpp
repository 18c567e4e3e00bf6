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
 * @file circle.hpp
 * @brief Norms of polynomials on the unit circle.
 *
 * Moments (1/2pi) int |p|^{2m} are computed exactly as the constant Fourier
 * coefficient of (p * conj(p))^m. The sup norm is enclosed from the identity
 * ||p|| = lim ||p^l||_1^{1/l}: for every l,
 *
 *     ||p^l||_2^{1/l} <= ||p|| <= ||p^l||_1^{1/l},
 *
 * the left side by Parseval and the right by the triangle inequality. Taking
 * l = 2^k by repeated squaring, the ratio of the two sides is at most
 * (n l + 1)^{1/(2l)} by Cauchy-Schwarz, so the interval shrinks to ||p||.
 */

#ifndef CIRCNORM_CIRCLE_HPP
#define CIRCNORM_CIRCLE_HPP

#include <cstddef>

#include "circnorm/poly.hpp"

namespace circnorm {

struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;
    int doublings_used = 0;
    double relative_width = 0.0;
    bool converged = false;
    /// Stopped early because the next squaring would exceed the coefficient cap.
    bool capped = false;
};

struct EnclosureOptions {
    double rel_tol = 1e-3;
    int max_doublings = 14;
    MulOptions mul{};
};

/// Absolute imaginary residue, relative to the real part, tolerated in a moment.
inline constexpr double kMomentImagTolerance = 1e-10;

/// (1/2pi) int_T |p(z)|^{2m} |dz|.
double circle_moment_exact(const Poly& p, unsigned m, const MulOptions& opts = {});

/// Certified lo <= ||p|| <= hi. Floating-point error of every squaring is
/// tracked and pushed outward into the bounds.
Enclosure sup_norm_enclosure(const Poly& p, const EnclosureOptions& opts = {});

/// max |p| over the grid e^{2 pi i t / grid}; a lower bound for ||p||.
double sup_norm_sample(const Poly& p, std::size_t grid);

/// Upper bound for ||p||_1 from enclosures of ||p|| and ||p'||:
/// |a_0| <= ||p|| and sum_{j>=1} |a_j| <= (pi / sqrt 6) ||p'|| by
/// Cauchy-Schwarz against sum j^{-2} = pi^2 / 6.
double l1_estimate_via_derivative(const Poly& p, const Enclosure& sup_p, const Enclosure& sup_dp);

/// Same, computing both enclosures (a zero derivative gets the enclosure [0, 0]).
double l1_estimate_via_derivative(const Poly& p, const EnclosureOptions& opts = {});

}  // namespace circnorm

#endif
