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

#include "circnorm/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "circnorm/errors.hpp"

namespace circnorm {

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;

struct NormBound {
    double value = 0.0;
    double err = 0.0;  // |value - exact| <= err
};

// Recursive summation of n terms, each with relative error <= t, is off by at
// most (n - 1 + t) u of the exact sum when all terms are nonnegative.
NormBound l1_bound(std::span<const Complex> c) {
    double s = 0.0;
    std::size_t nnz = 0;
    for (const auto& x : c) {
        if (x == Complex{}) continue;
        ++nnz;
        s += std::abs(x);
    }
    return {s, s * static_cast<double>(nnz + 2) * kUnit};
}

NormBound l2_bound(std::span<const Complex> c) {
    double s = 0.0;
    std::size_t nnz = 0;
    for (const auto& x : c) {
        if (x == Complex{}) continue;
        ++nnz;
        s += std::norm(x);
    }
    const double v = std::sqrt(s);
    return {v, v * static_cast<double>(nnz + 4) * kUnit};
}

// exp2((log2(x) + scale) / l), with a relative error allowance for the libm
// calls and the division.
struct Root {
    double value;
    double rel_err;
};

Root scaled_root(double x, std::int64_t scale, double l) {
    const double t = (std::log2(x) + static_cast<double>(scale)) / l;
    return {std::exp2(t), 8.0 * kUnit * (1.0 + std::abs(t))};
}

// Rescale by an exact power of two so that the l1 norm lands in [1/2, 1).
int renormalize(std::vector<Complex>& q, double& abs_err) {
    int e = 0;
    std::frexp(l1_bound(q).value, &e);
    if (e == 0) return 0;
    const double f = std::ldexp(1.0, -e);
    for (auto& x : q) x *= f;
    abs_err = abs_err * f + static_cast<double>(q.size()) * std::numeric_limits<double>::denorm_min();
    return e;
}

}  // namespace

double circle_moment_exact(const Poly& p, unsigned m, const MulOptions& opts) {
    if (m == 0) throw DomainError("circle moment order m must be >= 1");
    const LaurentPoly analytic{0, {p.coeffs().begin(), p.coeffs().end()}};
    const LaurentPoly modsq = laurent_mul(analytic, conj_reflect(p), opts);
    const Complex c0 = laurent_pow(modsq, m, opts).coeff(0);
    if (std::abs(c0.imag()) > kMomentImagTolerance * std::abs(c0.real())) {
        std::ostringstream os;
        os.precision(17);
        os << "circle moment has imaginary residue " << c0.imag() << " against real part " << c0.real();
        throw ConsistencyError(os.str());
    }
    return std::max(c0.real(), 0.0);
}

Enclosure sup_norm_enclosure(const Poly& p, const EnclosureOptions& opts) {
    if (p.is_zero()) throw DomainError("sup norm enclosure of the zero polynomial");
    if (!(opts.rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
    if (opts.max_doublings < 0) throw DomainError("max_doublings must be nonnegative");

    // z^v q(z) has the same modulus on the circle as q; drop the low zeros.
    auto c = p.coeffs();
    std::size_t valuation = 0;
    while (c[valuation] == Complex{}) ++valuation;
    std::vector<Complex> q(c.begin() + static_cast<std::ptrdiff_t>(valuation), c.end());

    // Invariant: p^l / z^{v l} = 2^scale * Q with ||Q - q||_1 <= abs_err.
    double abs_err = 0.0;
    std::int64_t scale = renormalize(q, abs_err);
    double l = 1.0;

    Enclosure enc;
    enc.lo = 0.0;
    enc.hi = kInf;
    for (int k = 0;; ++k) {
        const NormBound n1 = l1_bound(q);
        const NormBound n2 = l2_bound(q);

        const Root up = scaled_root(n1.value + n1.err + abs_err, scale, l);
        enc.hi = std::min(enc.hi, up.value * (1.0 + up.rel_err));
        const double lower = n2.value - n2.err - abs_err;
        if (lower > 0.0) {
            const Root down = scaled_root(lower, scale, l);
            enc.lo = std::max(enc.lo, down.value * (1.0 - down.rel_err));
        }
        if (enc.lo > enc.hi) throw ConsistencyError("sup norm enclosure collapsed: lo > hi");

        enc.doublings_used = k;
        enc.relative_width = (enc.hi - enc.lo) / std::max(enc.hi, std::numeric_limits<double>::min());
        if (enc.relative_width <= opts.rel_tol) {
            enc.converged = true;
            break;
        }
        if (k == opts.max_doublings) break;

        const std::size_t next_len = 2 * q.size() - 1;
        if (next_len > opts.mul.max_coeffs) {
            enc.capped = true;
            break;
        }

        // ||Q^2 - fl(q^2)||_1 <= ||Q - q||_1 ||Q + q||_1 + rounding of the square.
        const double q1 = n1.value + n1.err;
        const double q2 = n2.value + n2.err;
        double rounding = 0.0;
        if (resolve_backend(next_len, opts.mul) == MulBackend::fft) {
            rounding = static_cast<double>(next_len) * fft::convolution_error_factor(next_len) * q2 * q2;
        } else {
            rounding = 1.01 * static_cast<double>(q.size() + 3) * std::sqrt(5.0) * kUnit * q1 * q1;
        }
        abs_err = abs_err * (2.0 * q1 + abs_err) + rounding;

        q = convolve_square(q, opts.mul);
        scale = 2 * scale + renormalize(q, abs_err);
        l *= 2.0;
    }
    return enc;
}

double sup_norm_sample(const Poly& p, std::size_t grid) {
    if (grid == 0) throw DomainError("sample grid must have at least one point");
    const double two_pi = 2.0 * std::numbers::pi;
    double best = 0.0;
    for (std::size_t t = 0; t < grid; ++t) {
        // Same expression for every grid, so a coarse grid's angles reappear
        // bit-for-bit in any refinement by a power of two.
        const double theta = two_pi * static_cast<double>(t) / static_cast<double>(grid);
        best = std::max(best, std::abs(p(std::polar(1.0, theta))));
    }
    return best;
}

double l1_estimate_via_derivative(const Poly&, const Enclosure& sup_p, const Enclosure& sup_dp) {
    return sup_p.hi + std::numbers::pi / std::sqrt(6.0) * sup_dp.hi;
}

double l1_estimate_via_derivative(const Poly& p, const EnclosureOptions& opts) {
    if (p.is_zero()) return 0.0;
    const Enclosure ep = sup_norm_enclosure(p, opts);
    const Poly dp = poly_derivative(p);
    const Enclosure edp = dp.is_zero() ? Enclosure{0.0, 0.0, 0, 0.0, true, false} : sup_norm_enclosure(dp, opts);
    return l1_estimate_via_derivative(p, ep, edp);
}

}  // namespace circnorm
