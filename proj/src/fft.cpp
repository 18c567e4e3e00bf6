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

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "circnorm/errors.hpp"
#include "circnorm/poly.hpp"

namespace circnorm::fft {

namespace {

// Twiddles exp(-2 pi i k / n) for k < n/2. Each entry is computed directly
// (no recurrence) so its error stays within a couple of ulps.
std::vector<Complex> twiddles(std::size_t n) {
    std::vector<Complex> tw(n / 2);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    const std::size_t eighth = n / 8;
    if (eighth == 0) {
        for (std::size_t k = 0; k < tw.size(); ++k)
            tw[k] = {std::cos(step * k), -std::sin(step * k)};
        return tw;
    }
    // First octant by libm, the rest by exact symmetries of the unit circle.
    for (std::size_t k = 0; k <= eighth; ++k)
        tw[k] = {std::cos(step * k), -std::sin(step * k)};
    const std::size_t quarter = n / 4;
    for (std::size_t k = eighth + 1; k < quarter; ++k) {
        const Complex& m = tw[quarter - k];  // angle pi/2 - theta
        tw[k] = {-m.imag(), -m.real()};
    }
    for (std::size_t k = quarter; k < n / 2; ++k) {
        const Complex& m = tw[k - quarter];  // angle theta - pi/2
        tw[k] = {m.imag(), -m.real()};
    }
    return tw;
}

}  // namespace

std::size_t next_pow2(std::size_t n) noexcept { return n <= 1 ? 1 : std::bit_ceil(n); }

void transform(std::span<Complex> data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || !std::has_single_bit(n)) throw DomainError("fft size must be a power of two");
    if (n == 1) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const std::vector<Complex> tw = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t j = 0; j < half; ++j) {
                Complex w = tw[j * stride];
                if (inverse) w = std::conj(w);
                const Complex u = data[base + j];
                const Complex v = data[base + j + half] * w;
                data[base + j] = u + v;
                data[base + j + half] = u - v;
            }
        }
    }

    if (inverse) {
        // 1/n is a power of two, so this scaling is exact.
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : data) x *= scale;
    }
}

double convolution_error_factor(std::size_t n) noexcept {
    constexpr double eps = std::numeric_limits<double>::epsilon() / 2;
    const double levels = static_cast<double>(std::bit_width(next_pow2(n)) - 1);
    // Forward, forward, inverse: 3L butterfly levels, each contributing an add
    // (eps), a complex multiply (sqrt(5) eps) and a twiddle error (2 eps),
    // plus the pointwise product. Doubled for headroom.
    return 2.0 * ((3.0 * levels) * (1.0 + std::sqrt(5.0) + 2.0) + std::sqrt(5.0) + 1.0) * eps;
}

}  // namespace circnorm::fft
