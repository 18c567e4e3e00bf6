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

#include "circnorm/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circnorm/errors.hpp"

namespace circnorm {

namespace {

void trim_exact_zeros(std::vector<Complex>& c) {
    while (c.size() > 1 && c.back() == Complex{}) c.pop_back();
    if (c.empty()) c.push_back({});
}

void trim_relative(std::vector<Complex>& c, double rel) {
    double peak = 0.0;
    for (const auto& x : c) peak = std::max(peak, std::abs(x));
    const double cut = rel * peak;
    while (c.size() > 1 && std::abs(c.back()) <= cut) c.pop_back();
}

void check_length(std::size_t len, const MulOptions& opts) {
    if (len > opts.max_coeffs)
        throw ResourceError("product needs " + std::to_string(len) + " coefficients, cap is " +
                            std::to_string(opts.max_coeffs));
}

std::vector<Complex> convolve_direct(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Complex{}) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

}  // namespace

Poly::Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim_exact_zeros(coeffs_); }

Poly Poly::monomial(std::size_t power, Complex c) {
    std::vector<Complex> v(power + 1);
    v[power] = c;
    return Poly(std::move(v));
}

Complex Poly::operator()(Complex z) const noexcept {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex LaurentPoly::coeff(std::int64_t k) const noexcept {
    if (k < k_min || k > k_max()) return {};
    return coeffs[static_cast<std::size_t>(k - k_min)];
}

Complex LaurentPoly::operator()(Complex z) const {
    if (z == Complex{} && k_min < 0) throw DomainError("Laurent polynomial with negative powers evaluated at 0");
    Complex acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc * std::pow(z, static_cast<double>(k_min));
}

Poly poly_add(const Poly& p, const Poly& q) {
    const auto a = p.coeffs();
    const auto b = q.coeffs();
    std::vector<Complex> out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return Poly(std::move(out));
}

Poly poly_scale(const Poly& p, Complex s) {
    std::vector<Complex> out(p.coeffs().begin(), p.coeffs().end());
    for (auto& c : out) c *= s;
    return Poly(std::move(out));
}

MulBackend resolve_backend(std::size_t result_len, const MulOptions& opts) noexcept {
    if (opts.backend != MulBackend::automatic) return opts.backend;
    return result_len >= opts.fft_threshold ? MulBackend::fft : MulBackend::direct;
}

std::vector<Complex> convolve(std::span<const Complex> a, std::span<const Complex> b, const MulOptions& opts) {
    if (a.empty() || b.empty()) return {Complex{}};
    const std::size_t len = a.size() + b.size() - 1;
    check_length(len, opts);
    if (resolve_backend(len, opts) == MulBackend::direct) return convolve_direct(a, b);

    const std::size_t n = fft::next_pow2(len);
    std::vector<Complex> fa(n), fb(n);
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    fft::transform(fa, false);
    fft::transform(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft::transform(fa, true);
    fa.resize(len);
    return fa;
}

std::vector<Complex> convolve_square(std::span<const Complex> a, const MulOptions& opts) {
    if (a.empty()) return {Complex{}};
    const std::size_t len = 2 * a.size() - 1;
    check_length(len, opts);
    if (resolve_backend(len, opts) == MulBackend::direct) return convolve_direct(a, a);

    const std::size_t n = fft::next_pow2(len);
    std::vector<Complex> fa(n);
    std::copy(a.begin(), a.end(), fa.begin());
    fft::transform(fa, false);
    for (auto& x : fa) x *= x;
    fft::transform(fa, true);
    fa.resize(len);
    return fa;
}

Poly poly_mul(const Poly& p, const Poly& q, const MulOptions& opts) {
    if (p.is_zero() || q.is_zero()) return Poly{};
    auto out = convolve(p.coeffs(), q.coeffs(), opts);
    const std::size_t len = p.coeffs().size() + q.coeffs().size() - 1;
    if (opts.trim_fft_noise && resolve_backend(len, opts) == MulBackend::fft) trim_relative(out, 1e-14);
    return Poly(std::move(out));
}

Poly poly_derivative(const Poly& p) {
    const auto a = p.coeffs();
    if (a.size() == 1) return Poly{};
    std::vector<Complex> out(a.size() - 1);
    for (std::size_t j = 1; j < a.size(); ++j) out[j - 1] = static_cast<double>(j) * a[j];
    return Poly(std::move(out));
}

LaurentPoly conj_reflect(const Poly& p) {
    const auto a = p.coeffs();
    LaurentPoly f;
    f.k_min = -static_cast<std::int64_t>(p.degree());
    f.coeffs.assign(a.size(), {});
    for (std::size_t j = 0; j < a.size(); ++j) f.coeffs[a.size() - 1 - j] = std::conj(a[j]);
    return f;
}

LaurentPoly laurent_mul(const LaurentPoly& f, const LaurentPoly& g, const MulOptions& opts) {
    LaurentPoly out;
    out.k_min = f.k_min + g.k_min;
    out.coeffs = (&f == &g) ? convolve_square(f.coeffs, opts) : convolve(f.coeffs, g.coeffs, opts);
    return out;
}

LaurentPoly laurent_pow(const LaurentPoly& f, unsigned m, const MulOptions& opts) {
    if (m == 0) throw DomainError("laurent_pow needs m >= 1");
    // Right-to-left binary exponentiation.
    LaurentPoly base = f;
    LaurentPoly acc;
    bool have_acc = false;
    for (unsigned e = m;;) {
        if (e & 1u) {
            acc = have_acc ? laurent_mul(acc, base, opts) : base;
            have_acc = true;
        }
        e >>= 1;
        if (e == 0) break;
        base = laurent_mul(base, base, opts);
    }
    return acc;
}

AnalyticForm laurent_to_analytic(const LaurentPoly& f) {
    if (f.k_min < 0) return {Poly(f.coeffs), -f.k_min};
    std::vector<Complex> c(static_cast<std::size_t>(f.k_min) + f.coeffs.size());
    std::copy(f.coeffs.begin(), f.coeffs.end(), c.begin() + f.k_min);
    return {Poly(std::move(c)), 0};
}

double coeff_norm(std::span<const Complex> c, double r) {
    if (!(r >= 1.0)) throw DomainError("coefficient norm exponent must be in [1, inf]");
    double peak = 0.0;
    for (const auto& x : c) peak = std::max(peak, std::abs(x));
    if (r == kInf || peak == 0.0) return peak;
    if (r == 1.0) {
        double s = 0.0;
        for (const auto& x : c) s += std::abs(x);
        return s;
    }
    if (r == 2.0) {
        double s = 0.0;
        for (const auto& x : c) s += std::norm(x);
        return std::sqrt(s);
    }
    double s = 0.0;
    for (const auto& x : c) s += std::pow(std::abs(x) / peak, r);
    return peak * std::pow(s, 1.0 / r);
}

double coeff_norm(const Poly& p, double r) { return coeff_norm(p.coeffs(), r); }

}  // namespace circnorm
