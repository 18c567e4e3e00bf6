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
 * @file poly.hpp
 * @brief Dense complex polynomials and two-sided (Laurent) polynomials.
 *
 * A Poly holds a_0..a_n with index = power of z. Canonical form drops trailing
 * coefficients that are exactly zero, so the zero polynomial is the single
 * coefficient 0. A LaurentPoly holds c_k for k in [k_min, k_max] and is never
 * trimmed; its index range is part of its value.
 */

#ifndef CIRCNORM_POLY_HPP
#define CIRCNORM_POLY_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace circnorm {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Default cap on the number of coefficients any product may produce.
inline constexpr std::size_t kDefaultMaxCoeffs = std::size_t{1} << 24;

enum class MulBackend { direct, fft, automatic };

struct MulOptions {
    MulBackend backend = MulBackend::automatic;
    /// `automatic` uses FFT once the result length reaches this.
    std::size_t fft_threshold = 64;
    std::size_t max_coeffs = kDefaultMaxCoeffs;
    /// Drop trailing coefficients below 1e-14 * max|c| after an FFT product.
    bool trim_fft_noise = false;
};

class Poly {
   public:
    Poly() : coeffs_{Complex{0.0, 0.0}} {}
    explicit Poly(std::vector<Complex> coeffs);
    Poly(std::initializer_list<Complex> coeffs) : Poly(std::vector<Complex>(coeffs)) {}

    static Poly monomial(std::size_t power, Complex c = {1.0, 0.0});

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    const Complex& operator[](std::size_t j) const { return coeffs_.at(j); }
    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == Complex{}; }

    /// Horner evaluation.
    Complex operator()(Complex z) const noexcept;

    friend bool operator==(const Poly&, const Poly&) = default;

   private:
    std::vector<Complex> coeffs_;
};

struct LaurentPoly {
    std::int64_t k_min = 0;
    std::vector<Complex> coeffs{Complex{}};

    std::int64_t k_max() const noexcept { return k_min + static_cast<std::int64_t>(coeffs.size()) - 1; }
    /// c_k, zero outside [k_min, k_max].
    Complex coeff(std::int64_t k) const noexcept;
    Complex operator()(Complex z) const;

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
};

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_scale(const Poly& p, Complex s);
Poly poly_mul(const Poly& p, const Poly& q, const MulOptions& opts = {});
Poly poly_derivative(const Poly& p);

/// On |z| = 1, conj(p(z)) = sum conj(a_j) z^{-j}.
LaurentPoly conj_reflect(const Poly& p);

LaurentPoly laurent_mul(const LaurentPoly& f, const LaurentPoly& g, const MulOptions& opts = {});
LaurentPoly laurent_pow(const LaurentPoly& f, unsigned m, const MulOptions& opts = {});

struct AnalyticForm {
    Poly poly;
    std::int64_t shift = 0;
};

/// Multiplies f by z^{-k_min} when k_min < 0 so the result is an ordinary
/// polynomial with the same modulus on the unit circle.
AnalyticForm laurent_to_analytic(const LaurentPoly& f);

/// l^r norm of the coefficient vector, r in [1, inf].
double coeff_norm(const Poly& p, double r);
double coeff_norm(std::span<const Complex> c, double r);

/// Which algorithm `convolve` will run for a result of the given length.
MulBackend resolve_backend(std::size_t result_len, const MulOptions& opts) noexcept;

/// Raw linear convolution, no trimming. Throws ResourceError past max_coeffs.
std::vector<Complex> convolve(std::span<const Complex> a, std::span<const Complex> b, const MulOptions& opts = {});
std::vector<Complex> convolve_square(std::span<const Complex> a, const MulOptions& opts = {});

namespace fft {

/// In-place radix-2 transform; size must be a power of two. `inverse`
/// applies the conjugate twiddles and the 1/N factor.
void transform(std::span<Complex> data, bool inverse);

std::size_t next_pow2(std::size_t n) noexcept;

/// Componentwise error bound factor for an FFT convolution of size n:
/// |computed_k - exact_k| <= factor * ||a||_2 * ||b||_2.
double convolution_error_factor(std::size_t n) noexcept;

}  // namespace fft

}  // namespace circnorm

#endif
