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

#include "circnorm/rademacher.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "circnorm/circle.hpp"
#include "circnorm/errors.hpp"
#include "circnorm/parallel.hpp"

namespace circnorm {

namespace {

constexpr std::uint64_t kGrayChunk = 4096;
constexpr std::uint64_t kSampleChunk = 4096;
constexpr std::uint64_t kEnsembleChunk = 64;

// Running mean and sum of squared deviations; merged in chunk order.
struct Stats {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        count += 1.0;
        const double d = x - mean;
        mean += d / count;
        m2 += d * (x - mean);
    }

    void merge(const Stats& o) {
        if (o.count == 0.0) return;
        const double total = count + o.count;
        const double d = o.mean - mean;
        mean += d * (o.count / total);
        m2 += o.m2 + d * d * (count * o.count / total);
        count = total;
    }
};

double pow_m(double x, unsigned m) {
    double r = 1.0;
    for (unsigned i = 0; i < m; ++i) r *= x;
    return r;
}

std::uint64_t low_mask(unsigned len) { return len >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1; }

void check_order(unsigned m) {
    if (m == 0) throw DomainError("moment order m must be >= 1");
}

void check_exhaustive(std::size_t len, const EnsembleOptions& opts) {
    if (len > opts.exhaustive_cap)
        throw ResourceError("exhaustive enumeration over 2^" + std::to_string(len) + " sign strings exceeds cap 2^" +
                            std::to_string(opts.exhaustive_cap));
}

void check_length(std::size_t len) {
    if (len == 0) throw DomainError("coefficient vector is empty");
    if (len > 64) throw DomainError("sign strings are limited to 64 entries");
}

MomentEstimate finish_monte_carlo(const Stats& st, const EnsembleOptions& opts) {
    MomentEstimate est;
    est.mode = SampleMode::monte_carlo;
    est.value = st.mean;
    est.samples = opts.samples;
    est.seed = opts.seed;
    est.std_error = st.count > 1.0 ? std::sqrt(st.m2 / (st.count - 1.0) / st.count) : 0.0;
    return est;
}

// Monte Carlo over sign strings: sample i uses mask bits(i). Chunks are fixed
// in size and reduced in order, so the estimate does not depend on threads.
template <class Eval>
MomentEstimate monte_carlo(std::size_t len, const EnsembleOptions& opts, std::uint64_t chunk, Eval&& eval) {
    if (opts.samples == 0) throw DomainError("Monte Carlo needs at least one sample");
    const CounterRng rng(opts.seed);
    const std::uint64_t mask = low_mask(static_cast<unsigned>(len));
    const std::uint64_t chunks = (opts.samples + chunk - 1) / chunk;
    std::vector<Stats> parts(chunks);
    parallel_for(chunks, resolve_threads(opts.threads), [&](std::size_t c) {
        const std::uint64_t begin = c * chunk;
        const std::uint64_t end = std::min(opts.samples, begin + chunk);
        Stats st;
        for (std::uint64_t i = begin; i < end; ++i)
            st.push(eval(SignString(rng.bits(i) & mask, static_cast<unsigned>(len))));
        parts[c] = st;
    });
    Stats total;
    for (const auto& s : parts) total.merge(s);
    return finish_monte_carlo(total, opts);
}

}  // namespace

SignString::SignString(std::uint64_t mask, unsigned length) : mask_(mask), length_(length) {
    if (length == 0 || length > 64) throw DomainError("sign string length must be in [1, 64]");
    if ((mask & ~low_mask(length)) != 0) throw DomainError("sign mask has bits beyond the string length");
}

SignString SignString::from_signs(std::span<const int> signs) {
    if (signs.empty() || signs.size() > 64) throw DomainError("sign string length must be in [1, 64]");
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < signs.size(); ++j) {
        if (signs[j] == -1)
            mask |= std::uint64_t{1} << j;
        else if (signs[j] != 1)
            throw DomainError("sign entries must be +1 or -1");
    }
    return SignString(mask, static_cast<unsigned>(signs.size()));
}

std::vector<int> SignString::signs() const {
    std::vector<int> out(length_);
    for (unsigned j = 0; j < length_; ++j) out[j] = (mask_ >> j) & 1u ? -1 : 1;
    return out;
}

int rademacher_value(const SignString& s, unsigned j) {
    if (j >= s.length())
        throw DomainError("Rademacher index " + std::to_string(j) + " out of range for length " +
                          std::to_string(s.length()));
    return (s.mask() >> j) & 1u ? -1 : 1;
}

std::vector<Complex> apply_signs(std::span<const Complex> a, const SignString& s) {
    if (a.size() != s.length())
        throw DomainError("sign string length " + std::to_string(s.length()) + " does not match " +
                          std::to_string(a.size()) + " coefficients");
    std::vector<Complex> out(a.begin(), a.end());
    for (std::size_t j = 0; j < out.size(); ++j)
        if ((s.mask() >> j) & 1u) out[j] = -out[j];
    return out;
}

Poly apply_signs(const Poly& p, const SignString& s) { return Poly(apply_signs(p.coeffs(), s)); }

double gaussian_moment_constant(unsigned m) {
    double r = 1.0;
    for (unsigned k = 1; k <= m; ++k) r *= static_cast<double>(2 * k - 1);
    return r;
}

MomentEstimate khintchine_moment(std::span<const Complex> b, unsigned m, const EnsembleOptions& opts) {
    check_order(m);
    check_length(b.size());
    const std::size_t len = b.size();

    if (opts.mode == SampleMode::monte_carlo) {
        return monte_carlo(len, opts, kSampleChunk, [&](const SignString& s) {
            Complex sum{};
            for (std::size_t j = 0; j < len; ++j) sum += ((s.mask() >> j) & 1u) ? -b[j] : b[j];
            return pow_m(std::norm(sum), m);
        });
    }

    check_exhaustive(len, opts);
    // |S(-s)| = |S(s)|, so fix the last sign to +1 and walk the other len - 1
    // bits in Gray-code order: step i flips bit ctz(i).
    const unsigned free_bits = static_cast<unsigned>(len - 1);
    const std::uint64_t count = std::uint64_t{1} << free_bits;
    const std::uint64_t chunks = (count + kGrayChunk - 1) / kGrayChunk;
    std::vector<double> parts(chunks);
    parallel_for(chunks, resolve_threads(opts.threads), [&](std::size_t c) {
        const std::uint64_t begin = c * kGrayChunk;
        const std::uint64_t end = std::min(count, begin + kGrayChunk);
        std::uint64_t gray = begin ^ (begin >> 1);
        // Each chunk starts from a freshly summed state, which bounds drift.
        Complex sum{};
        for (std::size_t j = 0; j < len; ++j) sum += ((gray >> j) & 1u) ? -b[j] : b[j];
        double acc = pow_m(std::norm(sum), m);
        for (std::uint64_t i = begin + 1; i < end; ++i) {
            const unsigned j = static_cast<unsigned>(std::countr_zero(i));
            if ((gray >> j) & 1u)
                sum += 2.0 * b[j];
            else
                sum -= 2.0 * b[j];
            gray ^= std::uint64_t{1} << j;
            acc += pow_m(std::norm(sum), m);
        }
        parts[c] = acc;
    });
    double total = 0.0;
    for (double x : parts) total += x;

    MomentEstimate est;
    est.mode = SampleMode::exhaustive;
    est.value = total / static_cast<double>(count);
    est.samples = std::uint64_t{1} << len;
    return est;
}

RatioScanReport khintchine_ratio_scan(unsigned n, unsigned m, std::uint64_t trials, std::uint64_t seed,
                                      const EnsembleOptions& opts) {
    check_order(m);
    const std::size_t len = std::size_t{n} + 1;
    check_length(len);
    check_exhaustive(len, opts);
    if (trials == 0) throw DomainError("ratio scan needs at least one trial");

    RatioScanReport rep;
    rep.n = n;
    rep.m = m;
    rep.trials = trials;
    rep.seed = seed;
    rep.reference = gaussian_moment_constant(m);

    EnsembleOptions exhaustive = opts;
    exhaustive.mode = SampleMode::exhaustive;
    const CounterRng rng(seed, /*stream=*/1);
    std::vector<Complex> b(len);
    for (std::uint64_t t = 0; t < trials; ++t) {
        double norm2 = 0.0;
        for (std::size_t j = 0; j < len; ++j) {
            const std::uint64_t c = (t * len + j) * 2;
            b[j] = {rng.normal(c), rng.normal(c + 1)};
            norm2 += std::norm(b[j]);
        }
        const double scale = 1.0 / std::sqrt(norm2);
        norm2 = 0.0;
        for (auto& x : b) {
            x *= scale;
            norm2 += std::norm(x);
        }
        const double ratio = khintchine_moment(b, m, exhaustive).value / pow_m(norm2, m);
        if (t == 0 || ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.argmax = b;
        }
        if (t == 0 || ratio < rep.min_ratio) rep.min_ratio = ratio;
    }
    // Equality cases (m = 1, n = 0) land a few ulps either side of the reference.
    rep.within_reference = rep.max_ratio <= rep.reference * (1.0 + 1e-12);
    return rep;
}

MomentEstimate ensemble_circle_moment(std::span<const Complex> a, unsigned m, const EnsembleOptions& opts) {
    check_order(m);
    check_length(a.size());
    const std::size_t len = a.size();
    auto moment_of = [&](const SignString& s) { return circle_moment_exact(Poly(apply_signs(a, s)), m); };

    if (opts.mode == SampleMode::monte_carlo) return monte_carlo(len, opts, kEnsembleChunk, moment_of);

    check_exhaustive(len, opts);
    // p_{-s} = -p_s has the same moment: enumerate strings with s_n = +1.
    const std::uint64_t count = std::uint64_t{1} << (len - 1);
    const std::uint64_t chunks = (count + kEnsembleChunk - 1) / kEnsembleChunk;
    std::vector<double> parts(chunks);
    parallel_for(chunks, resolve_threads(opts.threads), [&](std::size_t c) {
        const std::uint64_t begin = c * kEnsembleChunk;
        const std::uint64_t end = std::min(count, begin + kEnsembleChunk);
        double acc = 0.0;
        for (std::uint64_t mask = begin; mask < end; ++mask) acc += moment_of(SignString(mask, static_cast<unsigned>(len)));
        parts[c] = acc;
    });
    double total = 0.0;
    for (double x : parts) total += x;

    MomentEstimate est;
    est.mode = SampleMode::exhaustive;
    est.value = total / static_cast<double>(count);
    est.samples = std::uint64_t{1} << len;

    double energy = 0.0;
    for (const auto& x : a) energy += std::norm(x);
    const double bound = gaussian_moment_constant(m) * pow_m(energy, m);
    if (est.value > bound + 1e-9 * std::max(1.0, bound))
        throw ConsistencyError("ensemble moment exceeds (2m-1)!! (sum |a_j|^2)^m");
    return est;
}

}  // namespace circnorm
