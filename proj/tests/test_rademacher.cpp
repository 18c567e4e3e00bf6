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

#include <doctest.h>

#include <random>

#include "circnorm/circle.hpp"
#include "circnorm/errors.hpp"
#include "circnorm/rademacher.hpp"
#include "oracles.hpp"

using namespace circnorm;

namespace {

double energy(const std::vector<Complex>& a) {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return s;
}

EnsembleOptions exhaustive(unsigned threads = 0) {
    EnsembleOptions o;
    o.mode = SampleMode::exhaustive;
    o.threads = threads;
    return o;
}

EnsembleOptions monte_carlo(std::uint64_t samples, std::uint64_t seed, unsigned threads = 0) {
    EnsembleOptions o;
    o.mode = SampleMode::monte_carlo;
    o.samples = samples;
    o.seed = seed;
    o.threads = threads;
    return o;
}

}  // namespace

TEST_CASE("rademacher_value examples") {
    const int pp[] = {1, 1};
    const int mp[] = {-1, 1};
    CHECK(rademacher_value(SignString::from_signs(pp), 0) == 1);
    CHECK(rademacher_value(SignString::from_signs(mp), 0) == -1);
    CHECK(rademacher_value(SignString::from_signs(mp), 1) == 1);
    CHECK_THROWS_AS(rademacher_value(SignString::from_signs(mp), 2), DomainError);
    const int bad[] = {1, 0};
    CHECK_THROWS_AS(SignString::from_signs(bad), DomainError);
    CHECK_THROWS_AS(SignString(4, 2), DomainError);
}

TEST_CASE("sign string round trip") {
    for (unsigned len = 1; len <= 11; ++len) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
            const SignString s(mask, len);
            const auto signs = s.signs();
            REQUIRE(signs.size() == len);
            for (unsigned j = 0; j < len; ++j) CHECK(signs[j] == rademacher_value(s, j));
            CHECK(SignString::from_signs(signs) == s);
        }
    }
}

TEST_CASE("apply_signs examples") {
    const Poly p{1.0, Complex{2.0, -1.0}, 3.0};
    CHECK(apply_signs(p, SignString(0, 3)) == p);
    CHECK(apply_signs(p, SignString(7, 3)) == poly_scale(p, -1.0));
    const int s[] = {1, -1};
    CHECK(apply_signs(Poly{1.0, 1.0}, SignString::from_signs(s)) == Poly{1.0, -1.0});
    CHECK_THROWS_AS(apply_signs(p, SignString(0, 2)), DomainError);
}

TEST_CASE("property: the L2 moment ignores signs") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = oracle::random_complex(rng, 1 + trial % 30);
        const Poly p(a);
        const auto len = static_cast<unsigned>(p.coeffs().size());
        const SignString s(rng() & ((std::uint64_t{1} << len) - 1), len);
        // Direct products square each coefficient exactly, so this is bit-exact.
        CHECK(circle_moment_exact(apply_signs(p, s), 1) == circle_moment_exact(p, 1));
    }
}

TEST_CASE("gaussian_moment_constant") {
    CHECK(gaussian_moment_constant(1) == 1.0);
    CHECK(gaussian_moment_constant(2) == 3.0);
    CHECK(gaussian_moment_constant(3) == 15.0);
    CHECK(gaussian_moment_constant(5) == 945.0);
}

TEST_CASE("khintchine_moment examples") {
    const Complex c{0.6, -1.3};
    for (unsigned m = 1; m <= 4; ++m) {
        const std::vector<Complex> b{c};
        CHECK(khintchine_moment(b, m).value == doctest::Approx(std::pow(std::norm(c), m)).epsilon(1e-14));
    }
    CHECK(khintchine_moment(std::vector<Complex>{1.0, 1.0}, 2).value == 8.0);
    CHECK(khintchine_moment(std::vector<Complex>{3.0, 4.0}, 1).value == doctest::Approx(25.0).epsilon(1e-15));
    const std::vector<Complex> ones{1.0, 1.0, 1.0, 1.0};
    CHECK(khintchine_moment(ones, 2).value == 40.0);
    CHECK(oracle::khintchine({1.0, 1.0, 1.0, 1.0}, 2) == 40.0);
    const MomentEstimate e = khintchine_moment(ones, 2);
    CHECK(e.mode == SampleMode::exhaustive);
    CHECK(e.samples == 16);
    CHECK(e.std_error == 0.0);
    CHECK_THROWS_AS(khintchine_moment(ones, 0), DomainError);
    CHECK_THROWS_AS(khintchine_moment(std::vector<Complex>{}, 1), DomainError);
}

TEST_CASE("khintchine exhaustive cap") {
    EnsembleOptions o;
    o.exhaustive_cap = 10;
    CHECK_THROWS_AS(khintchine_moment(std::vector<Complex>(11, 1.0), 1, o), ResourceError);
    CHECK_NOTHROW(khintchine_moment(std::vector<Complex>(10, 1.0), 1, o));
}

TEST_CASE("property: exhaustive moments match the brute-force oracle and the m = 2 closed form") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        const auto b = oracle::random_complex(rng, 1 + trial % 12);
        for (unsigned m = 1; m <= 3; ++m) {
            const double got = khintchine_moment(b, m).value;
            CHECK(got == doctest::Approx(oracle::khintchine(b, m)).epsilon(1e-12));
            CHECK(got <= oracle::double_factorial_odd(m) * std::pow(energy(b), m) + 1e-9);
        }
        double s4 = 0.0;
        Complex sq{};
        for (const auto& x : b) {
            s4 += std::norm(x) * std::norm(x);
            sq += x * x;
        }
        const double e = energy(b);
        CHECK(khintchine_moment(b, 2).value == doctest::Approx(2.0 * e * e + std::norm(sq) - 2.0 * s4).epsilon(1e-12));
        CHECK(khintchine_moment(b, 1).value == doctest::Approx(e).epsilon(1e-12));
    }
}

TEST_CASE("property: results do not depend on the worker count") {
    std::mt19937_64 rng(33);
    const auto b = oracle::random_complex(rng, 18);
    const double ref = khintchine_moment(b, 3, exhaustive(1)).value;
    for (unsigned t : {2u, 3u, 8u}) CHECK(khintchine_moment(b, 3, exhaustive(t)).value == ref);

    const MomentEstimate mc = khintchine_moment(b, 2, monte_carlo(50000, 9, 1));
    for (unsigned t : {2u, 5u}) {
        const MomentEstimate other = khintchine_moment(b, 2, monte_carlo(50000, 9, t));
        CHECK(other.value == mc.value);
        CHECK(other.std_error == mc.std_error);
    }
    CHECK(khintchine_moment(b, 2, monte_carlo(50000, 9, 1)).value == mc.value);
    CHECK(khintchine_moment(b, 2, monte_carlo(50000, 10, 1)).value != mc.value);

    const auto a = oracle::random_complex(rng, 9);
    const double ea = ensemble_circle_moment(a, 2, exhaustive(1)).value;
    CHECK(ensemble_circle_moment(a, 2, exhaustive(4)).value == ea);
    const double ma = ensemble_circle_moment(a, 2, monte_carlo(3000, 2, 1)).value;
    CHECK(ensemble_circle_moment(a, 2, monte_carlo(3000, 2, 3)).value == ma);
}

TEST_CASE("property: Monte Carlo agrees with exhaustive within five standard errors") {
    std::mt19937_64 rng(34);
    int inside = 0;
    const int configs = 200;
    for (int trial = 0; trial < configs; ++trial) {
        const auto b = oracle::random_complex(rng, 2 + trial % 11);
        const unsigned m = 1 + trial % 3;
        const double exact = khintchine_moment(b, m).value;
        const MomentEstimate mc = khintchine_moment(b, m, monte_carlo(4096, static_cast<std::uint64_t>(trial)));
        CHECK(mc.mode == SampleMode::monte_carlo);
        CHECK(mc.samples == 4096);
        if (std::abs(mc.value - exact) <= 5.0 * mc.std_error + 1e-12 * exact) ++inside;
    }
    CHECK(inside >= 198);
}

TEST_CASE("khintchine_ratio_scan examples") {
    const RatioScanReport r1 = khintchine_ratio_scan(6, 1, 50, 3);
    CHECK(r1.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r1.min_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r1.within_reference);

    const RatioScanReport r2 = khintchine_ratio_scan(7, 2, 100, 4);
    CHECK(r2.max_ratio <= 3.0);
    CHECK(r2.reference == 3.0);
    CHECK(r2.within_reference);
    REQUIRE(r2.argmax.size() == 8);
    CHECK(energy(r2.argmax) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(khintchine_moment(r2.argmax, 2).value == doctest::Approx(r2.max_ratio).epsilon(1e-12));

    for (unsigned m = 1; m <= 4; ++m) {
        const RatioScanReport r0 = khintchine_ratio_scan(0, m, 10, 5);
        CHECK(r0.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r0.min_ratio == doctest::Approx(1.0).epsilon(1e-12));
    }
    const RatioScanReport a = khintchine_ratio_scan(5, 3, 20, 11);
    const RatioScanReport b = khintchine_ratio_scan(5, 3, 20, 11);
    CHECK(a.max_ratio == b.max_ratio);
    CHECK(a.argmax == b.argmax);
}

TEST_CASE("ensemble_circle_moment examples") {
    std::mt19937_64 rng(35);
    const auto a = oracle::random_complex(rng, 7);
    CHECK(ensemble_circle_moment(a, 1).value == doctest::Approx(energy(a)).epsilon(1e-13));
    CHECK(ensemble_circle_moment(a, 1, monte_carlo(100, 1)).value == doctest::Approx(energy(a)).epsilon(1e-13));
    CHECK(ensemble_circle_moment(a, 1, monte_carlo(100, 1)).std_error <= 1e-12 * energy(a));
    CHECK(ensemble_circle_moment(std::vector<Complex>{1.0, 1.0}, 2).value == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(ensemble_circle_moment(std::vector<Complex>{1.0}, 3).value == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("property: ensemble moments match the oracle and obey the bound") {
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = oracle::random_complex(rng, 1 + trial % 10);
        for (unsigned m = 1; m <= 3; ++m) {
            const double got = ensemble_circle_moment(a, m).value;
            CHECK(got == doctest::Approx(oracle::ensemble(a, m)).epsilon(1e-11));
            CHECK(got <= oracle::double_factorial_odd(m) * std::pow(energy(a), m) + 1e-9);
        }
    }
}

TEST_CASE("property: averaging commutes with integration") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = oracle::random_complex(rng, 3 + trial);
        const unsigned m = 2 + trial % 2;
        const std::size_t len = a.size();
        // Integral over 4096 nodes of the sign-averaged |p_s|^{2m}.
        const std::size_t nodes = 4096;
        long double total = 0.0L;
        for (std::size_t t = 0; t < nodes; ++t) {
            const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / nodes);
            long double avg = 0.0L;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
                Complex v{};
                Complex zk{1.0};
                for (std::size_t j = 0; j < len; ++j, zk *= z) v += (((mask >> j) & 1u) ? -a[j] : a[j]) * zk;
                avg += std::pow(std::abs(v), 2.0 * m);
            }
            total += avg / static_cast<long double>(std::uint64_t{1} << len);
        }
        const double integral = static_cast<double>(total / nodes);
        CHECK(ensemble_circle_moment(a, m).value == doctest::Approx(integral).epsilon(1e-6));
    }
}
