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

#include "circnorm/volterra.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <numbers>

#include "circnorm/errors.hpp"

namespace circnorm {

namespace {

constexpr std::size_t kSupNodes = 4096;
constexpr unsigned kGridIterateWarnAbove = 64;

std::vector<double> chebyshev_nodes(std::size_t count) {
    std::vector<double> x(count);
    for (std::size_t i = 0; i < count; ++i)
        x[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(count - 1)));
    x.front() = 0.0;
    x.back() = 1.0;
    return x;
}

// Maximum of g over [a, b] assuming rough unimodality; returns the best value seen.
double golden_max(const std::function<double(double)>& g, double a, double b) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double best = std::max(g(a), g(b));
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
        if (gc >= gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
        best = std::max({best, gc, gd});
    }
    return best;
}

// Dense sampling on Chebyshev-density nodes (plus any extra nodes), then a
// golden-section polish inside the brackets of the leading local maxima.
double sampled_sup(const std::function<double(double)>& g, std::vector<double> extra = {}) {
    std::vector<double> x = chebyshev_nodes(kSupNodes);
    if (!extra.empty()) {
        x.insert(x.end(), extra.begin(), extra.end());
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
    }
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = g(x[i]);
    const double node_best = *std::max_element(v.begin(), v.end());
    double best = node_best;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        if (!(v[i] >= v[i - 1] && v[i] > v[i + 1])) continue;
        if (v[i] < node_best * (1.0 - 1e-3)) continue;
        best = std::max(best, golden_max(g, x[i - 1], x[i + 1]));
    }
    return best;
}

// Roots of a real-valued function between sign changes on the sampling nodes.
std::vector<double> sign_change_roots(const std::function<double(double)>& g) {
    const std::vector<double> x = chebyshev_nodes(kSupNodes);
    std::vector<double> roots;
    double prev = g(x[0]);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double cur = g(x[i]);
        if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
            double a = x[i - 1], b = x[i], ga = prev;
            for (int it = 0; it < 100 && b - a > 1e-16; ++it) {
                const double mid = 0.5 * (a + b);
                const double gm = g(mid);
                if ((gm < 0.0) == (ga < 0.0)) {
                    a = mid;
                    ga = gm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev = cur;
    }
    return roots;
}

// int_0^1 |A + t D| dt for one linear segment.
double segment_abs_integral(Complex A, Complex B) {
    const Complex D = B - A;
    const double len = std::abs(D);
    if (len == 0.0) return std::abs(A);
    if (len <= 0.25 * std::min(std::abs(A), std::abs(B))) {
        // The segment stays well away from the origin; |.| is analytic near it.
        auto f = [&](double t) { return std::abs(A + t * D); };
        return boost::math::quadrature::gauss<double, 20>::integrate(f, 0.0, 1.0);
    }
    // Signed positions along the line and distance of the line from 0.
    const double s0 = (std::conj(A) * D).real() / len;
    const double s1 = (std::conj(B) * D).real() / len;
    const double dist = std::abs((std::conj(A) * D).imag()) / len;
    auto H = [dist](double s) {
        if (dist == 0.0) return 0.5 * s * std::abs(s);
        return 0.5 * (s * std::hypot(s, dist) + dist * dist * std::asinh(s / dist));
    };
    return (H(s1) - H(s0)) / len;
}

double factorial(unsigned n) {
    double r = 1.0;
    for (unsigned k = 2; k <= n; ++k) r *= static_cast<double>(k);
    return r;
}

bool all_same_grid(std::span<const Func1D> fs) {
    if (fs.empty() || fs[0].is_poly()) return false;
    return std::all_of(fs.begin(), fs.end(),
                       [&](const Func1D& f) { return !f.is_poly() && f.intervals() == fs[0].intervals(); });
}

double sup_abs_sum(std::span<const Func1D> fs) {
    if (all_same_grid(fs)) {
        // Each |f_j| is convex on every segment, so the sum peaks at a node.
        double best = 0.0;
        for (std::size_t i = 0; i <= fs[0].intervals(); ++i) {
            double s = 0.0;
            for (const auto& f : fs) s += std::abs(f.data()[i]);
            best = std::max(best, s);
        }
        return best;
    }
    std::vector<double> extra;
    for (const auto& f : fs)
        if (!f.is_poly())
            for (std::size_t i = 0; i <= f.intervals(); ++i)
                extra.push_back(static_cast<double>(i) / static_cast<double>(f.intervals()));
    return sampled_sup(
        [&](double x) {
            double s = 0.0;
            for (const auto& f : fs) s += std::abs(f(x));
            return s;
        },
        std::move(extra));
}

}  // namespace

Func1D Func1D::poly(std::vector<Complex> coeffs) {
    while (coeffs.size() > 1 && coeffs.back() == Complex{}) coeffs.pop_back();
    if (coeffs.empty()) coeffs.push_back({});
    return Func1D(Backend::poly, std::move(coeffs));
}

Func1D Func1D::grid(std::vector<Complex> samples) {
    if (samples.size() < 2) throw DomainError("grid function needs N >= 1 intervals (at least 2 samples)");
    return Func1D(Backend::grid, std::move(samples));
}

Func1D Func1D::sampled(const Func1D& f, std::size_t intervals) {
    if (intervals == 0) throw DomainError("grid needs at least one interval");
    std::vector<Complex> s(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) s[i] = f(static_cast<double>(i) / static_cast<double>(intervals));
    return grid(std::move(s));
}

bool Func1D::is_real() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& c) { return c.imag() == 0.0; });
}

Complex Func1D::operator()(double x) const {
    x = std::clamp(x, 0.0, 1.0);
    if (backend_ == Backend::poly) {
        Complex acc{};
        for (auto it = data_.rbegin(); it != data_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    const std::size_t n = intervals();
    const double pos = x * static_cast<double>(n);
    const std::size_t i = std::min(static_cast<std::size_t>(pos), n - 1);
    const double t = pos - static_cast<double>(i);
    return (1.0 - t) * data_[i] + t * data_[i + 1];
}

double sup_norm_01(const Func1D& f) {
    if (!f.is_poly()) {
        double best = 0.0;
        for (const auto& s : f.data()) best = std::max(best, std::abs(s));
        return best;
    }
    return sampled_sup([&](double x) { return std::abs(f(x)); });
}

double l1_norm_01(const Func1D& f) {
    const auto d = f.data();
    if (!f.is_poly()) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < d.size(); ++i) total += segment_abs_integral(d[i], d[i + 1]);
        return total / static_cast<double>(f.intervals());
    }
    // |f| can only kink where f vanishes, which is a sign change of Re f or Im f.
    std::vector<double> cuts{0.0, 1.0};
    for (auto part : {+[](Complex c) { return c.real(); }, +[](Complex c) { return c.imag(); }}) {
        auto roots = sign_change_roots([&](double x) { return part(f(x)); });
        cuts.insert(cuts.end(), roots.begin(), roots.end());
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto g = [&](double x) { return std::abs(f(x)); };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, cuts[i], cuts[i + 1], 15, 1e-14);
    }
    return total;
}

Func1D volterra_apply(const Func1D& f) {
    const auto d = f.data();
    if (f.is_poly()) {
        std::vector<Complex> out(d.size() + 1);
        for (std::size_t k = 0; k < d.size(); ++k) out[k + 1] = d[k] / static_cast<double>(k + 1);
        return Func1D::poly(std::move(out));
    }
    const double half_h = 0.5 / static_cast<double>(f.intervals());
    std::vector<Complex> out(d.size());
    for (std::size_t i = 1; i < d.size(); ++i) out[i] = out[i - 1] + half_h * (d[i - 1] + d[i]);
    return Func1D::grid(std::move(out));
}

Func1D volterra_iterate(const Func1D& f, unsigned n) {
    if (n == 0) throw DomainError("iterate count n must be >= 1");
    Func1D g = volterra_apply(f);
    for (unsigned k = 1; k < n; ++k) g = volterra_apply(g);
    return g;
}

std::optional<std::string> iterate_warning(const Func1D& f, unsigned n) {
    if (!f.is_poly() && n > kGridIterateWarnAbove)
        return "grid backend iterated " + std::to_string(n) + " times; quadrature error accumulates past " +
               std::to_string(kGridIterateWarnAbove);
    return std::nullopt;
}

VolterraReport volterra_norm_checks(std::span<const Func1D> fs, unsigned n) {
    if (fs.empty()) throw DomainError("volterra checks need at least one function");
    if (n == 0) throw DomainError("iterate count n must be >= 1");

    VolterraReport rep;
    rep.n = n;
    // Trapezoid error is O(h^2), so coarser grids get a proportionally wider band.
    std::size_t coarsest = 0;
    for (const auto& f : fs)
        if (!f.is_poly()) coarsest = coarsest == 0 ? f.intervals() : std::min(coarsest, f.intervals());
    if (coarsest == 0) {
        rep.tolerance = 1e-9;
    } else {
        const double r = static_cast<double>(kDefaultGridIntervals) / static_cast<double>(coarsest);
        rep.tolerance = 1e-6 * std::max(1.0, r * r);
    }
    auto violated = [&](double slack, double rhs) { return slack < -rep.tolerance * std::max(1.0, rhs); };

    const double nfact = factorial(n);
    for (const auto& f : fs) {
        VolterraItemCheck c;
        c.sup_f = sup_norm_01(f);
        c.sup_iterate = sup_norm_01(volterra_iterate(f, n));
        c.factorial_bound = c.sup_f / nfact;
        c.factorial_slack = c.factorial_bound - c.sup_iterate;
        c.sup_once = sup_norm_01(volterra_apply(f));
        c.l1 = l1_norm_01(f);
        c.l1_slack = c.l1 - c.sup_once;
        if (violated(c.factorial_slack, c.factorial_bound))
            throw ConsistencyError("||T^n f|| exceeds ||f|| / n! beyond tolerance");
        if (violated(c.l1_slack, c.l1)) throw ConsistencyError("||T f|| exceeds int |f| beyond tolerance");
        rep.sum_sup_once += c.sup_once;
        rep.items.push_back(c);
    }
    rep.sup_abs_sum = sup_abs_sum(fs);
    rep.sum_slack = rep.sup_abs_sum - rep.sum_sup_once;
    if (violated(rep.sum_slack, rep.sup_abs_sum))
        throw ConsistencyError("sum_j ||T f_j|| exceeds ||sum_j |f_j||| beyond tolerance");
    return rep;
}

}  // namespace circnorm
