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

#include "circnorm/finite_lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "circnorm/errors.hpp"
#include "circnorm/parallel.hpp"

namespace circnorm {

namespace {

constexpr std::size_t kExtremePointDimCap = 24;

void check_exponent(double p, const char* what) {
    if (!(p >= 1.0)) throw DomainError(std::string(what) + " exponent must be in [1, inf]");
}

// l^p norm of nonnegative reals, scaled by the peak to avoid overflow.
double lp_of(std::span<const double> a, double p) {
    double peak = 0.0;
    for (double x : a) peak = std::max(peak, x);
    if (p == kInf || peak == 0.0) return peak;
    if (p == 1.0) return std::accumulate(a.begin(), a.end(), 0.0);
    double s = 0.0;
    for (double x : a) s += std::pow(x / peak, p);
    return peak * std::pow(s, 1.0 / p);
}

bool is_real(std::span<const Complex> v) {
    return std::all_of(v.begin(), v.end(), [](const Complex& c) { return c.imag() == 0.0; });
}

Complex unit_phase(Complex c) {
    const double a = std::abs(c);
    return a == 0.0 ? Complex{1.0, 0.0} : c / a;
}

// lambda in the dual ball maximizing Re lambda(v), with lambda(v) = ||v||_V.
std::vector<Complex> hoelder_attainer(const NormedSpace& V, std::span<const Complex> v) {
    const std::size_t d = V.dim;
    std::vector<Complex> u(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = V.weight(i) * v[i];
    const double nu = coeff_norm(u, V.r);
    std::vector<Complex> lam(d);
    if (nu == 0.0) return lam;

    if (V.r == 1.0) {
        for (std::size_t i = 0; i < d; ++i) lam[i] = V.weight(i) * std::conj(unit_phase(u[i]));
    } else if (V.r == kInf) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < d; ++i)
            if (std::abs(u[i]) > std::abs(u[best])) best = i;
        lam[best] = V.weight(best) * std::conj(unit_phase(u[best]));
    } else {
        // w_i conj(u_i) |u_i|^{r-2} / ||u||^{r-1}, written via |u_i| / ||u||
        // so nothing overflows.
        for (std::size_t i = 0; i < d; ++i) {
            const double a = std::abs(u[i]);
            if (a == 0.0) continue;
            lam[i] = V.weight(i) * std::conj(u[i] / a) * std::pow(a / nu, V.r - 1.0);
        }
    }
    return lam;
}

double evaluate_nu(const Eigen::MatrixXcd& F, std::span<const Complex> lam, double p, std::vector<double>& scratch) {
    const auto E = static_cast<std::size_t>(F.cols());
    scratch.resize(E);
    for (std::size_t x = 0; x < E; ++x) {
        Complex y{};
        for (std::size_t i = 0; i < lam.size(); ++i) y += lam[i] * F(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x));
        scratch[x] = std::abs(y);
    }
    return lp_of(scratch, p);
}

bool extreme_points_ok(const VFunction& f) {
    const auto& V = f.space();
    return V.field == Field::real && (V.r == 1.0 || V.r == kInf || V.dim == 1) && V.dim <= kExtremePointDimCap;
}

bool spectral_ok(const VFunction& f, double p) { return f.space().r == 2.0 && p == 2.0; }

double nu_extreme_points(const VFunction& f, double p) {
    const auto& V = f.space();
    const std::size_t d = V.dim;
    const auto& F = f.values();
    std::vector<double> scratch;
    std::vector<Complex> lam(d);
    double best = 0.0;
    if (V.r == kInf && d > 1) {
        // Dual ball is weighted l^1: extreme points are +-w_i e_i.
        for (std::size_t i = 0; i < d; ++i) {
            std::fill(lam.begin(), lam.end(), Complex{});
            lam[i] = V.weight(i);
            best = std::max(best, evaluate_nu(F, lam, p, scratch));
        }
        return best;
    }
    // Dual ball is weighted l^inf: extreme points are (+-w_i)_i. Global sign
    // does not matter, so fix the last entry to +w_{d-1}.
    const std::uint64_t count = std::uint64_t{1} << (d - 1);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (std::size_t i = 0; i < d; ++i) lam[i] = ((mask >> i) & 1u) ? -V.weight(i) : V.weight(i);
        best = std::max(best, evaluate_nu(F, lam, p, scratch));
    }
    return best;
}

double nu_spectral(const VFunction& f) {
    const auto& V = f.space();
    Eigen::MatrixXcd WF = f.values();
    for (Eigen::Index i = 0; i < WF.rows(); ++i) WF.row(i) *= V.weight(static_cast<std::size_t>(i));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(WF);
    return svd.singularValues()(0);
}

double nu_ascent(const VFunction& f, double p, const AscentOptions& opts) {
    const auto& V = f.space();
    const auto& F = f.values();
    const std::size_t d = V.dim;
    const auto E = f.size();
    const bool real = V.field == Field::real;
    const NormedSpace Vd = V.dual();

    const unsigned starts = std::max(1u, opts.starts);
    std::vector<double> results(starts, 0.0);
    parallel_for(starts, resolve_threads(opts.threads), [&](std::size_t s) {
        std::vector<Complex> lam(d);
        if (s == 0) {
            // Start from the functional norming the largest value of f.
            std::size_t big = 0;
            double big_norm = -1.0;
            for (std::size_t x = 0; x < E; ++x) {
                const double nx = space_norm(V, f.at(x));
                if (nx > big_norm) big_norm = nx, big = x;
            }
            lam = hoelder_attainer(V, f.at(big));
        } else {
            const CounterRng rng(opts.seed, s);
            for (std::size_t i = 0; i < d; ++i)
                lam[i] = real ? Complex{rng.normal(2 * i), 0.0} : Complex{rng.normal(2 * i), rng.normal(2 * i + 1)};
        }
        const double dn = space_norm(Vd, lam);
        if (dn == 0.0) {
            lam.assign(d, {});
            lam[0] = V.weight(0);
        } else {
            for (auto& c : lam) c /= dn;
        }

        std::vector<double> scratch;
        std::vector<Complex> y(E), grad(d);
        double g = evaluate_nu(F, lam, p, scratch);
        for (unsigned it = 0; it < opts.max_iterations; ++it) {
            for (std::size_t x = 0; x < E; ++x) {
                y[x] = {};
                for (std::size_t i = 0; i < d; ++i) y[x] += lam[i] * F(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x));
            }
            // Direction c with Re sum_i delta_i c_i the first-order change of
            // sum_x |y_x|^p (or of max_x |y_x| when p = inf).
            std::fill(grad.begin(), grad.end(), Complex{});
            double peak = 0.0;
            for (const auto& v : y) peak = std::max(peak, std::abs(v));
            if (peak == 0.0) break;
            for (std::size_t x = 0; x < E; ++x) {
                const double a = std::abs(y[x]);
                if (a == 0.0) continue;
                double w;
                if (p == kInf)
                    w = (a == peak) ? 1.0 : 0.0;
                else
                    w = std::pow(a / peak, p - 1.0);
                if (w == 0.0) continue;
                const Complex coef = w * std::conj(y[x] / a);
                for (std::size_t i = 0; i < d; ++i) grad[i] += coef * F(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x));
                if (p == kInf) break;
            }
            std::vector<Complex> next = hoelder_attainer(V, grad);
            const double g_next = evaluate_nu(F, next, p, scratch);
            if (!(g_next > g)) break;
            const double gain = g_next - g;
            lam = std::move(next);
            g = g_next;
            if (gain <= opts.tol * g) break;
        }
        results[s] = g;
    });
    return *std::max_element(results.begin(), results.end());
}

}  // namespace

double conjugate_exponent(double p) {
    check_exponent(p, "conjugate");
    if (p == 1.0) return kInf;
    if (p == kInf) return 1.0;
    return p / (p - 1.0);
}

NormedSpace NormedSpace::lr(std::size_t dim, double r, Field field) {
    NormedSpace V;
    V.dim = dim;
    V.r = r;
    V.field = field;
    V.validate();
    return V;
}

NormedSpace NormedSpace::weighted_lr(std::vector<double> weights, double r, Field field) {
    NormedSpace V;
    V.dim = weights.size();
    V.kind = NormKind::weighted_lr;
    V.r = r;
    V.field = field;
    V.weights = std::move(weights);
    V.validate();
    return V;
}

NormedSpace NormedSpace::dual() const {
    NormedSpace D = *this;
    D.r = conjugate_exponent(r);
    for (auto& w : D.weights) w = 1.0 / w;
    return D;
}

void NormedSpace::validate() const {
    if (dim == 0) throw DomainError("normed space dimension must be positive");
    check_exponent(r, "space norm");
    if (kind == NormKind::weighted_lr) {
        if (weights.size() != dim) throw DomainError("weight count does not match dimension");
        for (double w : weights)
            if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("weights must be finite and strictly positive");
    } else if (!weights.empty()) {
        throw DomainError("unweighted l^r space carries weights");
    }
}

double space_norm(const NormedSpace& V, std::span<const Complex> v) {
    if (v.size() != V.dim)
        throw DomainError("vector of length " + std::to_string(v.size()) + " in a space of dimension " +
                          std::to_string(V.dim));
    if (V.kind == NormKind::lr) return coeff_norm(v, V.r);
    std::vector<Complex> u(v.begin(), v.end());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] *= V.weights[i];
    return coeff_norm(u, V.r);
}

Complex DualVector::operator()(std::span<const Complex> v) const {
    if (v.size() != coeffs.size()) throw DomainError("functional and vector dimensions differ");
    Complex s{};
    for (std::size_t i = 0; i < v.size(); ++i) s += coeffs[i] * v[i];
    return s;
}

double dual_norm(const NormedSpace& V, const DualVector& lambda) { return space_norm(V.dual(), lambda.coeffs); }

DualAttainment norm_via_dual(const NormedSpace& V, std::span<const Complex> v, DualMethod method,
                             std::uint64_t samples, std::uint64_t seed) {
    if (v.size() != V.dim) throw DomainError("vector dimension does not match the space");
    if (method == DualMethod::closed_form) {
        DualVector lam{V, hoelder_attainer(V, v)};
        return {std::abs(lam(v)), std::move(lam)};
    }
    // Random directions on the dual unit sphere; the best is kept.
    const NormedSpace Vd = V.dual();
    const CounterRng rng(seed, 7);
    const bool real = V.field == Field::real;
    DualAttainment best{0.0, DualVector{V, std::vector<Complex>(V.dim)}};
    std::vector<Complex> lam(V.dim);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < V.dim; ++i) {
            const std::uint64_t c = (s * V.dim + i) * 2;
            lam[i] = real ? Complex{rng.normal(c), 0.0} : Complex{rng.normal(c), rng.normal(c + 1)};
        }
        const double dn = space_norm(Vd, lam);
        if (dn == 0.0) continue;
        Complex val{};
        for (std::size_t i = 0; i < V.dim; ++i) val += lam[i] / dn * v[i];
        if (std::abs(val) > best.value) {
            best.value = std::abs(val);
            for (std::size_t i = 0; i < V.dim; ++i) best.attainer.coeffs[i] = lam[i] / dn;
        }
    }
    return best;
}

VFunction::VFunction(NormedSpace space, Eigen::MatrixXcd values, std::vector<std::string> points)
    : space_(std::move(space)), values_(std::move(values)), points_(std::move(points)) {
    space_.validate();
    if (values_.cols() < 1) throw DomainError("a function needs at least one point");
    if (static_cast<std::size_t>(values_.rows()) != space_.dim)
        throw DomainError("value rows (" + std::to_string(values_.rows()) + ") differ from dimension " +
                          std::to_string(space_.dim));
    if (points_.empty()) {
        for (Eigen::Index x = 0; x < values_.cols(); ++x) points_.push_back(std::to_string(x));
    } else if (points_.size() != static_cast<std::size_t>(values_.cols())) {
        throw DomainError("point labels do not match value columns");
    }
    if (space_.field == Field::real && !values_.imag().isZero(0.0))
        throw DomainError("real-field function has complex values");
}

std::span<const Complex> VFunction::at(std::size_t x) const {
    if (x >= size()) throw DomainError("point index out of range");
    return {values_.data() + static_cast<Eigen::Index>(x) * values_.rows(), static_cast<std::size_t>(values_.rows())};
}

double lp_norm(const VFunction& f, double p) {
    check_exponent(p, "l^p");
    std::vector<double> pointwise(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) pointwise[x] = space_norm(f.space(), f.at(x));
    return lp_of(pointwise, p);
}

ComparisonCheck norm_comparison_check(const VFunction& f, double p, double q) {
    check_exponent(p, "comparison");
    check_exponent(q, "comparison");
    if (p > q) throw DomainError("norm comparison needs p <= q");
    ComparisonCheck c;
    c.norm_p = lp_norm(f, p);
    c.norm_q = lp_norm(f, q);
    const double inv_p = p == kInf ? 0.0 : 1.0 / p;
    const double inv_q = q == kInf ? 0.0 : 1.0 / q;
    c.factor = std::pow(static_cast<double>(f.size()), inv_p - inv_q);
    c.lhs_slack = c.norm_p - c.norm_q;
    c.rhs_slack = c.factor * c.norm_q - c.norm_p;
    const double tol = 1e-10 * std::max(1.0, c.norm_p);
    c.lhs_ok = c.lhs_slack >= -tol;
    c.rhs_ok = c.rhs_slack >= -tol;
    if (!c.lhs_ok || !c.rhs_ok) throw ConsistencyError("l^p comparison inequality violated beyond 1e-10");
    return c;
}

Complex pair(const VFunction& h, const VFunction& f) {
    if (h.size() != f.size() || h.space().dim != f.space().dim)
        throw DomainError("pairing needs functions on the same point set with matching dimensions");
    Complex s{};
    for (std::size_t x = 0; x < f.size(); ++x) {
        const auto hx = h.at(x);
        const auto fx = f.at(x);
        for (std::size_t i = 0; i < hx.size(); ++i) s += hx[i] * fx[i];
    }
    return s;
}

PairingDual pairing_dual_norm(const VFunction& h, double p) {
    check_exponent(p, "pairing");
    const double q = conjugate_exponent(p);
    const NormedSpace& Vd = h.space();
    const NormedSpace V = Vd.dual();
    const std::size_t E = h.size();

    std::vector<double> a(E);
    for (std::size_t x = 0; x < E; ++x) a[x] = space_norm(Vd, h.at(x));
    const double value = lp_of(a, q);

    // Hoelder equality weights t with sum t_x a_x = ||t||_p ||a||_q.
    std::vector<double> t(E, 0.0);
    const double peak = *std::max_element(a.begin(), a.end());
    if (q == kInf) {
        t[static_cast<std::size_t>(std::max_element(a.begin(), a.end()) - a.begin())] = 1.0;
    } else if (q == 1.0) {
        std::fill(t.begin(), t.end(), 1.0);
    } else if (peak > 0.0) {
        for (std::size_t x = 0; x < E; ++x) t[x] = std::pow(a[x] / peak, q - 1.0);
    }

    Eigen::MatrixXcd w(static_cast<Eigen::Index>(V.dim), static_cast<Eigen::Index>(E));
    for (std::size_t x = 0; x < E; ++x) {
        // u in V with ||u||_V = 1 and h(x)(u) = ||h(x)||_{V*}.
        const std::vector<Complex> u = hoelder_attainer(Vd, h.at(x));
        for (std::size_t i = 0; i < V.dim; ++i) w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x)) = t[x] * u[i];
    }
    return {value, q, VFunction(V, std::move(w), h.points())};
}

bool nu_method_applicable(const VFunction& f, double p, NuMethod method) {
    switch (method) {
        case NuMethod::automatic:
        case NuMethod::ascent:
            return true;
        case NuMethod::closed_form:
            return p == kInf || f.size() == 1;
        case NuMethod::extreme_points:
            return extreme_points_ok(f);
        case NuMethod::spectral:
            return spectral_ok(f, p);
    }
    return false;
}

NuNormResult nu_norm(const VFunction& f, double p, NuMethod method, const AscentOptions& ascent) {
    check_exponent(p, "nu-norm");
    if (p == kInf) return {lp_norm(f, kInf), true, NuMethod::closed_form};
    if (f.size() == 1) return {space_norm(f.space(), f.at(0)), true, NuMethod::closed_form};

    if (method == NuMethod::automatic) {
        if (spectral_ok(f, p))
            method = NuMethod::spectral;
        else if (extreme_points_ok(f))
            method = NuMethod::extreme_points;
        else
            method = NuMethod::ascent;
    }
    if (!nu_method_applicable(f, p, method))
        throw DomainError("requested nu-norm method is not valid for this space and exponent");

    switch (method) {
        case NuMethod::spectral:
            return {nu_spectral(f), true, NuMethod::spectral};
        case NuMethod::extreme_points:
            return {nu_extreme_points(f, p), true, NuMethod::extreme_points};
        default:
            return {nu_ascent(f, p, ascent), false, NuMethod::ascent};
    }
}

VFunction pointwise_scale(std::span<const Complex> g, const VFunction& f) {
    if (g.size() != f.size()) throw DomainError("scalar function and VFunction live on different point sets");
    if (f.space().field == Field::real && !is_real(g)) throw DomainError("complex scalars acting on a real space");
    Eigen::MatrixXcd out = f.values();
    for (std::size_t x = 0; x < g.size(); ++x) out.col(static_cast<Eigen::Index>(x)) *= g[x];
    return VFunction(f.space(), std::move(out), f.points());
}

VFunction pointwise_map(const Eigen::MatrixXcd& A, const VFunction& f, std::optional<NormedSpace> target) {
    if (static_cast<std::size_t>(A.cols()) != f.space().dim) throw DomainError("matrix columns differ from dimension");
    if (f.space().field == Field::real && !A.imag().isZero(0.0))
        throw DomainError("complex matrix acting on a real space");
    NormedSpace W;
    if (target) {
        W = *target;
    } else {
        if (f.space().kind == NormKind::weighted_lr)
            throw DomainError("weighted space: pointwise_map needs an explicit target space");
        W = NormedSpace::lr(static_cast<std::size_t>(A.rows()), f.space().r, f.space().field);
    }
    if (W.dim != static_cast<std::size_t>(A.rows())) throw DomainError("target dimension differs from matrix rows");
    return VFunction(std::move(W), A * f.values(), f.points());
}

}  // namespace circnorm
