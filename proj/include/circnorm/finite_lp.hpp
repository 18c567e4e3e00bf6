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
 * @file finite_lp.hpp
 * @brief l^p norms of vector-valued functions on a finite set, dual norms,
 *        the lambda_h pairing and the nu-norms.
 *
 * V is C^d or R^d with a (weighted) l^r norm ||v||_V = ||(w_i v_i)_i||_r.
 * Functionals act by the bilinear coordinate pairing lambda(v) = sum_i
 * lambda_i v_i, so the dual of weighted l^r(w) is weighted l^{r'}(1/w).
 * A function f : E -> V is stored as a d x |E| matrix whose column x is f(x).
 */

#ifndef CIRCNORM_FINITE_LP_HPP
#define CIRCNORM_FINITE_LP_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circnorm/poly.hpp"

namespace circnorm {

enum class Field { real, complex };
enum class NormKind { lr, weighted_lr };

/// 1/p + 1/q = 1, with 1 <-> inf.
double conjugate_exponent(double p);

struct NormedSpace {
    std::size_t dim = 1;
    Field field = Field::real;
    NormKind kind = NormKind::lr;
    double r = 2.0;
    /// Only for weighted_lr; strictly positive, length dim.
    std::vector<double> weights;

    static NormedSpace lr(std::size_t dim, double r, Field field = Field::real);
    static NormedSpace weighted_lr(std::vector<double> weights, double r, Field field = Field::real);

    double weight(std::size_t i) const { return kind == NormKind::weighted_lr ? weights[i] : 1.0; }
    /// The space of functionals with the dual norm.
    NormedSpace dual() const;
    /// Throws DomainError on a malformed descriptor.
    void validate() const;
};

double space_norm(const NormedSpace& V, std::span<const Complex> v);

struct DualVector {
    NormedSpace space;  // V, not V*
    std::vector<Complex> coeffs;

    Complex operator()(std::span<const Complex> v) const;
};

/// sup { |lambda(v)| : ||v||_V <= 1 }, in closed form.
double dual_norm(const NormedSpace& V, const DualVector& lambda);

enum class DualMethod { closed_form, sampled };

struct DualAttainment {
    double value = 0.0;
    DualVector attainer;  // dual norm <= 1 and attainer(v) = value
};

/// ||v||_V as sup { |lambda(v)| : ||lambda||_{V*} <= 1 }. The closed form builds
/// the Hoelder-equality attainer; `sampled` maximizes over random dual unit
/// vectors and is only a lower bound.
DualAttainment norm_via_dual(const NormedSpace& V, std::span<const Complex> v,
                             DualMethod method = DualMethod::closed_form, std::uint64_t samples = 100000,
                             std::uint64_t seed = 0);

class VFunction {
   public:
    VFunction(NormedSpace space, Eigen::MatrixXcd values, std::vector<std::string> points = {});

    const NormedSpace& space() const noexcept { return space_; }
    const std::vector<std::string>& points() const noexcept { return points_; }
    const Eigen::MatrixXcd& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    std::span<const Complex> at(std::size_t x) const;

   private:
    NormedSpace space_;
    Eigen::MatrixXcd values_;
    std::vector<std::string> points_;
};

/// ||f||_{p,V}.
double lp_norm(const VFunction& f, double p);

struct ComparisonCheck {
    double norm_p = 0.0;
    double norm_q = 0.0;
    double factor = 0.0;     // |E|^{1/p - 1/q}
    double lhs_slack = 0.0;  // ||f||_p - ||f||_q
    double rhs_slack = 0.0;  // factor ||f||_q - ||f||_p
    bool lhs_ok = false;
    bool rhs_ok = false;
};

/// ||f||_q <= ||f||_p <= |E|^{1/p - 1/q} ||f||_q for 1 <= p <= q <= inf.
/// A violation beyond 1e-10 (relative to ||f||_p) raises ConsistencyError.
ComparisonCheck norm_comparison_check(const VFunction& f, double p, double q);

/// lambda_h(f) = sum_x h(x)(f(x)); h takes values in V*, f in V.
Complex pair(const VFunction& h, const VFunction& f);

struct PairingDual {
    double value = 0.0;  // ||h||_{q,V*}
    double q = 0.0;
    VFunction witness;   // f over V with |pair(h, f)| = value * ||f||_{p,V}
};

/// Dual norm of lambda_h with respect to ||.||_{p,V}; h.space() is V*.
PairingDual pairing_dual_norm(const VFunction& h, double p);

enum class NuMethod { automatic, closed_form, extreme_points, spectral, ascent };

struct AscentOptions {
    unsigned starts = 32;
    double tol = 1e-9;
    unsigned max_iterations = 20000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

struct NuNormResult {
    double value = 0.0;
    bool certified = false;
    NuMethod method = NuMethod::automatic;
};

/// ||f||_{p,nu} = sup over the dual unit ball of ||(lambda(f(x)))_x||_p.
///   closed_form     p = inf or |E| = 1 (always used there)
///   extreme_points  real scalars with r in {1, inf} or d = 1: enumerate the
///                   finitely many extreme points of the dual ball
///   spectral        r = 2, p = 2: largest singular value of diag(w) F
///   ascent          conditional-gradient ascent from several starts; a lower
///                   bound, reported uncertified
/// Requesting a certified method outside its domain throws DomainError.
NuNormResult nu_norm(const VFunction& f, double p, NuMethod method = NuMethod::automatic,
                     const AscentOptions& ascent = {});

bool nu_method_applicable(const VFunction& f, double p, NuMethod method);

VFunction pointwise_scale(std::span<const Complex> g, const VFunction& f);
/// Applies A (d' x d) to every value. `target` defaults to the same norm
/// family on C^{d'} / R^{d'}; it is required when f's space is weighted.
VFunction pointwise_map(const Eigen::MatrixXcd& A, const VFunction& f, std::optional<NormedSpace> target = {});

}  // namespace circnorm

#endif
