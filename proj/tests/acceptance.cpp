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

// Acceptance suite: one PASS/FAIL line per criterion, with wall time against
// the stated budget. Exit status is nonzero if any criterion fails.

#include <Eigen/Dense>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "circnorm/circle.hpp"
#include "circnorm/finite_lp.hpp"
#include "circnorm/rademacher.hpp"
#include "circnorm/volterra.hpp"
#include "oracles.hpp"

using namespace circnorm;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) note << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

double energy(const std::vector<Complex>& a) {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return s;
}

Poly random_poly(std::mt19937_64& rng, std::size_t max_degree) {
    std::uniform_int_distribution<std::size_t> deg(0, max_degree);
    return Poly(oracle::random_complex(rng, deg(rng) + 1));
}

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, Field field) {
    const auto v = field == Field::real ? oracle::random_real(rng, rows * cols) : oracle::random_complex(rng, rows * cols);
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t k = 0; k < v.size(); ++k) M(static_cast<Eigen::Index>(k % rows), static_cast<Eigen::Index>(k / rows)) = v[k];
    return M;
}

NormedSpace random_space(std::mt19937_64& rng, std::size_t d, Field field) {
    const double rs[] = {1.0, 1.5, 2.0, 3.0, kInf};
    const double r = rs[rng() % 5];
    if (rng() % 2 == 0) return NormedSpace::lr(d, r, field);
    std::uniform_real_distribution<double> u(0.25, 3.0);
    std::vector<double> w(d);
    for (auto& x : w) x = u(rng);
    return NormedSpace::weighted_lr(std::move(w), r, field);
}

const double kExps[] = {1.0, 1.5, 2.0, 4.0, kInf};

double factorial(unsigned n) {
    double f = 1.0;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

void parseval(Outcome& o) {
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const Poly p = random_poly(rng, 128);
        const double l2 = coeff_norm(p, 2.0);
        const double rel = std::abs(circle_moment_exact(p, 1) - l2 * l2) / (l2 * l2);
        worst = std::max(worst, rel);
    }
    o.require(worst <= 1e-10, "relative error above 1e-10");
    o.note << "500 polys, worst relative error " << worst;
}

void sign_invariance(Outcome& o) {
    std::mt19937_64 rng(1002);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Poly p = random_poly(rng, 63);
        const auto len = static_cast<unsigned>(p.coeffs().size());
        const SignString s(rng() & (len >= 64 ? ~0ULL : ((1ULL << len) - 1)), len);
        const double a = circle_moment_exact(p, 1);
        const double b = circle_moment_exact(apply_signs(p, s), 1);
        worst = std::max(worst, std::abs(a - b) / a);
    }
    o.require(worst <= 1e-12, "relative change above 1e-12");
    o.note << "100 (p, s), worst relative change " << worst;
}

void khintchine(Outcome& o) {
    std::mt19937_64 rng(1003);
    double worst_excess = -kInf, worst_m1 = 0.0;
    for (int t = 0; t < 200; ++t) {
        const auto b = oracle::random_complex(rng, 1 + rng() % 12);
        const double e = energy(b);
        for (unsigned m = 1; m <= 3; ++m) {
            const double v = khintchine_moment(b, m).value;
            const double bound = gaussian_moment_constant(m) * std::pow(e, m);
            worst_excess = std::max(worst_excess, v - bound);
            o.require(v <= bound + 1e-9, "moment above (2m-1)!! (sum |b|^2)^m + 1e-9");
            if (m == 1) worst_m1 = std::max(worst_m1, std::abs(v - e));
        }
    }
    o.require(worst_m1 <= 1e-12, "m = 1 differs from sum |b|^2 by more than 1e-12");
    o.note << "200 vectors x m in {1,2,3}, max(A - bound) " << worst_excess << ", m=1 max abs error " << worst_m1;
}

void ensemble(Outcome& o) {
    std::mt19937_64 rng(1004);
    double worst_ratio = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto a = oracle::random_complex(rng, 1 + rng() % 10);
        for (unsigned m = 2; m <= 3; ++m) {
            const double v = ensemble_circle_moment(a, m).value;
            const double bound = gaussian_moment_constant(m) * std::pow(energy(a), m);
            worst_ratio = std::max(worst_ratio, v / bound);
            o.require(v <= bound + 1e-9, "ensemble moment above bound + 1e-9");
        }
    }
    const double hand = ensemble_circle_moment(std::vector<Complex>{1.0, 1.0}, 2).value;
    o.require(std::abs(hand - 6.0) <= 1e-10, "ensemble((1,1), 2) != 6");
    o.note << "50 vectors x m in {2,3}, max value/bound " << worst_ratio << ", ensemble((1,1),2) = " << hand;
}

void enclosure(Outcome& o) {
    std::mt19937_64 rng(1005);
    int max_doublings = 0;
    double worst_width = 0.0;
    for (int t = 0; t < 100; ++t) {
        Poly p = random_poly(rng, 64);
        const bool nonneg = t % 5 == 0;
        if (nonneg) {
            std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
            for (auto& x : c) x = std::abs(x);
            p = Poly(std::move(c));
        }
        const Enclosure e = sup_norm_enclosure(p);
        max_doublings = std::max(max_doublings, e.doublings_used);
        worst_width = std::max(worst_width, e.relative_width);
        o.require(e.converged && e.relative_width <= 1e-3 && e.doublings_used <= 14, "width above 1e-3 within 14 doublings");
        const double s = sup_norm_sample(p, 1u << 16);
        o.require(e.lo - 1e-9 <= s && s <= e.hi + 1e-9, "dense sample outside [lo - 1e-9, hi + 1e-9]");
        if (nonneg) {
            double p1 = 0.0;
            for (const auto& x : p.coeffs()) p1 += x.real();
            o.require(e.lo <= p1 && p1 <= e.hi, "nonnegative case does not bracket p(1)");
        }
    }
    o.note << "100 polys (20 nonnegative), max doublings " << max_doublings << ", max width " << worst_width;
}

void comparison(Outcome& o) {
    std::mt19937_64 rng(1006);
    double worst = 0.0, worst_tight = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t d = 1 + rng() % 4, e = 1 + rng() % 6;
        const Field field = rng() % 2 ? Field::real : Field::complex;
        const NormedSpace V = random_space(rng, d, field);
        const VFunction f(V, random_matrix(rng, d, e, field));
        // Constant and one-point-support companions for the tight sides.
        Eigen::MatrixXcd cm(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(e));
        Eigen::MatrixXcd sm = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(e));
        for (Eigen::Index x = 0; x < cm.cols(); ++x) cm.col(x) = f.values().col(0);
        sm.col(static_cast<Eigen::Index>(rng() % e)) = f.values().col(0);
        const VFunction c(V, cm), s(V, sm);
        for (double p : kExps)
            for (double q : kExps) {
                if (q < p) continue;
                const ComparisonCheck r = norm_comparison_check(f, p, q);
                const double scale = std::max(1.0, r.norm_p);
                worst = std::max({worst, -r.lhs_slack / scale, -r.rhs_slack / scale});
                o.require(r.lhs_slack >= -1e-10 * scale && r.rhs_slack >= -1e-10 * scale, "comparison inequality fails");
                const double tc = std::abs(norm_comparison_check(c, p, q).rhs_slack);
                const double ts = std::abs(norm_comparison_check(s, p, q).lhs_slack);
                worst_tight = std::max({worst_tight, tc, ts});
                o.require(tc <= 1e-12 && ts <= 1e-12, "tight case slack above 1e-12");
            }
    }
    o.note << "1000 functions x 15 (p,q), worst violation " << worst << ", worst tight slack " << worst_tight;
}

void pairing(Outcome& o) {
    std::mt19937_64 rng(1007);
    double worst = kInf;
    for (int t = 0; t < 200; ++t) {
        const std::size_t d = 1 + rng() % 4, e = 1 + rng() % 6;
        const Field field = rng() % 2 ? Field::real : Field::complex;
        const NormedSpace V = random_space(rng, d, field);
        const VFunction h(V.dual(), random_matrix(rng, d, e, field));
        for (double p : kExps) {
            const PairingDual r = pairing_dual_norm(h, p);
            const double rhs = lp_norm(r.witness, p) * lp_norm(h, conjugate_exponent(p));
            const double lhs = std::abs(pair(h, r.witness));
            worst = std::min(worst, lhs / rhs);
            o.require(lhs >= (1.0 - 1e-9) * rhs, "witness below (1 - 1e-9) ||f|| ||h||");
        }
    }
    o.note << "200 h x 5 p, min |pair| / (||f|| ||h||) = " << worst;
}

void nu(Outcome& o) {
    std::mt19937_64 rng(1008);
    // Spectral value against an independent eigenvalue solve and 1e5 sampled dual vectors.
    double worst_gap = 0.0, worst_eig = 0.0;
    for (int t = 0; t < 6; ++t) {
        const bool complex = t >= 4;
        const std::size_t d = complex ? 2 : 2 + t % 2, e = 3 + rng() % 4;
        const Field field = complex ? Field::complex : Field::real;
        const VFunction f(NormedSpace::lr(d, 2.0, field), random_matrix(rng, d, e, field));
        const NuNormResult r = nu_norm(f, 2.0);
        o.require(r.method == NuMethod::spectral && r.certified, "spectral method not selected");
        const Eigen::MatrixXcd G = f.values() * f.values().adjoint();
        const double eig = std::sqrt(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(G).eigenvalues().maxCoeff());
        worst_eig = std::max(worst_eig, std::abs(eig - r.value) / eig);
        o.require(std::abs(eig - r.value) <= 1e-12 * eig, "spectral value differs from the largest singular value");
        double sample_max = 0.0;
        std::normal_distribution<double> g;
        for (int s = 0; s < 100000; ++s) {
            std::vector<Complex> lam(d);
            for (auto& c : lam) c = complex ? Complex{g(rng), g(rng)} : Complex{g(rng), 0.0};
            const double n = oracle::lr(lam, 2.0);
            std::vector<Complex> y(e);
            for (std::size_t x = 0; x < e; ++x)
                for (std::size_t i = 0; i < d; ++i) y[x] += lam[i] / n * f.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x));
            sample_max = std::max(sample_max, oracle::lr(y, 2.0));
        }
        o.require(sample_max <= r.value * (1.0 + 1e-12), "sampled dual vector beats the spectral value");
        o.require(r.value <= sample_max * (1.0 + 1e-3), "spectral value above sample max (1 + 1e-3)");
        worst_gap = std::max(worst_gap, r.value / sample_max - 1.0);
    }
    // Extreme points against ascent.
    double worst_ep = 0.0;
    for (int t = 0; t < 40; ++t) {
        const std::size_t d = 1 + rng() % 3, e = 2 + rng() % 11;
        const double r = t % 2 ? 1.0 : kInf;
        const NormedSpace V = t % 3 ? NormedSpace::lr(d, r) : NormedSpace::weighted_lr(std::vector<double>(d, 1.5), r);
        const VFunction f(V, random_matrix(rng, d, e, Field::real));
        for (double p : {1.0, 1.5, 2.0, 4.0}) {
            const double a = nu_norm(f, p, NuMethod::extreme_points).value;
            const double b = nu_norm(f, p, NuMethod::ascent).value;
            worst_ep = std::max(worst_ep, std::abs(a - b) / a);
            o.require(std::abs(a - b) <= 1e-6 * a, "extreme points and ascent differ by more than 1e-6");
        }
    }
    // p = inf.
    int exact = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t d = 1 + rng() % 4, e = 1 + rng() % 6;
        const Field field = rng() % 2 ? Field::real : Field::complex;
        const VFunction f(random_space(rng, d, field), random_matrix(rng, d, e, field));
        if (nu_norm(f, kInf).value == lp_norm(f, kInf)) ++exact;
    }
    o.require(exact == 200, "nu_norm(f, inf) != lp_norm(f, inf)");
    o.note << "spectral vs eigen rel " << worst_eig << ", value/sample_max - 1 <= " << worst_gap
           << "; extreme vs ascent rel " << worst_ep << "; p=inf exact " << exact << "/200";
}

void volterra(Outcome& o) {
    const Func1D one = Func1D::poly({1.0});
    double worst_poly = 0.0, worst_grid = 0.0;
    for (unsigned n = 1; n <= 18; ++n) {
        const double rel = std::abs(volterra_iterate(one, n)(1.0).real() * factorial(n) - 1.0);
        worst_poly = std::max(worst_poly, rel);
    }
    const Func1D grid_one = Func1D::sampled(one, 4096);
    for (unsigned n = 1; n <= 6; ++n) {
        const double rel = std::abs(volterra_iterate(grid_one, n)(1.0).real() * factorial(n) - 1.0);
        worst_grid = std::max(worst_grid, rel);
    }
    o.require(worst_poly <= 1e-12, "poly backend relative error above 1e-12");
    o.require(worst_grid <= 1e-6, "grid backend relative error above 1e-6");
    std::mt19937_64 rng(1009);
    double worst_ratio = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Func1D f = Func1D::poly(oracle::random_complex(rng, 1 + rng() % 13));
        const double sf = sup_norm_01(f);
        for (unsigned n = 1; n <= 8; ++n) {
            const double ratio = sup_norm_01(volterra_iterate(f, n)) * factorial(n) / sf;
            worst_ratio = std::max(worst_ratio, ratio);
            o.require(ratio <= 1.0 + 1e-9, "||T^n f|| above ||f|| / n!");
        }
    }
    o.note << "poly n<=18 rel " << worst_poly << ", grid n<=6 rel " << worst_grid << ", max n! ||T^n f|| / ||f|| "
           << worst_ratio;
}

std::string run_binary(const std::string& args, const std::string& threads) {
    const std::string cmd = "CIRCLE_NORMS_THREADS=" + threads + " " + CIRCNORM_CLI_PATH + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    if (status != 0) out += "<exit " + std::to_string(status) + ">";
    return out;
}

void determinism(Outcome& o) {
    const std::string in = std::string(CIRCNORM_INPUT_DIR) + "/";
    const std::vector<std::string> cmds = {
        "supnorm " + in + "p_mixed.json --rel-tol 1e-5",
        "moment " + in + "p_mixed.json --m 4",
        "khintchine " + in + "b_len24.json --m 3 --samples 20000 --seed 5",
        "khintchine " + in + "b_ones4.json --m 2",
        "ensemble " + in + "a_complex.json --m 3",
        "ensemble " + in + "b_len24.json --m 2 --samples 2000 --seed 9",
        "ratio-scan --n 8 --m 3 --trials 20 --seed 4",
        "lp " + in + "vf_complex.json --p 1.5 --nu",
        "lp " + in + "vf_real.json --p 4 --nu --method ascent --seed 3",
        "dual " + in + "vf_complex.json --p 4",
        "volterra " + in + "f_list.json --n 4 --checks --grid 4096",
    };
    int identical = 0;
    for (const auto& cmd : cmds) {
        const std::string ref = run_binary(cmd, "1");
        bool same = ref.find("<exit") == std::string::npos && !ref.empty();
        for (const char* t : {"1", "2", "3", "8"}) same = same && run_binary(cmd, t) == ref;
        o.require(same, "output differs for: " + cmd);
        identical += same;
    }
    o.note << identical << "/" << cmds.size() << " invocations byte-identical across CIRCLE_NORMS_THREADS in {1,2,3,8}, repeated";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<void(Outcome&)> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "Parseval identity", 5.0, parseval},
        {2, "Sign invariance of the L2 moment", 1.0, sign_invariance},
        {3, "Khintchine moment bound", 30.0, khintchine},
        {4, "Ensemble moment bound", 60.0, ensemble},
        {5, "Sup-norm enclosure", 60.0, enclosure},
        {6, "Norm comparison", 10.0, comparison},
        {7, "Pairing duality witness", 5.0, pairing},
        {8, "nu-norm", 60.0, nu},
        {9, "Volterra factorial law", 5.0, volterra},
        {10, "CLI determinism", 10.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.fn(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.note << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = o.ok && in_time;
        failed += !pass;
        std::printf("%s  criterion %2d  %-34s %7.2f s (budget %g s)%s  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    c.budget_s, in_time ? "" : " OVER BUDGET", o.note.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
