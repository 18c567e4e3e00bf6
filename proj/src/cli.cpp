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

#include "circnorm/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "circnorm/circle.hpp"
#include "circnorm/errors.hpp"
#include "circnorm/finite_lp.hpp"
#include "circnorm/json_io.hpp"
#include "circnorm/rademacher.hpp"
#include "circnorm/volterra.hpp"

namespace circnorm::cli {

namespace {

using io::Json;

// Exhaustive enumeration is the default up to 2^20 sign strings.
constexpr unsigned kAutoExhaustiveMax = 20;

struct Config {
    std::string input;
    std::string output;
    double rel_tol = 1e-3;
    int max_doublings = 14;
    unsigned m = 1;
    std::string mode = "auto";
    std::uint64_t samples = 65536;
    std::uint64_t seed = 0;
    unsigned n = 1;
    std::uint64_t trials = 100;
    std::string p = "2";
    bool nu = false;
    std::string method = "automatic";
    unsigned starts = 32;
    bool checks = false;
    std::size_t grid = 0;
};

const char* mode_name(SampleMode m) { return m == SampleMode::exhaustive ? "exhaustive" : "monte_carlo"; }

const char* method_name(NuMethod m) {
    switch (m) {
        case NuMethod::closed_form: return "closed_form";
        case NuMethod::extreme_points: return "extreme_points";
        case NuMethod::spectral: return "spectral";
        case NuMethod::ascent: return "ascent";
        default: return "automatic";
    }
}

NuMethod parse_method(const std::string& s) {
    static const std::map<std::string, NuMethod> names{{"automatic", NuMethod::automatic},
                                                       {"closed_form", NuMethod::closed_form},
                                                       {"extreme_points", NuMethod::extreme_points},
                                                       {"spectral", NuMethod::spectral},
                                                       {"ascent", NuMethod::ascent}};
    auto it = names.find(s);
    if (it == names.end()) throw io::InputError("unknown nu method \"" + s + "\"");
    return it->second;
}

EnsembleOptions ensemble_options(const Config& c, std::size_t length) {
    EnsembleOptions o;
    o.samples = c.samples;
    o.seed = c.seed;
    if (c.mode == "exhaustive")
        o.mode = SampleMode::exhaustive;
    else if (c.mode == "monte_carlo")
        o.mode = SampleMode::monte_carlo;
    else if (c.mode == "auto")
        o.mode = length <= kAutoExhaustiveMax ? SampleMode::exhaustive : SampleMode::monte_carlo;
    else
        throw io::InputError("unknown mode \"" + c.mode + "\"");
    return o;
}

Json estimate_json(const MomentEstimate& e) {
    Json j;
    j["value"] = e.value;
    j["mode"] = mode_name(e.mode);
    j["samples"] = e.samples;
    j["std_error"] = e.std_error;
    j["seed"] = e.seed;
    return j;
}

double energy(std::span<const Complex> a) {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return s;
}

Json cmd_supnorm(const Config& c) {
    const Poly p = io::poly_from_json(io::read_file(c.input));
    EnclosureOptions opts;
    opts.rel_tol = c.rel_tol;
    opts.max_doublings = c.max_doublings;
    const Enclosure e = sup_norm_enclosure(p, opts);
    Json j;
    j["command"] = "supnorm";
    j["degree"] = p.degree();
    j["lo"] = e.lo;
    j["hi"] = e.hi;
    j["doublings_used"] = e.doublings_used;
    j["relative_width"] = e.relative_width;
    j["converged"] = e.converged;
    j["capped"] = e.capped;
    return j;
}

Json cmd_moment(const Config& c) {
    const Poly p = io::poly_from_json(io::read_file(c.input));
    Json j;
    j["command"] = "moment";
    j["degree"] = p.degree();
    j["m"] = c.m;
    j["value"] = circle_moment_exact(p, c.m);
    return j;
}

Json cmd_khintchine(const Config& c) {
    const auto b = io::coefficients_from_json(io::read_file(c.input));
    const MomentEstimate e = khintchine_moment(b, c.m, ensemble_options(c, b.size()));
    const double scale = std::pow(energy(b), c.m);
    const double ref = gaussian_moment_constant(c.m) * scale;
    Json j;
    j["command"] = "khintchine";
    j["n"] = b.size() - 1;
    j["m"] = c.m;
    j.update(estimate_json(e));
    j["reference"] = ref;
    j["ratio"] = scale > 0.0 ? e.value / scale : 0.0;
    return j;
}

Json cmd_ensemble(const Config& c) {
    const auto a = io::coefficients_from_json(io::read_file(c.input));
    const MomentEstimate e = ensemble_circle_moment(a, c.m, ensemble_options(c, a.size()));
    const double constant = gaussian_moment_constant(c.m);
    const double bound = constant * std::pow(energy(a), c.m);
    Json j;
    j["command"] = "ensemble";
    j["n"] = a.size() - 1;
    j["m"] = c.m;
    j.update(estimate_json(e));
    j["constant"] = constant;
    j["bound"] = bound;
    j["within_bound"] = e.value <= bound + 1e-9 * std::max(1.0, bound);
    return j;
}

Json cmd_ratio_scan(const Config& c) {
    const RatioScanReport r = khintchine_ratio_scan(c.n, c.m, c.trials, c.seed);
    Json j;
    j["command"] = "ratio-scan";
    j["n"] = r.n;
    j["m"] = r.m;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["max_ratio"] = r.max_ratio;
    j["min_ratio"] = r.min_ratio;
    j["argmax"] = io::complex_array_to_json(r.argmax);
    j["reference"] = r.reference;
    j["within_reference"] = r.within_reference;
    return j;
}

Json cmd_lp(const Config& c) {
    const VFunction f = io::vfunction_from_json(io::read_file(c.input));
    const double p = io::parse_exponent(std::string_view(c.p));
    Json j;
    j["command"] = "lp";
    j["p"] = io::exponent_to_json(p);
    j["dim"] = f.space().dim;
    j["points"] = f.size();
    j["lp_norm"] = lp_norm(f, p);
    if (c.nu) {
        AscentOptions ao;
        ao.starts = c.starts;
        ao.seed = c.seed;
        const NuNormResult r = nu_norm(f, p, parse_method(c.method), ao);
        Json nu;
        nu["value"] = r.value;
        nu["certified"] = r.certified;
        nu["method"] = method_name(r.method);
        j["nu_norm"] = nu;
    }
    return j;
}

Json cmd_dual(const Config& c) {
    // The file's space is V; its values are read as a V*-valued function h.
    const VFunction in = io::vfunction_from_json(io::read_file(c.input));
    const VFunction h(in.space().dual(), in.values(), in.points());
    const double p = io::parse_exponent(std::string_view(c.p));
    const PairingDual d = pairing_dual_norm(h, p);
    Json j;
    j["command"] = "dual";
    j["p"] = io::exponent_to_json(p);
    j["q"] = io::exponent_to_json(d.q);
    j["value"] = d.value;
    j["witness"] = io::vfunction_to_json(d.witness);
    j["witness_norm"] = lp_norm(d.witness, p);
    j["pairing"] = io::complex_to_json(pair(h, d.witness));
    return j;
}

std::vector<Func1D> read_functions(const Json& doc) {
    const Json* list = &doc;
    if (doc.is_object() && doc.contains("functions")) list = &doc["functions"];
    std::vector<Func1D> fs;
    if (list->is_array()) {
        if (list->empty()) throw io::InputError("function list is empty");
        for (const auto& e : *list) fs.push_back(io::func1d_from_json(e));
    } else {
        fs.push_back(io::func1d_from_json(*list));
    }
    return fs;
}

Json cmd_volterra(const Config& c) {
    std::vector<Func1D> fs = read_functions(io::read_file(c.input));
    if (c.grid > 0)
        for (auto& f : fs) f = Func1D::sampled(f, c.grid);
    Json items = Json::array();
    for (const auto& f : fs) {
        const Func1D it = volterra_iterate(f, c.n);
        Json e;
        e["backend"] = f.is_poly() ? "poly" : "grid";
        e["at_0"] = io::complex_to_json(it(0.0));
        e["at_half"] = io::complex_to_json(it(0.5));
        e["at_1"] = io::complex_to_json(it(1.0));
        e["sup_norm"] = sup_norm_01(it);
        const auto warn = iterate_warning(f, c.n);
        e["warning"] = warn ? Json(*warn) : Json(nullptr);
        items.push_back(e);
    }
    Json j;
    j["command"] = "volterra";
    j["n"] = c.n;
    j["functions"] = items;
    if (c.checks) {
        const VolterraReport r = volterra_norm_checks(fs, c.n);
        Json rep;
        rep["tolerance"] = r.tolerance;
        Json list = Json::array();
        for (const auto& i : r.items) {
            Json e;
            e["sup_f"] = i.sup_f;
            e["sup_iterate"] = i.sup_iterate;
            e["factorial_bound"] = i.factorial_bound;
            e["factorial_slack"] = i.factorial_slack;
            e["sup_once"] = i.sup_once;
            e["l1"] = i.l1;
            e["l1_slack"] = i.l1_slack;
            list.push_back(e);
        }
        rep["items"] = list;
        rep["sum_sup_once"] = r.sum_sup_once;
        rep["sup_abs_sum"] = r.sup_abs_sum;
        rep["sum_slack"] = r.sum_slack;
        j["checks"] = rep;
    }
    return j;
}

Json error_json(const char* kind, const std::string& message) {
    Json j;
    Json e;
    e["kind"] = kind;
    e["message"] = message;
    j["error"] = e;
    return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Norms of polynomials on the unit circle, sign ensembles, finite l^p norms and the Volterra operator.",
                 "circnorm"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.add_option("-o,--output", c.output, "Write the JSON document to this file instead of stdout");

    auto input = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", c.input, what)->required()->check(CLI::ExistingFile);
    };

    auto* sup = app.add_subcommand("supnorm", "Certified enclosure [lo, hi] of max |p| on the unit circle");
    input(sup, "Polynomial coefficients: array of [re, im] pairs or reals, index = power of z");
    sup->add_option("--rel-tol", c.rel_tol, "Stop once (hi - lo) / hi is at most this");
    sup->add_option("--max-doublings", c.max_doublings, "Maximum number of squarings");

    auto* mom = app.add_subcommand("moment", "Exact circle moment (1/2pi) int |p|^{2m}");
    input(mom, "Polynomial coefficients");
    mom->add_option("--m", c.m, "Moment order m >= 1")->required();

    auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("--m", c.m, "Moment order m >= 1")->required();
        sub->add_option("--mode", c.mode, "auto, exhaustive or monte_carlo (auto: exhaustive up to 20 signs)")
            ->check(CLI::IsMember({"auto", "exhaustive", "monte_carlo"}));
        sub->add_option("--samples", c.samples, "Monte Carlo sample count");
        sub->add_option("--seed", c.seed, "Monte Carlo seed");
    };
    auto* kh = app.add_subcommand("khintchine", "Average of |sum b_j s_j|^{2m} over sign strings s");
    input(kh, "Coefficients b_0..b_n");
    add_sampling(kh);
    auto* ens = app.add_subcommand("ensemble", "Average circle moment of sum a_j s_j z^j over sign strings");
    input(ens, "Coefficients a_0..a_n");
    add_sampling(ens);

    auto* scan = app.add_subcommand("ratio-scan", "Khintchine ratio over random unit complex vectors");
    scan->add_option("--n", c.n, "Vectors have n + 1 entries")->required();
    scan->add_option("--m", c.m, "Moment order")->required();
    scan->add_option("--trials", c.trials, "Number of random vectors");
    scan->add_option("--seed", c.seed, "Seed");

    auto* lp = app.add_subcommand("lp", "l^p norm of a vector-valued function on a finite set");
    input(lp, "VFunction: {space, points, values}");
    lp->add_option("--p", c.p, "Exponent in [1, inf] (\"inf\" accepted)")->required();
    lp->add_flag("--nu", c.nu, "Also compute the nu-norm");
    lp->add_option("--method", c.method, "nu-norm method")
        ->check(CLI::IsMember({"automatic", "closed_form", "extreme_points", "spectral", "ascent"}));
    lp->add_option("--starts", c.starts, "Ascent starting points");
    lp->add_option("--seed", c.seed, "Ascent seed");

    auto* dual = app.add_subcommand("dual", "Dual norm of the pairing functional and a norming witness");
    input(dual, "VFunction whose space is V; its values define h with values in V*");
    dual->add_option("--p", c.p, "Exponent of the primal norm")->required();

    auto* vol = app.add_subcommand("volterra", "Iterates of T f(x) = int_0^x f on [0, 1]");
    input(vol, "Func1D, array of Func1D, or {\"functions\": [...]}");
    vol->add_option("--n", c.n, "Number of applications n >= 1")->required();
    vol->add_flag("--checks", c.checks, "Report the norm inequalities");
    vol->add_option("--grid", c.grid, "Resample every input onto a grid with this many intervals");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        const int code = app.exit(e, o, er);
        if (code == 0) {
            out << o.str();
            return kOk;
        }
        err << er.str() << o.str();
        io::dump(error_json("input", e.what()), out);
        return kInputError;
    }

    const std::map<CLI::App*, std::function<Json(const Config&)>> handlers{
        {sup, cmd_supnorm},     {mom, cmd_moment}, {kh, cmd_khintchine}, {ens, cmd_ensemble},
        {scan, cmd_ratio_scan}, {lp, cmd_lp},      {dual, cmd_dual},     {vol, cmd_volterra}};

    auto fail = [&](const char* kind, const std::string& msg, int code) {
        err << "circnorm: " << kind << " error: " << msg << "\n";
        io::dump(error_json(kind, msg), out);
        return code;
    };

    Json doc;
    try {
        doc = handlers.at(app.get_subcommands().front())(c);
    } catch (const DomainError& e) {
        return fail("input", e.what(), kInputError);
    } catch (const ResourceError& e) {
        return fail("resource", e.what(), kResourceError);
    } catch (const ConsistencyError& e) {
        return fail("consistency", e.what(), kConsistencyError);
    } catch (const std::bad_alloc&) {
        return fail("resource", "out of memory", kResourceError);
    }

    if (c.output.empty()) {
        io::dump(doc, out);
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!f) return fail("input", "cannot write " + c.output, kInputError);
        io::dump(doc, f);
    }
    return kOk;
}

}  // namespace circnorm::cli
