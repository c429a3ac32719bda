// Copyright 2026 The Unsharp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line surface. Error mapping: anything wrong with the request
// itself (flags, angles, state specs, sweep grids) exits 2 before any
// computation starts; failures raised while computing exit 1. Success is 0.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unsharp/coexistence.hpp"
#include "unsharp/marginals.hpp"
#include "unsharp/montecarlo.hpp"
#include "unsharp/scheme.hpp"

namespace {

using nlohmann::json;
using namespace unsharp;

/// Raised while building a run configuration; mapped to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename... Args>
std::string strf(const char *fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), fmt, args...);
    return buf;
}

/// 17 significant digits: lossless double round-trip for CSV cells.
std::string csv17(double v) { return strf("%.17g", v); }

std::vector<double> parse_double_list(const std::string &flag,
                                      const std::string &text,
                                      std::size_t expected) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok = text.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t idx = 0;
            const double v = std::stod(tok, &idx);
            if (idx != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception &) {
            throw UsageError(flag + ": cannot parse '" + tok + "' as a number");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (expected != 0 && out.size() != expected) {
        throw UsageError(flag + ": expected " + std::to_string(expected) +
                         " comma-separated values, got " +
                         std::to_string(out.size()));
    }
    for (const double v : out) {
        if (!std::isfinite(v)) throw UsageError(flag + ": values must be finite");
    }
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string &flag,
                                         const std::string &text) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok = text.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t idx = 0;
            const long long v = std::stoll(tok, &idx);
            if (idx != tok.size()) throw std::invalid_argument(tok);
            if (v < 1) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception &) {
            throw UsageError(flag + ": cannot parse '" + tok +
                             "' as a positive integer");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shared option groups

struct AngleOpts {
    std::optional<double> theta_o, phi_o, theta_p, phi_p, phi;
    bool degrees = false;
};

void add_angle_options(CLI::App *cmd, AngleOpts &a, bool required) {
    auto *o1 = cmd->add_option("--theta-o", a.theta_o, "Object polar angle");
    auto *o2 = cmd->add_option("--phi-o", a.phi_o, "Object azimuthal angle");
    auto *o3 = cmd->add_option("--theta-p", a.theta_p, "Probe polar angle");
    auto *o4 = cmd->add_option("--phi-p", a.phi_p, "Probe azimuthal angle");
    auto *o5 = cmd->add_option("--phi", a.phi, "Coupling phase angle");
    if (required) {
        for (auto *o : {o1, o2, o3, o4, o5}) o->required();
    }
    cmd->add_flag("--degrees", a.degrees,
                  "Interpret all angle inputs in degrees instead of radians");
}

double to_radians(double v, bool degrees) {
    return degrees ? v * pi / 180.0 : v;
}

SchemeParams make_params(const AngleOpts &a) {
    const SchemeParams p{to_radians(*a.theta_o, a.degrees),
                         to_radians(*a.phi_o, a.degrees),
                         to_radians(*a.theta_p, a.degrees),
                         to_radians(*a.phi_p, a.degrees),
                         to_radians(*a.phi, a.degrees)};
    try {
        check_params(p);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    return p;
}

struct StateOpts {
    std::string pure;
    std::string bloch;
};

void add_state_options(CLI::App *cmd, StateOpts &s) {
    cmd->add_option("--pure", s.pure,
                    "Pure state amplitudes re(alpha),im(alpha),re(beta),im(beta)");
    cmd->add_option("--bloch", s.bloch, "State Bloch vector x,y,z");
}

std::optional<QubitState> build_state(const StateOpts &s) {
    if (!s.pure.empty() && !s.bloch.empty()) {
        throw UsageError("--pure and --bloch are mutually exclusive");
    }
    try {
        if (!s.pure.empty()) {
            const auto v = parse_double_list("--pure", s.pure, 4);
            return QubitState::pure({v[0], v[1]}, {v[2], v[3]});
        }
        if (!s.bloch.empty()) {
            const auto v = parse_double_list("--bloch", s.bloch, 3);
            return QubitState::mixed({v[0], v[1], v[2]});
        }
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    return std::nullopt;
}

QubitState require_state(const StateOpts &s) {
    auto st = build_state(s);
    if (!st) throw UsageError("a state is required: pass --pure or --bloch");
    return *st;
}

struct OutOpts {
    std::string format;
    std::string output;
};

void add_output_options(CLI::App *cmd, OutOpts &o, const char *default_format) {
    o.format = default_format;
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_option("--output", o.output,
                    "Write output to this file instead of stdout");
}

void emit(const std::string &payload, const OutOpts &o) {
    if (o.output.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + o.output);
    out << payload;
    if (!out) throw std::runtime_error("failed writing output file: " + o.output);
}

void reject_csv(const OutOpts &o, const char *command) {
    if (o.format == "csv") {
        throw UsageError(std::string("csv format is not supported for '") +
                         command + "'; use json or text");
    }
}

// ---------------------------------------------------------------------------
// JSON builders

json vec_json(const Vec3 &v) { return json::array({v.x, v.y, v.z}); }

json effect_json(const Effect &e) {
    return json{{"f0", e.f0}, {"f", vec_json(e.f)}};
}

json params_json(const SchemeParams &p) {
    return json{{"theta_o", p.theta_o},
                {"phi_o", p.phi_o},
                {"theta_p", p.theta_p},
                {"phi_p", p.phi_p},
                {"phi", p.phi}};
}

json state_json(const QubitState &s) {
    json j{{"bloch", vec_json(s.bloch())}};
    if (s.is_pure()) {
        j["pure"] = json::array({s.alpha().real(), s.alpha().imag(),
                                 s.beta().real(), s.beta().imag()});
    }
    return j;
}

json eigen_json(const Effect &e) {
    const EffectEigenvalues ev = eigenvalues(e);
    return json{{"min", ev.min}, {"max", ev.max}};
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

std::string effect_text(const char *label, const Effect &e) {
    return strf("effect %s: f0=%.9g  f=(%.9g, %.9g, %.9g)\n", label, e.f0,
                e.f.x, e.f.y, e.f.z);
}

std::string params_text(const SchemeParams &p) {
    return strf("params: theta_o=%.9g phi_o=%.9g theta_p=%.9g phi_p=%.9g phi=%.9g\n",
                p.theta_o, p.phi_o, p.theta_p, p.phi_p, p.phi);
}

// ---------------------------------------------------------------------------
// effects

int run_effects(const AngleOpts &ao, const StateOpts &so, const OutOpts &oo) {
    const SchemeParams p = make_params(ao);
    const auto state = build_state(so);
    reject_csv(oo, "effects");

    const DerivedCoefficients c = derived_coefficients(p);
    const FourOutcomePovm povm = four_effects(p);
    const Contrasts ct = contrasts(c);
    const Effect sum = povm.f_pp + povm.f_pm + povm.f_mp + povm.f_mm;
    const double completeness =
        std::max(std::abs(sum.f0 - 1.0), sum.f.norm());
    double min_eig = 1.0;
    for (const Effect *e : {&povm.f_pp, &povm.f_pm, &povm.f_mp, &povm.f_mm}) {
        min_eig = std::min(min_eig, eigenvalues(*e).min);
    }

    if (oo.format == "json") {
        json j{{"schema", 1},
               {"command", "effects"},
               {"params", params_json(p)},
               {"coefficients",
                json{{"A", c.A},
                     {"B", c.B},
                     {"W", c.W},
                     {"X", c.X},
                     {"Y", c.Y},
                     {"Z", c.Z},
                     {"N1", c.N1},
                     {"N2", c.N2},
                     {"n_norm", c.n_norm()}}},
               {"effects",
                json{{"pp", effect_json(povm.f_pp)},
                     {"pm", effect_json(povm.f_pm)},
                     {"mp", effect_json(povm.f_mp)},
                     {"mm", effect_json(povm.f_mm)}}},
               {"contrasts", json{{"C1", ct.c1}, {"C2", ct.c2}, {"C3", ct.c3}}},
               {"completeness_residual", completeness},
               {"min_eigenvalue", min_eig}};
        if (state) {
            j["state"] = state_json(*state);
            j["probabilities"] = json{{"pp", expectation(povm.f_pp, *state)},
                                      {"pm", expectation(povm.f_pm, *state)},
                                      {"mp", expectation(povm.f_mp, *state)},
                                      {"mm", expectation(povm.f_mm, *state)}};
        }
        emit(dump(j), oo);
        return 0;
    }

    std::string out = params_text(p);
    out += strf("coefficients: A=%.9g B=%.9g N1=%.9g N2=%.9g |N|=%.9g\n", c.A,
                c.B, c.N1, c.N2, c.n_norm());
    out += effect_text("++", povm.f_pp);
    out += effect_text("+-", povm.f_pm);
    out += effect_text("-+", povm.f_mp);
    out += effect_text("--", povm.f_mm);
    out += strf("contrasts: C1=%.9g C2=%.9g C3=%.9g\n", ct.c1, ct.c2, ct.c3);
    out += strf("completeness residual: %.3g\n", completeness);
    out += strf("min eigenvalue: %.3g\n", min_eig);
    if (state) {
        out += strf("probabilities: ++ %.9g  +- %.9g  -+ %.9g  -- %.9g\n",
                    expectation(povm.f_pp, *state), expectation(povm.f_pm, *state),
                    expectation(povm.f_mp, *state), expectation(povm.f_mm, *state));
    }
    emit(out, oo);
    return 0;
}

// ---------------------------------------------------------------------------
// marginals

int run_marginals(const AngleOpts &ao, const StateOpts &so, const OutOpts &oo) {
    const SchemeParams p = make_params(ao);
    const auto state = build_state(so);
    reject_csv(oo, "marginals");

    const DerivedCoefficients c = derived_coefficients(p);
    const ThreeMarginals m = marginals(four_effects(p));
    const Contrasts ct = contrasts(c);
    const Unsharpness u = unsharpness(ct);
    const PayoffReport pay = payoff_check(ct);
    const bool has_direction = ct.c3 >= trivial_threshold;
    const bool has_reconstruction =
        state && ct.c1 >= trivial_threshold && has_direction;

    if (oo.format == "json") {
        auto marginal_json = [](const BinaryPovm &b, double contrast,
                                double unsharp) {
            return json{{"plus", effect_json(b.plus)},
                        {"minus", effect_json(b.minus)},
                        {"eigenvalues", json{{"plus", eigen_json(b.plus)},
                                             {"minus", eigen_json(b.minus)}}},
                        {"contrast", contrast},
                        {"unsharpness", unsharp}};
        };
        json j{{"schema", 1},
               {"command", "marginals"},
               {"params", params_json(p)},
               {"marginals", json{{"m1", marginal_json(m.m1, ct.c1, u.u1)},
                                  {"m2", marginal_json(m.m2, ct.c2, u.u2)},
                                  {"m3", marginal_json(m.m3, ct.c3, u.u3)}}},
               {"payoff", json{{"identity_residual", pay.identity_residual},
                               {"pair1_slack", pay.pair1_slack},
                               {"pair2_slack", pay.pair2_slack},
                               {"u_form_ok", pay.u_form_ok}}},
               {"interference_direction",
                has_direction ? vec_json(interference_direction(c).n)
                              : json(nullptr)}};
        if (state) {
            j["state"] = state_json(*state);
            j["probabilities"] =
                json{{"p1_plus", expectation(m.m1.plus, *state)},
                     {"p2_plus", expectation(m.m2.plus, *state)},
                     {"p3_plus", expectation(m.m3.plus, *state)}};
            j["variances"] = json{{"m1", variance(m.m1, *state)},
                                  {"m2", variance(m.m2, *state)},
                                  {"m3", variance(m.m3, *state)}};
            if (has_reconstruction) {
                const SharpReconstruction rec = reconstruct_sharp_probs(
                    expectation(m.m1.plus, *state),
                    expectation(m.m3.plus, *state), c);
                j["reconstruction"] =
                    json{{"p_sigma3_plus", rec.p_sigma3_plus},
                         {"p_n_plus", rec.p_n_plus},
                         {"sigma3_in_range", rec.sigma3_in_range},
                         {"n_in_range", rec.n_in_range}};
            } else {
                j["reconstruction"] = json(nullptr);
            }
        }
        emit(dump(j), oo);
        return 0;
    }

    std::string out = params_text(p);
    auto marginal_text = [&out](const char *name, const BinaryPovm &b) {
        out += strf("%s plus : f0=%.9g f=(%.9g, %.9g, %.9g)  eigenvalues=[%.9g, %.9g]\n",
                    name, b.plus.f0, b.plus.f.x, b.plus.f.y, b.plus.f.z,
                    eigenvalues(b.plus).min, eigenvalues(b.plus).max);
        out += strf("%s minus: f0=%.9g f=(%.9g, %.9g, %.9g)  eigenvalues=[%.9g, %.9g]\n",
                    name, b.minus.f0, b.minus.f.x, b.minus.f.y, b.minus.f.z,
                    eigenvalues(b.minus).min, eigenvalues(b.minus).max);
    };
    marginal_text("m1", m.m1);
    marginal_text("m2", m.m2);
    marginal_text("m3", m.m3);
    out += strf("contrasts: C1=%.9g C2=%.9g C3=%.9g\n", ct.c1, ct.c2, ct.c3);
    out += strf("unsharpness: U1=%.9g U2=%.9g U3=%.9g\n", u.u1, u.u2, u.u3);
    out += strf("payoff: identity_residual=%.3g pair1_slack=%.9g pair2_slack=%.9g u_form_ok=%s\n",
                pay.identity_residual, pay.pair1_slack, pay.pair2_slack,
                pay.u_form_ok ? "yes" : "no");
    if (has_direction) {
        const Vec3 n = interference_direction(c).n;
        out += strf("interference direction: (%.9g, %.9g, %.9g)\n", n.x, n.y, n.z);
    } else {
        out += "interference direction: undefined\n";
    }
    if (state) {
        out += strf("probabilities: p1+=%.9g p2+=%.9g p3+=%.9g\n",
                    expectation(m.m1.plus, *state), expectation(m.m2.plus, *state),
                    expectation(m.m3.plus, *state));
        out += strf("variances: m1=%.9g m2=%.9g m3=%.9g\n",
                    variance(m.m1, *state), variance(m.m2, *state),
                    variance(m.m3, *state));
        if (has_reconstruction) {
            const SharpReconstruction rec = reconstruct_sharp_probs(
                expectation(m.m1.plus, *state), expectation(m.m3.plus, *state),
                c);
            out += strf("reconstruction: p(sigma3=+)=%.9g (%s) p(n=+)=%.9g (%s)\n",
                        rec.p_sigma3_plus,
                        rec.sigma3_in_range ? "in range" : "out of range",
                        rec.p_n_plus, rec.n_in_range ? "in range" : "out of range");
        } else {
            out += "reconstruction: undefined (trivial marginal)\n";
        }
    }
    emit(out, oo);
    return 0;
}

// ---------------------------------------------------------------------------
// validate

constexpr double oracle_tolerance = 1e-10;

int run_validate(const AngleOpts &ao, int n_states, std::uint64_t seed,
                 const OutOpts &oo) {
    const SchemeParams p = make_params(ao);
    if (n_states < 1) throw UsageError("--random-states must be at least 1");
    reject_csv(oo, "validate");

    const ValidationReport r = validate_scheme(p, n_states, seed);
    const bool pass = r.max_abs_deviation <= oracle_tolerance;

    if (oo.format == "json") {
        emit(dump(json{{"schema", 1},
                       {"command", "validate"},
                       {"params", params_json(p)},
                       {"n_states", n_states},
                       {"seed", seed},
                       {"max_abs_deviation", r.max_abs_deviation},
                       {"tolerance", oracle_tolerance},
                       {"pass", pass}}),
             oo);
    } else {
        emit(params_text(p) +
                 strf("max_abs_deviation=%.3g over %d states (tolerance %.1g): %s\n",
                      r.max_abs_deviation, n_states, oracle_tolerance,
                      pass ? "pass" : "FAIL"),
             oo);
    }
    if (!pass) {
        std::cerr << strf("error: oracle deviation %.3g exceeds tolerance %.1g\n",
                          r.max_abs_deviation, oracle_tolerance);
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// payoff-sweep

struct SweepAxis {
    int angle = 0;  // index into the canonical order below
    double start = 0.0;
    double stop = 0.0;
    std::int64_t count = 1;
};

constexpr const char *kAngleNames[5] = {"theta_o", "phi_o", "theta_p", "phi_p",
                                        "phi"};

SweepAxis parse_sweep(const std::string &spec, bool degrees) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos) {
        throw UsageError("--sweep: expected name=start:stop:count, got '" +
                         spec + "'");
    }
    const std::string name = spec.substr(0, eq);
    SweepAxis ax;
    ax.angle = -1;
    for (int i = 0; i < 5; ++i) {
        if (name == kAngleNames[i]) ax.angle = i;
    }
    if (ax.angle < 0) {
        throw UsageError("--sweep: unknown angle '" + name +
                         "'; expected one of theta_o, phi_o, theta_p, phi_p, phi");
    }
    const std::string rest = spec.substr(eq + 1);
    const std::size_t c1 = rest.find(':');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                                   : rest.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        rest.find(':', c2 + 1) != std::string::npos) {
        throw UsageError("--sweep: expected name=start:stop:count, got '" +
                         spec + "'");
    }
    const auto start = parse_double_list("--sweep", rest.substr(0, c1), 1);
    const auto stop = parse_double_list("--sweep", rest.substr(c1 + 1, c2 - c1 - 1), 1);
    const auto count = parse_int_list("--sweep", rest.substr(c2 + 1));
    ax.start = to_radians(start[0], degrees);
    ax.stop = to_radians(stop[0], degrees);
    ax.count = count[0];
    const bool polar = ax.angle == 0 || ax.angle == 2;
    if (polar) {
        const double lo = std::min(ax.start, ax.stop);
        const double hi = std::max(ax.start, ax.stop);
        if (lo < 0.0 || hi > pi) {
            throw UsageError(std::string("--sweep: ") + name +
                             " must stay within [0, pi]");
        }
    }
    return ax;
}

std::vector<double> axis_values(const SweepAxis &ax) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(ax.count));
    if (ax.count == 1) {
        v.push_back(ax.start);
        return v;
    }
    const double step = (ax.stop - ax.start) / static_cast<double>(ax.count - 1);
    for (std::int64_t i = 0; i < ax.count; ++i) {
        double x = i == ax.count - 1 ? ax.stop
                                     : ax.start + static_cast<double>(i) * step;
        // Pin rounding drift at the polar domain edges.
        if (ax.angle == 0 || ax.angle == 2) {
            x = std::clamp(x, 0.0, pi);
        }
        v.push_back(x);
    }
    return v;
}

constexpr const char *kSweepHeader =
    "theta_o,phi_o,theta_p,phi_p,phi,A,B,N1,N2,C1,C2,C3,U1,U2,U3,"
    "identity_residual";

int run_payoff_sweep(const AngleOpts &ao,
                     const std::vector<std::string> &sweep_specs,
                     const OutOpts &oo) {
    // Each of the five angles is either fixed by its flag or swept, never both.
    std::array<std::optional<SweepAxis>, 5> axes;
    for (const std::string &spec : sweep_specs) {
        SweepAxis ax = parse_sweep(spec, ao.degrees);
        if (axes[static_cast<std::size_t>(ax.angle)]) {
            throw UsageError(std::string("--sweep: duplicate axis '") +
                             kAngleNames[ax.angle] + "'");
        }
        axes[static_cast<std::size_t>(ax.angle)] = ax;
    }
    const std::array<const std::optional<double> *, 5> fixed = {
        &ao.theta_o, &ao.phi_o, &ao.theta_p, &ao.phi_p, &ao.phi};
    std::array<std::vector<double>, 5> values;
    std::int64_t rows = 1;
    for (std::size_t i = 0; i < 5; ++i) {
        if (axes[i] && fixed[i]->has_value()) {
            throw UsageError(std::string("angle ") + kAngleNames[i] +
                             " is both fixed and swept");
        }
        if (axes[i]) {
            if (rows > 10'000'000 / axes[i]->count) {
                throw UsageError("sweep grid exceeds 10^7 rows");
            }
            rows *= axes[i]->count;
            values[i] = axis_values(*axes[i]);
        } else if (fixed[i]->has_value()) {
            values[i] = {to_radians(**fixed[i], ao.degrees)};
        } else {
            throw UsageError(std::string("angle ") + kAngleNames[i] +
                             " must be fixed with --" +
                             (i == 0 ? "theta-o"
                              : i == 1 ? "phi-o"
                              : i == 2 ? "theta-p"
                              : i == 3 ? "phi-p"
                                       : "phi") +
                             " or swept with --sweep");
        }
    }
    {
        // Validate the fixed coordinates once; sweep bounds already checked.
        const SchemeParams probe{values[0].front(), values[1].front(),
                                 values[2].front(), values[3].front(),
                                 values[4].front()};
        try {
            check_params(probe);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }

    json json_rows = json::array();
    std::string out;
    const bool as_csv = oo.format == "csv";
    const bool as_text = oo.format == "text";
    if (as_csv) {
        out += kSweepHeader;
        out += '\n';
    } else if (as_text) {
        out += strf("%-12s %-12s %-12s %-12s %-12s %-12s %-12s %-12s %-12s "
                    "%-12s %-12s %-12s %-12s %-12s %-12s %s\n",
                    "theta_o", "phi_o", "theta_p", "phi_p", "phi", "A", "B",
                    "N1", "N2", "C1", "C2", "C3", "U1", "U2", "U3",
                    "identity_residual");
    }

    // Row-major over the canonical angle order; the last axis varies fastest.
    std::array<std::size_t, 5> idx{0, 0, 0, 0, 0};
    for (std::int64_t row = 0; row < rows; ++row) {
        const SchemeParams p{values[0][idx[0]], values[1][idx[1]],
                             values[2][idx[2]], values[3][idx[3]],
                             values[4][idx[4]]};
        const DerivedCoefficients c = derived_coefficients(p);
        const Contrasts ct = contrasts(c);
        const Unsharpness u = unsharpness(ct);
        const PayoffReport pay = payoff_check(ct);
        const double cols[16] = {p.theta_o, p.phi_o,  p.theta_p, p.phi_p,
                                 p.phi,     c.A,      c.B,       c.N1,
                                 c.N2,      ct.c1,    ct.c2,     ct.c3,
                                 u.u1,      u.u2,     u.u3,
                                 pay.identity_residual};
        if (as_csv) {
            for (int k = 0; k < 16; ++k) {
                if (k > 0) out += ',';
                out += csv17(cols[k]);
            }
            out += '\n';
        } else if (as_text) {
            for (int k = 0; k < 16; ++k) {
                out += strf(k + 1 < 16 ? "%-12.6g " : "%-12.6g", cols[k]);
            }
            out += '\n';
        } else {
            json r;
            static constexpr const char *kCols[16] = {
                "theta_o", "phi_o", "theta_p", "phi_p", "phi", "A",
                "B",       "N1",    "N2",      "C1",    "C2",  "C3",
                "U1",      "U2",    "U3",      "identity_residual"};
            for (int k = 0; k < 16; ++k) r[kCols[k]] = cols[k];
            json_rows.push_back(std::move(r));
        }
        for (int d = 4; d >= 0; --d) {
            if (++idx[static_cast<std::size_t>(d)] <
                values[static_cast<std::size_t>(d)].size()) {
                break;
            }
            idx[static_cast<std::size_t>(d)] = 0;
        }
    }

    if (oo.format == "json") {
        emit(dump(json{{"schema", 1},
                       {"command", "payoff-sweep"},
                       {"rows", std::move(json_rows)}}),
             oo);
    } else {
        emit(out, oo);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// coexist / feasibility

int run_coexist(const std::string &a_spec, const std::string &b_spec,
                const OutOpts &oo) {
    if (a_spec.empty() || b_spec.empty()) {
        throw UsageError("coexist requires --a x,y,z and --b x,y,z");
    }
    reject_csv(oo, "coexist");
    const auto av = parse_double_list("--a", a_spec, 3);
    const auto bv = parse_double_list("--b", b_spec, 3);
    const UnbiasedPair pair{{av[0], av[1], av[2]}, {bv[0], bv[1], bv[2]}};
    const CriterionResult r = busch_criterion(pair);
    if (oo.format == "json") {
        emit(dump(json{{"schema", 1},
                       {"command", "coexist"},
                       {"a", vec_json(pair.a)},
                       {"b", vec_json(pair.b)},
                       {"lhs", r.lhs},
                       {"coexistent", r.coexistent}}),
             oo);
    } else {
        emit(strf("%s (lhs=%.6f)\n", r.coexistent ? "coexistent" : "not coexistent",
                  r.lhs),
             oo);
    }
    return 0;
}

int run_feasibility(const std::string &e_spec, const std::string &f_spec,
                    const OutOpts &oo) {
    if (e_spec.empty() || f_spec.empty()) {
        throw UsageError("feasibility requires --e f0,x,y,z and --f f0,x,y,z");
    }
    reject_csv(oo, "feasibility");
    const auto ev = parse_double_list("--e", e_spec, 4);
    const auto fv = parse_double_list("--f", f_spec, 4);
    const Effect e{ev[0], {ev[1], ev[2], ev[3]}};
    const Effect f{fv[0], {fv[1], fv[2], fv[3]}};
    const FeasibilityResult r = joint_feasibility(e, f);
    if (oo.format == "json") {
        emit(dump(json{{"schema", 1},
                       {"command", "feasibility"},
                       {"e", effect_json(e)},
                       {"f", effect_json(f)},
                       {"feasible", r.feasible},
                       {"margin", r.margin},
                       {"witness", effect_json(r.witness)}}),
             oo);
    } else {
        std::string out = strf("%s (margin=%.6f)\n",
                               r.feasible ? "feasible" : "infeasible", r.margin);
        out += strf("witness: f0=%.9g f=(%.9g, %.9g, %.9g)\n", r.witness.f0,
                    r.witness.f.x, r.witness.f.y, r.witness.f.z);
        emit(out, oo);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// simulate / converge

json reconstruction_json(const std::optional<Reconstruction> &r) {
    if (!r) return json(nullptr);
    return json{{"p_hat", r->p_hat}, {"se", r->se}, {"in_range", r->in_range}};
}

int run_simulate(const AngleOpts &ao, const StateOpts &so, std::int64_t n,
                 std::uint64_t seed, const OutOpts &oo) {
    const SchemeParams p = make_params(ao);
    const QubitState state = require_state(so);
    if (n < 1) throw UsageError("--n must be at least 1");
    reject_csv(oo, "simulate");

    const DerivedCoefficients c = derived_coefficients(p);
    const CountTable counts = sample_counts(four_effects(p), state, n, seed);
    const EstimateReport est = estimate(counts, c);

    if (oo.format == "json") {
        emit(dump(json{{"schema", 1},
                       {"command", "simulate"},
                       {"params", params_json(p)},
                       {"state", state_json(state)},
                       {"n", counts.n_total},
                       {"seed", seed},
                       {"counts", json{{"pp", counts.n_pp},
                                       {"pm", counts.n_pm},
                                       {"mp", counts.n_mp},
                                       {"mm", counts.n_mm}}},
                       {"estimates",
                        json{{"p_hat_1", est.p_hat_1},
                             {"p_hat_2", est.p_hat_2},
                             {"p_hat_3", est.p_hat_3},
                             {"sigma3", reconstruction_json(est.sigma3)},
                             {"n", reconstruction_json(est.n)}}}}),
             oo);
        return 0;
    }

    std::string out = params_text(p);
    out += strf("counts: ++ %lld  +- %lld  -+ %lld  -- %lld  (n=%lld)\n",
                static_cast<long long>(counts.n_pp),
                static_cast<long long>(counts.n_pm),
                static_cast<long long>(counts.n_mp),
                static_cast<long long>(counts.n_mm),
                static_cast<long long>(counts.n_total));
    out += strf("marginal frequencies: p1=%.9g p2=%.9g p3=%.9g\n", est.p_hat_1,
                est.p_hat_2, est.p_hat_3);
    auto recon_text = [](const char *label,
                         const std::optional<Reconstruction> &r) {
        if (!r) return strf("reconstructed %s: undefined (trivial marginal)\n", label);
        return strf("reconstructed %s: %.9g (se %.3g, %s)\n", label, r->p_hat,
                    r->se, r->in_range ? "in range" : "out of range");
    };
    out += recon_text("p(sigma3=+)", est.sigma3);
    out += recon_text("p(n=+)", est.n);
    emit(out, oo);
    return 0;
}

/// Least-squares slope of log(rmse) against log(n); null when fewer than two
/// usable rows.
json fit_slope(const std::vector<ConvergenceRow> &rows, bool sigma3) {
    std::vector<double> xs, ys;
    for (const ConvergenceRow &r : rows) {
        const double e = sigma3 ? r.rmse_sigma3 : r.rmse_n;
        if (e > 0.0) {
            xs.push_back(std::log(static_cast<double>(r.n)));
            ys.push_back(std::log(e));
        }
    }
    if (xs.size() < 2) return json(nullptr);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return json(num / den);
}

int run_converge(const AngleOpts &ao, const StateOpts &so,
                 const std::string &n_list_spec, int reps, std::uint64_t seed,
                 const OutOpts &oo) {
    const SchemeParams p = make_params(ao);
    const QubitState state = require_state(so);
    if (n_list_spec.empty()) throw UsageError("--n-list is required");
    const std::vector<std::int64_t> n_list =
        parse_int_list("--n-list", n_list_spec);
    if (reps < 1) throw UsageError("--reps must be at least 1");

    const std::vector<ConvergenceRow> rows =
        convergence_study(p, state, n_list, reps, seed);
    const json slope_sigma3 = fit_slope(rows, true);
    const json slope_n = fit_slope(rows, false);

    if (oo.format == "json") {
        json jrows = json::array();
        for (const ConvergenceRow &r : rows) {
            jrows.push_back(json{{"n", r.n},
                                 {"rmse_sigma3", r.rmse_sigma3},
                                 {"rmse_n", r.rmse_n}});
        }
        emit(dump(json{{"schema", 1},
                       {"command", "converge"},
                       {"params", params_json(p)},
                       {"state", state_json(state)},
                       {"reps", reps},
                       {"seed", seed},
                       {"rows", std::move(jrows)},
                       {"slopes", json{{"sigma3", slope_sigma3}, {"n", slope_n}}}}),
             oo);
        return 0;
    }
    if (oo.format == "csv") {
        std::string out = "n,rmse_sigma3,rmse_n\n";
        for (const ConvergenceRow &r : rows) {
            out += strf("%lld,", static_cast<long long>(r.n));
            out += csv17(r.rmse_sigma3);
            out += ',';
            out += csv17(r.rmse_n);
            out += '\n';
        }
        emit(out, oo);
        return 0;
    }
    std::string out = params_text(p);
    out += strf("%-12s %-14s %-14s\n", "n", "rmse_sigma3", "rmse_n");
    for (const ConvergenceRow &r : rows) {
        out += strf("%-12lld %-14.6g %-14.6g\n", static_cast<long long>(r.n),
                    r.rmse_sigma3, r.rmse_n);
    }
    auto slope_text = [](const json &s) {
        return s.is_null() ? std::string("n/a") : strf("%.6g", s.get<double>());
    };
    out += "slope sigma3=" + slope_text(slope_sigma3) +
           " slope n=" + slope_text(slope_n) + "\n";
    emit(out, oo);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Joint unsharp measurement toolkit for complementary qubit observables"};
    app.require_subcommand(1);

    AngleOpts eff_a;
    StateOpts eff_s;
    OutOpts eff_o;
    auto *eff = app.add_subcommand(
        "effects", "Construct the four-outcome measurement at given angles");
    add_angle_options(eff, eff_a, true);
    add_state_options(eff, eff_s);
    add_output_options(eff, eff_o, "text");

    AngleOpts mar_a;
    StateOpts mar_s;
    OutOpts mar_o;
    auto *mar = app.add_subcommand(
        "marginals", "Binary marginals, contrasts, pay-off checks, reconstruction");
    add_angle_options(mar, mar_a, true);
    add_state_options(mar, mar_s);
    add_output_options(mar, mar_o, "text");

    AngleOpts val_a;
    OutOpts val_o;
    int val_states = 0;
    std::uint64_t val_seed = 0;
    auto *val = app.add_subcommand(
        "validate", "Cross-check outcome probabilities against the two-qubit model");
    add_angle_options(val, val_a, true);
    val->add_option("--random-states", val_states, "Number of random pure states")
        ->required();
    val->add_option("--seed", val_seed, "Random seed")->capture_default_str();
    add_output_options(val, val_o, "text");

    AngleOpts swp_a;
    OutOpts swp_o;
    std::vector<std::string> swp_specs;
    auto *swp = app.add_subcommand(
        "payoff-sweep", "Tabulate contrasts and pay-off residuals over an angle grid");
    add_angle_options(swp, swp_a, false);
    swp->add_option("--sweep", swp_specs,
                    "Sweep an angle: name=start:stop:count (repeatable)");
    add_output_options(swp, swp_o, "csv");

    std::string cox_a, cox_b;
    OutOpts cox_o;
    auto *cox = app.add_subcommand(
        "coexist", "Decide coexistence of two unbiased binary observables");
    cox->add_option("--a", cox_a, "First Pauli vector x,y,z");
    cox->add_option("--b", cox_b, "Second Pauli vector x,y,z");
    add_output_options(cox, cox_o, "text");

    std::string fea_e, fea_f;
    OutOpts fea_o;
    auto *fea = app.add_subcommand(
        "feasibility", "Search for a joint measurement of two binary observables");
    fea->add_option("--e", fea_e, "First effect f0,x,y,z");
    fea->add_option("--f", fea_f, "Second effect f0,x,y,z");
    add_output_options(fea, fea_o, "text");

    AngleOpts sim_a;
    StateOpts sim_s;
    OutOpts sim_o;
    std::int64_t sim_n = 0;
    std::uint64_t sim_seed = 0;
    auto *sim = app.add_subcommand(
        "simulate", "Draw seeded outcome counts and reconstruct sharp probabilities");
    add_angle_options(sim, sim_a, true);
    add_state_options(sim, sim_s);
    sim->add_option("--n", sim_n, "Number of samples")->required();
    sim->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
    add_output_options(sim, sim_o, "text");

    AngleOpts con_a;
    StateOpts con_s;
    OutOpts con_o;
    std::string con_nlist;
    int con_reps = 0;
    std::uint64_t con_seed = 0;
    auto *con = app.add_subcommand(
        "converge", "Reconstruction error versus sample size over repeated runs");
    add_angle_options(con, con_a, true);
    add_state_options(con, con_s);
    con->add_option("--n-list", con_nlist, "Comma-separated sample sizes")
        ->required();
    con->add_option("--reps", con_reps, "Repetitions per sample size")->required();
    con->add_option("--seed", con_seed, "Random seed")->capture_default_str();
    add_output_options(con, con_o, "text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(eff)) return run_effects(eff_a, eff_s, eff_o);
        if (app.got_subcommand(mar)) return run_marginals(mar_a, mar_s, mar_o);
        if (app.got_subcommand(val))
            return run_validate(val_a, val_states, val_seed, val_o);
        if (app.got_subcommand(swp))
            return run_payoff_sweep(swp_a, swp_specs, swp_o);
        if (app.got_subcommand(cox)) return run_coexist(cox_a, cox_b, cox_o);
        if (app.got_subcommand(fea)) return run_feasibility(fea_e, fea_f, fea_o);
        if (app.got_subcommand(sim))
            return run_simulate(sim_a, sim_s, sim_n, sim_seed, sim_o);
        if (app.got_subcommand(con))
            return run_converge(con_a, con_s, con_nlist, con_reps, con_seed,
                                con_o);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
