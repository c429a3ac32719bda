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

// End-to-end tests of the command-line binary: exit codes, pinned text
// output, and full-precision JSON/CSV round-trips against the library.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "unsharp/coexistence.hpp"
#include "unsharp/marginals.hpp"
#include "unsharp/montecarlo.hpp"
#include "unsharp/scheme.hpp"

using nlohmann::json;
using namespace unsharp;

namespace {

// The canonical configuration, spelled exactly as passed on the command line
// so parsed and compiled values are the same doubles.
constexpr const char *kCanonicalText = "1.0471975511965976";
constexpr double kCanonical = 1.0471975511965976;
constexpr const char *kCanonicalFlags =
    "--theta-o 1.0471975511965976 --phi-o 0 --theta-p 1.0471975511965976 "
    "--phi-p 0 --phi 0";
const SchemeParams kCanonicalParams{kCanonical, 0.0, kCanonical, 0.0, 0.0};

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string &args) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    const std::string tag = "unsharp_cli_" + std::to_string(++counter);
    const auto out_path = dir / (tag + ".out");
    const auto err_path = dir / (tag + ".err");
    const std::string cmd = std::string(CLI_BINARY) + " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = read_file(out_path);
    r.err = read_file(err_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return r;
}

Effect effect_from_json(const json &j) {
    return Effect{j.at("f0").get<double>(),
                  {j.at("f").at(0).get<double>(), j.at("f").at(1).get<double>(),
                   j.at("f").at(2).get<double>()}};
}

std::vector<std::string> split_lines(const std::string &text) {
    std::vector<std::string> lines;
    std::string cur;
    for (const char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

TEST_CASE("usage problems exit with code 2 and a diagnostic") {
    const struct {
        const char *args;
        const char *hint;
    } cases[] = {
        {"effects --theta-o 4.0 --phi-o 0 --theta-p 1 --phi-p 0 --phi 0",
         "theta_o"},
        {"effects --theta-o nan --phi-o 0 --theta-p 1 --phi-p 0 --phi 0",
         "finite"},
        {"effects --theta-o 1 --phi-o 0 --theta-p 1 --phi-p 0 --phi 0 "
         "--format csv",
         "csv"},
        {"marginals --theta-o 1 --phi-o 0 --theta-p 1 --phi-p 0 --phi 0 "
         "--pure 1,0,0,0 --bloch 0,0,1",
         "mutually exclusive"},
        {"marginals --theta-o 1 --phi-o 0 --theta-p 1 --phi-p 0 --phi 0 "
         "--pure 1,0,0,0.5",
         ""},
        {"validate --theta-o 1 --phi-o 0 --theta-p 1 --phi-p 0 --phi 0 "
         "--random-states 0",
         "--random-states"},
        {"simulate --theta-o 1 --phi-o 0 --theta-p 1 --phi-p 0 --phi 0 "
         "--bloch 0,0,1 --n 0",
         "--n"},
        {"simulate --theta-o 1 --phi-o 0 --theta-p 1 --phi-p 0 --phi 0 --n 10",
         "state"},
        {"converge --theta-o 1 --phi-o 0 --theta-p 1 --phi-p 0 --phi 0 "
         "--pure 1,0,0,0 --n-list 100 --reps 0",
         "--reps"},
        {"coexist --a 0,0,0.5", "--b"},
        {"coexist --a 0,0,bad --b 0.1,0,0", "--a"},
        {"feasibility --e 0.5,0,0,0.4", "--f"},
        {"payoff-sweep --theta-o 1 --phi-p 0 --phi 0 --sweep theta_p=0:3",
         "--sweep"},
        {"payoff-sweep --theta-o 1 --phi-p 0 --phi 0 --sweep alpha=0:1:5",
         "unknown angle"},
        {"payoff-sweep --theta-o 1 --phi-p 0 --phi 0 --sweep "
         "theta_p=0:3:4000 --sweep phi_o=0:6:4000",
         "10^7"},
        {"payoff-sweep --phi-o 0 --theta-p 1 --phi-p 0 --phi 0", "theta_o"},
        {"payoff-sweep --theta-o 1 --phi-o 0 --theta-p 1 --phi-p 0 --phi 0 "
         "--sweep phi=0:1:5",
         "both fixed and swept"},
        {"payoff-sweep --theta-o 1 --phi-o 0 --phi-p 0 --phi 0 --sweep "
         "theta_p=0:4:5",
         "[0, pi]"},
    };
    for (const auto &c : cases) {
        CAPTURE(c.args);
        const CliResult r = run_cli(c.args);
        CHECK(r.exit_code == 2);
        CHECK(r.err.find(c.hint) != std::string::npos);
    }
}

TEST_CASE("unparseable command lines exit with code 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("effects --theta-o 1 --phi-o 0 --theta-p 1").exit_code == 2);
    CHECK(run_cli("effects --no-such-flag 1").exit_code == 2);
    const CliResult fmt = run_cli(
        "effects --theta-o 1 --phi-o 0 --theta-p 1 --phi-p 0 --phi 0 "
        "--format yaml");
    CHECK(fmt.exit_code == 2);
}

TEST_CASE("help requests exit with code 0") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("effects --help").exit_code == 0);
    CHECK(run_cli("payoff-sweep --help").exit_code == 0);
}

TEST_CASE("computation failures exit with code 1") {
    // An effect with |f| > min(f0, 1 - f0) is rejected by the library after
    // the command line itself parsed fine.
    const CliResult bad_effect =
        run_cli("feasibility --e 0.5,0,0,1 --f 0.5,0.5,0,0");
    CHECK(bad_effect.exit_code == 1);
    CHECK(bad_effect.err.find("error:") != std::string::npos);

    const CliResult big_vector = run_cli("coexist --a 0,0,2 --b 0.1,0,0");
    CHECK(big_vector.exit_code == 1);

    // Sample sizes below the library floor pass flag validation but fail in
    // the convergence study.
    const CliResult tiny_n = run_cli(
        "converge --theta-o 1 --phi-o 0 --theta-p 1 --phi-p 0 --phi 0 "
        "--pure 1,0,0,0 --n-list 5 --reps 2");
    CHECK(tiny_n.exit_code == 1);

    const CliResult bad_output = run_cli(
        "coexist --a 0,0,0.5 --b 0.5,0,0 --output /nonexistent/dir/x.json");
    CHECK(bad_output.exit_code == 1);
}

TEST_CASE("coexist prints the pinned verdict line") {
    const CliResult boundary = run_cli("coexist --a 0,0,0.6 --b 0.8,0,0");
    CHECK(boundary.exit_code == 0);
    CHECK(boundary.out == "coexistent (lhs=1.000000)\n");

    const CliResult beyond = run_cli("coexist --a 0,0,0.8 --b 0.8,0,0");
    CHECK(beyond.exit_code == 0);
    CHECK(beyond.out.substr(0, 14) == "not coexistent");

    const UnbiasedPair pair{{0.0, 0.0, 0.8}, {0.8, 0.0, 0.0}};
    const CliResult as_json =
        run_cli("coexist --a 0,0,0.8 --b 0.8,0,0 --format json");
    const json j = json::parse(as_json.out);
    CHECK(j.at("schema").get<int>() == 1);
    CHECK(j.at("coexistent").get<bool>() == busch_criterion(pair).coexistent);
    CHECK(j.at("lhs").get<double>() == busch_criterion(pair).lhs);
}

TEST_CASE("effects json round-trips to full precision") {
    const CliResult r =
        run_cli(std::string("effects ") + kCanonicalFlags + " --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("schema").get<int>() == 1);
    CHECK(j.at("command").get<std::string>() == "effects");
    CHECK(j.at("params").at("theta_o").get<double>() == kCanonical);

    // Re-reading the emitted effects reproduces the library's construction
    // bit for bit, and re-validating them reproduces identical verdicts.
    const FourOutcomePovm povm = four_effects(kCanonicalParams);
    const struct {
        const char *key;
        const Effect *eff;
    } outcomes[] = {{"pp", &povm.f_pp},
                    {"pm", &povm.f_pm},
                    {"mp", &povm.f_mp},
                    {"mm", &povm.f_mm}};
    for (const auto &o : outcomes) {
        const Effect parsed = effect_from_json(j.at("effects").at(o.key));
        CHECK(parsed.f0 == o.eff->f0);
        CHECK(parsed.f.x == o.eff->f.x);
        CHECK(parsed.f.y == o.eff->f.y);
        CHECK(parsed.f.z == o.eff->f.z);
        CHECK(effect_validate(parsed) == effect_validate(*o.eff));
    }
    const DerivedCoefficients c = derived_coefficients(kCanonicalParams);
    CHECK(j.at("coefficients").at("A").get<double>() == c.A);
    CHECK(j.at("coefficients").at("N1").get<double>() == c.N1);
    CHECK(j.at("contrasts").at("C3").get<double>() == contrasts(c).c3);
}

TEST_CASE("effects with a state reports outcome probabilities") {
    const CliResult r = run_cli(std::string("effects ") + kCanonicalFlags +
                                " --pure 1,0,0,0 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    const FourOutcomePovm povm = four_effects(kCanonicalParams);
    const QubitState plus = QubitState::pure({1.0, 0.0}, {0.0, 0.0});
    CHECK(j.at("probabilities").at("pp").get<double>() ==
          expectation(povm.f_pp, plus));
    CHECK(j.at("probabilities").at("mm").get<double>() ==
          expectation(povm.f_mm, plus));
    CHECK(j.at("state").at("bloch").at(2).get<double>() == 1.0);
}

TEST_CASE("marginals json matches the library including reconstruction") {
    const CliResult r = run_cli(std::string("marginals ") + kCanonicalFlags +
                                " --pure 1,0,0,0 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    const DerivedCoefficients c = derived_coefficients(kCanonicalParams);
    const ThreeMarginals m = marginals(four_effects(kCanonicalParams));
    const QubitState plus = QubitState::pure({1.0, 0.0}, {0.0, 0.0});

    CHECK(effect_from_json(j.at("marginals").at("m3").at("plus")).f0 ==
          m.m3.plus.f0);
    CHECK(j.at("marginals").at("m3").at("eigenvalues").at("plus").at("min")
              .get<double>() == eigenvalues(m.m3.plus).min);
    CHECK(j.at("payoff").at("identity_residual").get<double>() ==
          payoff_check(contrasts(c)).identity_residual);
    CHECK(j.at("interference_direction").at(0).get<double>() ==
          interference_direction(c).n.x);
    const SharpReconstruction rec = reconstruct_sharp_probs(
        expectation(m.m1.plus, plus), expectation(m.m3.plus, plus), c);
    CHECK(j.at("reconstruction").at("p_sigma3_plus").get<double>() ==
          rec.p_sigma3_plus);
    CHECK(j.at("reconstruction").at("n_in_range").get<bool>() == rec.n_in_range);
    CHECK(j.at("variances").at("m1").get<double>() == variance(m.m1, plus));
}

TEST_CASE("marginals reports the trivial interference case as undefined") {
    // theta_p = 0 sharpens the second marginal and erases the third.
    const CliResult r = run_cli(
        "marginals --theta-o 1 --phi-o 0 --theta-p 0 --phi-p 0 --phi 0 "
        "--pure 1,0,0,0 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("interference_direction").is_null());
    CHECK(j.at("reconstruction").is_null());
}

TEST_CASE("validate passes at tight tolerance and reports its inputs") {
    const CliResult r = run_cli(std::string("validate ") + kCanonicalFlags +
                                " --random-states 300 --seed 42 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("n_states").get<int>() == 300);
    CHECK(j.at("seed").get<int>() == 42);
    CHECK(j.at("max_abs_deviation").get<double>() <= 1e-10);
    CHECK(j.at("max_abs_deviation").get<double>() ==
          validate_scheme(kCanonicalParams, 300, 42).max_abs_deviation);
}

TEST_CASE("payoff sweep emits the fixed csv header and lossless cells") {
    const CliResult r = run_cli(
        "payoff-sweep --theta-o 1.5 --phi-o 0.25 --phi-p 0.5 --phi 0 "
        "--sweep theta_p=0:3:7");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find('\r') == std::string::npos);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 8);
    CHECK(lines[0] ==
          "theta_o,phi_o,theta_p,phi_p,phi,A,B,N1,N2,C1,C2,C3,U1,U2,U3,"
          "identity_residual");
    const double step = 3.0 / 6.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 16);
        const double theta_p =
            i == 7 ? 3.0 : static_cast<double>(i - 1) * step;
        const SchemeParams p{1.5, 0.25, theta_p, 0.5, 0.0};
        const DerivedCoefficients c = derived_coefficients(p);
        const Contrasts ct = contrasts(c);
        // 17 significant digits round-trip the binary doubles exactly.
        CHECK(std::stod(fields[2]) == theta_p);
        CHECK(std::stod(fields[5]) == c.A);
        CHECK(std::stod(fields[8]) == c.N2);
        CHECK(std::stod(fields[11]) == ct.c3);
        CHECK(std::stod(fields[15]) <= 1e-12);
    }
}

TEST_CASE("sweeping theta_p at a sharp first marginal trivializes the third") {
    const CliResult r = run_cli(
        "payoff-sweep --theta-o 1.5707963267948966 --phi-o 0 --phi-p 0 "
        "--phi 0 --sweep theta_p=0:3.141592653589793:9");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 10);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        CHECK(std::stod(fields[9]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(std::stod(fields[11])) <= 1e-12);
    }
}

TEST_CASE("degree inputs match their radian equivalents") {
    const CliResult deg = run_cli(
        "effects --theta-o 60 --phi-o 0 --theta-p 60 --phi-p 0 --phi 0 "
        "--degrees --format json");
    REQUIRE(deg.exit_code == 0);
    const json j = json::parse(deg.out);
    const DerivedCoefficients c = derived_coefficients(kCanonicalParams);
    CHECK(j.at("coefficients").at("A").get<double>() ==
          doctest::Approx(c.A).epsilon(1e-14));
    CHECK(j.at("coefficients").at("N1").get<double>() ==
          doctest::Approx(c.N1).epsilon(1e-14));
}

TEST_CASE("feasibility reproduces the sharp-pair optimum") {
    const CliResult r = run_cli(
        "feasibility --e 0.5,0,0,0.5 --f 0.5,0.5,0,0 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK_FALSE(j.at("feasible").get<bool>());
    const double margin = j.at("margin").get<double>();
    CHECK(margin == doctest::Approx(-(std::sqrt(2.0) - 1.0) / 4.0)
                        .epsilon(1e-10));

    // The emitted witness really achieves the emitted margin.
    const Effect e{0.5, {0.0, 0.0, 0.5}};
    const Effect f{0.5, {0.5, 0.0, 0.0}};
    const Effect g = effect_from_json(j.at("witness"));
    const Effect rest = identity_effect + g - e - f;
    double min_eig = 1.0;
    for (const Effect *eff : {&g, &rest}) {
        min_eig = std::min(min_eig, eigenvalues(*eff).min);
    }
    for (const Effect eff : {e - g, f - g}) {
        min_eig = std::min(min_eig, eigenvalues(eff).min);
    }
    CHECK(min_eig == doctest::Approx(margin).epsilon(1e-9));
}

TEST_CASE("feasible verdicts render as text with a witness line") {
    const CliResult r = run_cli("feasibility --e 0.3,0,0,0.2 --f 0.3,0.2,0,0");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.substr(0, 8) == "feasible");
    CHECK(r.out.find("witness:") != std::string::npos);
}

TEST_CASE("simulate json carries the library's exact seeded counts") {
    const CliResult r = run_cli(std::string("simulate ") + kCanonicalFlags +
                                " --bloch 0,0,1 --n 100000 --seed 7 "
                                "--format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    const CountTable counts =
        sample_counts(four_effects(kCanonicalParams),
                      QubitState::mixed({0.0, 0.0, 1.0}), 100000, 7);
    CHECK(j.at("counts").at("pp").get<std::int64_t>() == counts.n_pp);
    CHECK(j.at("counts").at("pm").get<std::int64_t>() == counts.n_pm);
    CHECK(j.at("counts").at("mp").get<std::int64_t>() == counts.n_mp);
    CHECK(j.at("counts").at("mm").get<std::int64_t>() == counts.n_mm);
    CHECK(j.at("n").get<std::int64_t>() == 100000);

    const EstimateReport est =
        estimate(counts, derived_coefficients(kCanonicalParams));
    CHECK(j.at("estimates").at("p_hat_1").get<double>() == est.p_hat_1);
    REQUIRE(est.sigma3.has_value());
    CHECK(j.at("estimates").at("sigma3").at("p_hat").get<double>() ==
          est.sigma3->p_hat);
    CHECK(j.at("estimates").at("sigma3").at("se").get<double>() ==
          est.sigma3->se);
    CHECK(j.at("estimates").at("n").at("in_range").get<bool>() ==
          est.n->in_range);
}

TEST_CASE("simulate marks reconstructions as null when a marginal is trivial") {
    const CliResult r = run_cli(
        "simulate --theta-o 1 --phi-o 0 --theta-p 0 --phi-p 0 --phi 0 "
        "--bloch 0,0,1 --n 1000 --seed 3 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK_FALSE(j.at("estimates").at("sigma3").is_null());
    CHECK(j.at("estimates").at("n").is_null());
}

TEST_CASE("simulate is reproducible for a fixed seed") {
    const std::string cmd = std::string("simulate ") + kCanonicalFlags +
                            " --pure 1,0,0,0 --n 50000 --seed 11";
    const CliResult a = run_cli(cmd);
    const CliResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("converge csv matches the library rows bit for bit") {
    const CliResult r = run_cli(std::string("converge ") + kCanonicalFlags +
                                " --pure 1,0,0,0 --n-list 100,1000 --reps 5 "
                                "--seed 99 --format csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "n,rmse_sigma3,rmse_n");
    const auto rows = convergence_study(kCanonicalParams,
                                        QubitState::pure({1.0, 0.0}, {0.0, 0.0}),
                                        {100, 1000}, 5, 99);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto fields = split_csv(lines[i + 1]);
        REQUIRE(fields.size() == 3);
        CHECK(std::stoll(fields[0]) == rows[i].n);
        CHECK(std::stod(fields[1]) == rows[i].rmse_sigma3);
        CHECK(std::stod(fields[2]) == rows[i].rmse_n);
    }
}

TEST_CASE("converge json reports a slope near the square-root law") {
    const CliResult r = run_cli(std::string("converge ") + kCanonicalFlags +
                                " --pure 1,0,0,0 --n-list 1000,10000,100000 "
                                "--reps 10 --seed 5 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.at("rows").size() == 3);
    const double slope = j.at("slopes").at("sigma3").get<double>();
    CHECK(slope > -0.7);
    CHECK(slope < -0.3);
}

TEST_CASE("output lands identically in a file and on stdout") {
    const auto path = std::filesystem::temp_directory_path() /
                      "unsharp_cli_file_check.json";
    const std::string base = std::string("effects ") + kCanonicalFlags +
                             " --format json";
    const CliResult to_stdout = run_cli(base);
    const CliResult to_file = run_cli(base + " --output " + path.string());
    REQUIRE(to_file.exit_code == 0);
    CHECK(to_file.out.empty());
    CHECK(read_file(path) == to_stdout.out);
    std::filesystem::remove(path);
}
