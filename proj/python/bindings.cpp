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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "unsharp/coexistence.hpp"
#include "unsharp/marginals.hpp"
#include "unsharp/montecarlo.hpp"
#include "unsharp/scheme.hpp"

namespace py = pybind11;
using namespace unsharp;

namespace {

std::string vec_repr(const Vec3 &v) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "Vec3(%.12g, %.12g, %.12g)", v.x, v.y, v.z);
    return buf;
}

Vec3 vec_from_sequence(const py::sequence &s) {
    if (py::len(s) != 3) {
        throw py::value_error("expected a sequence of three numbers");
    }
    return Vec3{s[0].cast<double>(), s[1].cast<double>(), s[2].cast<double>()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Simulator and decision toolkit for joint unsharp measurements of "
        "complementary qubit observables";
    m.attr("__version__") = "0.1.0";
    m.attr("pi") = pi;
    m.attr("trivial_threshold") = trivial_threshold;
    m.attr("validity_tol") = validity_tol;

    py::class_<Vec3>(m, "Vec3", "Real three-vector in the Bloch picture")
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"),
             py::arg("z"))
        .def(py::init(&vec_from_sequence))
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z)
        .def("norm", &Vec3::norm)
        .def("__repr__", &vec_repr);
    py::implicitly_convertible<py::sequence, Vec3>();

    py::class_<QubitState>(m, "QubitState", "Pure or mixed qubit state")
        .def_static("pure", &QubitState::pure, py::arg("alpha"), py::arg("beta"),
                    "Normalized pure state; amplitudes may be off by up to "
                    "1e-9 and are renormalized")
        .def_static("mixed", &QubitState::mixed, py::arg("bloch"),
                    "State from a Bloch vector with |r| <= 1")
        .def_static("maximally_mixed", &QubitState::maximally_mixed)
        .def("is_pure", &QubitState::is_pure)
        .def("bloch", &QubitState::bloch)
        .def("alpha", &QubitState::alpha)
        .def("beta", &QubitState::beta);

    py::class_<Effect>(m, "Effect",
                       "Operator (f0 I + f.sigma); valid when |f| <= min(f0, 1 - f0)")
        .def(py::init<double, Vec3>(), py::arg("f0"), py::arg("f"))
        .def_readwrite("f0", &Effect::f0)
        .def_readwrite("f", &Effect::f)
        .def("__repr__",
             [](const Effect &e) {
                 char buf[128];
                 std::snprintf(buf, sizeof(buf),
                               "Effect(%.12g, (%.12g, %.12g, %.12g))", e.f0,
                               e.f.x, e.f.y, e.f.z);
                 return std::string(buf);
             })
        .def("__add__", [](const Effect &a, const Effect &b) { return a + b; })
        .def("__sub__", [](const Effect &a, const Effect &b) { return a - b; });

    py::class_<EffectEigenvalues>(m, "EffectEigenvalues")
        .def_readonly("min", &EffectEigenvalues::min)
        .def_readonly("max", &EffectEigenvalues::max);

    m.attr("identity_effect") = identity_effect;
    m.def("eigenvalues", &eigenvalues, py::arg("effect"),
          "Eigenvalue pair f0 -+ |f|");
    m.def("effect_validate", [](const Effect &e) { return effect_validate(e); },
          py::arg("effect"), "True when 0 <= E <= I within tolerance");
    m.def("expectation", &expectation, py::arg("effect"), py::arg("state"),
          "Outcome probability tr(rho E)");

    py::class_<SchemeParams>(m, "SchemeParams",
                             "The five angles fixing the measurement scheme")
        .def(py::init([](double theta_o, double phi_o, double theta_p,
                         double phi_p, double phi) {
                 return SchemeParams{theta_o, phi_o, theta_p, phi_p, phi};
             }),
             py::arg("theta_o"), py::arg("phi_o"), py::arg("theta_p"),
             py::arg("phi_p"), py::arg("phi"))
        .def_readwrite("theta_o", &SchemeParams::theta_o)
        .def_readwrite("phi_o", &SchemeParams::phi_o)
        .def_readwrite("theta_p", &SchemeParams::theta_p)
        .def_readwrite("phi_p", &SchemeParams::phi_p)
        .def_readwrite("phi", &SchemeParams::phi)
        .def("__repr__", [](const SchemeParams &p) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "SchemeParams(%.12g, %.12g, %.12g, %.12g, %.12g)",
                          p.theta_o, p.phi_o, p.theta_p, p.phi_p, p.phi);
            return std::string(buf);
        });

    m.def("check_params", &check_params, py::arg("params"));
    m.def("normalized_params", &normalized_params, py::arg("params"),
          "Azimuths and coupling phase reduced into [0, 2 pi)");

    py::class_<DerivedCoefficients>(m, "DerivedCoefficients")
        .def_readonly("A", &DerivedCoefficients::A)
        .def_readonly("B", &DerivedCoefficients::B)
        .def_readonly("W", &DerivedCoefficients::W)
        .def_readonly("X", &DerivedCoefficients::X)
        .def_readonly("Y", &DerivedCoefficients::Y)
        .def_readonly("Z", &DerivedCoefficients::Z)
        .def_readonly("N1", &DerivedCoefficients::N1)
        .def_readonly("N2", &DerivedCoefficients::N2)
        .def("n_norm", &DerivedCoefficients::n_norm);

    m.def("derived_coefficients", &derived_coefficients, py::arg("params"));

    py::class_<FourOutcomePovm>(m, "FourOutcomePovm")
        .def_readonly("f_pp", &FourOutcomePovm::f_pp)
        .def_readonly("f_pm", &FourOutcomePovm::f_pm)
        .def_readonly("f_mp", &FourOutcomePovm::f_mp)
        .def_readonly("f_mm", &FourOutcomePovm::f_mm)
        .def("outcome", &FourOutcomePovm::outcome, py::arg("sign_o"),
             py::arg("sign_p"));

    m.def("four_effects", &four_effects, py::arg("params"),
          "The four-outcome joint measurement at the given angles");
    m.def("oracle_probability", &oracle_probability, py::arg("params"),
          py::arg("state"), py::arg("sign_o"), py::arg("sign_p"),
          "Outcome probability computed through the two-qubit model");

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("max_abs_deviation", &ValidationReport::max_abs_deviation);

    m.def("validate_scheme", &validate_scheme, py::arg("params"),
          py::arg("n_states"), py::arg("seed"),
          "Worst oracle deviation over Haar-random pure states");

    py::class_<BinaryPovm>(m, "BinaryPovm")
        .def_readonly("plus", &BinaryPovm::plus)
        .def_readonly("minus", &BinaryPovm::minus);

    py::class_<ThreeMarginals>(m, "ThreeMarginals")
        .def_readonly("m1", &ThreeMarginals::m1)
        .def_readonly("m2", &ThreeMarginals::m2)
        .def_readonly("m3", &ThreeMarginals::m3);

    m.def("marginals", &marginals, py::arg("povm"),
          "The three binary marginals of a four-outcome measurement");

    py::class_<Contrasts>(m, "Contrasts")
        .def_readonly("c1", &Contrasts::c1)
        .def_readonly("c2", &Contrasts::c2)
        .def_readonly("c3", &Contrasts::c3);

    m.def("contrasts", &contrasts, py::arg("coefficients"));

    py::class_<Unsharpness>(m, "Unsharpness")
        .def_readonly("u1", &Unsharpness::u1)
        .def_readonly("u2", &Unsharpness::u2)
        .def_readonly("u3", &Unsharpness::u3);

    m.def("unsharpness", &unsharpness, py::arg("contrasts"));

    py::class_<PayoffReport>(m, "PayoffReport")
        .def_readonly("identity_residual", &PayoffReport::identity_residual)
        .def_readonly("pair1_slack", &PayoffReport::pair1_slack)
        .def_readonly("pair2_slack", &PayoffReport::pair2_slack)
        .def_readonly("u_form_ok", &PayoffReport::u_form_ok);

    m.def("payoff_check", &payoff_check, py::arg("contrasts"),
          "Residual of the multiplicative trade-off and its slack forms");
    m.def("variance", &variance, py::arg("marginal"), py::arg("state"),
          "Outcome variance of a binary marginal in a state");
    m.def("interference_direction",
          [](const DerivedCoefficients &c) { return interference_direction(c).n; },
          py::arg("coefficients"),
          "Unit equatorial axis of the third marginal");
    m.def("invert_sigma3", &invert_sigma3, py::arg("p1_plus"),
          py::arg("coefficients"));
    m.def("invert_interference", &invert_interference, py::arg("p3_plus"),
          py::arg("coefficients"));

    py::class_<SharpReconstruction>(m, "SharpReconstruction")
        .def_readonly("p_sigma3_plus", &SharpReconstruction::p_sigma3_plus)
        .def_readonly("p_n_plus", &SharpReconstruction::p_n_plus)
        .def_readonly("sigma3_in_range", &SharpReconstruction::sigma3_in_range)
        .def_readonly("n_in_range", &SharpReconstruction::n_in_range);

    m.def("reconstruct_sharp_probs", &reconstruct_sharp_probs,
          py::arg("p1_plus"), py::arg("p3_plus"), py::arg("coefficients"),
          "Sharp outcome probabilities from the two smeared marginal ones");

    py::class_<CriterionResult>(m, "CriterionResult")
        .def_readonly("coexistent", &CriterionResult::coexistent)
        .def_readonly("lhs", &CriterionResult::lhs);

    m.def("busch_criterion",
          [](const Vec3 &a, const Vec3 &b) {
              return busch_criterion(UnbiasedPair{a, b});
          },
          py::arg("a"), py::arg("b"),
          "Exact coexistence criterion for unbiased binary pairs");
    m.def("perpendicular_criterion",
          [](const Vec3 &a, const Vec3 &b) {
              return perpendicular_criterion(UnbiasedPair{a, b});
          },
          py::arg("a"), py::arg("b"),
          "Specialized criterion |a|^2 + |b|^2 <= 1 for perpendicular pairs");

    py::class_<SearchConfig>(m, "SearchConfig")
        .def(py::init([](int grid_resolution, int refine_iterations,
                         double tolerance, std::uint64_t seed) {
                 return SearchConfig{grid_resolution, refine_iterations,
                                     tolerance, seed};
             }),
             py::arg("grid_resolution") = 15, py::arg("refine_iterations") = 200,
             py::arg("tolerance") = 1e-6, py::arg("seed") = 0)
        .def_readwrite("grid_resolution", &SearchConfig::grid_resolution)
        .def_readwrite("refine_iterations", &SearchConfig::refine_iterations)
        .def_readwrite("tolerance", &SearchConfig::tolerance)
        .def_readwrite("seed", &SearchConfig::seed);

    py::class_<FeasibilityResult>(m, "FeasibilityResult")
        .def_readonly("feasible", &FeasibilityResult::feasible)
        .def_readonly("margin", &FeasibilityResult::margin)
        .def_readonly("witness", &FeasibilityResult::witness);

    m.def("joint_feasibility", &joint_feasibility, py::arg("e_plus"),
          py::arg("f_plus"), py::arg("config") = SearchConfig{},
          "Deterministic search for a joint measurement of two binary POVMs");

    py::class_<ModelMarginalReport>(m, "ModelMarginalReport")
        .def_readonly("pair13", &ModelMarginalReport::pair13)
        .def_readonly("pair23", &ModelMarginalReport::pair23);

    m.def("model_marginal_coexistence", &model_marginal_coexistence,
          py::arg("params"), py::arg("config") = SearchConfig{},
          "Feasibility of the scheme's two informative marginal pairs");

    py::class_<CountTable>(m, "CountTable")
        .def_readonly("n_pp", &CountTable::n_pp)
        .def_readonly("n_pm", &CountTable::n_pm)
        .def_readonly("n_mp", &CountTable::n_mp)
        .def_readonly("n_mm", &CountTable::n_mm)
        .def_readonly("n_total", &CountTable::n_total);

    m.def("sample_counts", &sample_counts, py::arg("povm"), py::arg("state"),
          py::arg("n"), py::arg("seed"),
          "Seeded i.i.d. outcome tallies; bit-identical across platforms");

    py::class_<Reconstruction>(m, "Reconstruction")
        .def_readonly("p_hat", &Reconstruction::p_hat)
        .def_readonly("se", &Reconstruction::se)
        .def_readonly("in_range", &Reconstruction::in_range);

    py::class_<EstimateReport>(m, "EstimateReport")
        .def_readonly("p_hat_1", &EstimateReport::p_hat_1)
        .def_readonly("p_hat_2", &EstimateReport::p_hat_2)
        .def_readonly("p_hat_3", &EstimateReport::p_hat_3)
        .def_readonly("sigma3", &EstimateReport::sigma3)
        .def_readonly("n", &EstimateReport::n);

    m.def("estimate", &estimate, py::arg("counts"), py::arg("coefficients"),
          "Marginal frequencies and affine inversions with standard errors; "
          "inversions are None below the trivial threshold");

    py::class_<ConvergenceRow>(m, "ConvergenceRow")
        .def_readonly("n", &ConvergenceRow::n)
        .def_readonly("rmse_sigma3", &ConvergenceRow::rmse_sigma3)
        .def_readonly("rmse_n", &ConvergenceRow::rmse_n);

    m.def("convergence_study", &convergence_study, py::arg("params"),
          py::arg("state"), py::arg("n_list"), py::arg("reps"), py::arg("seed"),
          "Root-mean-square reconstruction error per sample size");
}
