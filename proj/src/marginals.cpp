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

#include "unsharp/marginals.hpp"

#include <cmath>
#include <stdexcept>

namespace unsharp {

namespace {

bool complete_povm(const FourOutcomePovm &p) {
    const Effect sum = p.f_pp + p.f_pm + p.f_mp + p.f_mm;
    return std::abs(sum.f0 - 1.0) <= validity_tol && sum.f.norm() <= validity_tol;
}

}  // namespace

ThreeMarginals marginals(const FourOutcomePovm &povm) {
    const bool valid = effect_validate(povm.f_pp) && effect_validate(povm.f_pm) &&
                       effect_validate(povm.f_mp) && effect_validate(povm.f_mm) &&
                       complete_povm(povm);
    if (!valid) {
        throw std::invalid_argument("marginals requires a valid complete four-outcome POVM");
    }
    ThreeMarginals out;
    out.m1.plus = povm.f_pp + povm.f_pm;
    out.m1.minus = povm.f_mp + povm.f_mm;
    out.m2.plus = povm.f_pp + povm.f_mp;
    out.m2.minus = povm.f_pm + povm.f_mm;
    out.m3.plus = povm.f_pp + povm.f_mm;
    out.m3.minus = povm.f_pm + povm.f_mp;
    return out;
}

Contrasts contrasts(const DerivedCoefficients &c) {
    return {std::abs(c.A), std::abs(c.B), c.n_norm()};
}

Unsharpness unsharpness(const Contrasts &ct) {
    return {1.0 - ct.c1 * ct.c1, 1.0 - ct.c2 * ct.c2, 1.0 - ct.c3 * ct.c3};
}

PayoffReport payoff_check(const Contrasts &ct) {
    const double c1sq = ct.c1 * ct.c1;
    const double c2sq = ct.c2 * ct.c2;
    const double c3sq = ct.c3 * ct.c3;
    PayoffReport report;
    report.identity_residual = std::abs(c3sq - (1.0 - c1sq) * (1.0 - c2sq));
    report.pair1_slack = 1.0 - c1sq - c3sq;
    report.pair2_slack = 1.0 - c2sq - c3sq;
    const Unsharpness u = unsharpness(ct);
    report.u_form_ok =
        (u.u1 + u.u3 >= 1.0 - validity_tol) && (u.u2 + u.u3 >= 1.0 - validity_tol);
    return report;
}

double variance(const BinaryPovm &m, const QubitState &s) {
    const double tbar = expectation(m.plus, s) - expectation(m.minus, s);
    return 1.0 - tbar * tbar;
}

InterferenceDirection interference_direction(const DerivedCoefficients &c) {
    const double n = c.n_norm();
    if (n < trivial_threshold) {
        throw std::invalid_argument("direction undefined");
    }
    return {Vec3{c.N1 / n, c.N2 / n, 0.0}};
}

double invert_sigma3(double p1_plus, const DerivedCoefficients &c) {
    if (std::abs(c.A) < trivial_threshold) {
        throw std::invalid_argument("sigma3 marginal trivial");
    }
    return (p1_plus - 0.5 * (1.0 - c.A)) / c.A;
}

double invert_interference(double p3_plus, const DerivedCoefficients &c) {
    const double n = c.n_norm();
    if (n < trivial_threshold) {
        throw std::invalid_argument("interference marginal trivial");
    }
    return (p3_plus - 0.5 * (1.0 + c.A * c.B - n)) / n;
}

SharpReconstruction reconstruct_sharp_probs(double p1_plus,
                                            double p3_plus,
                                            const DerivedCoefficients &c) {
    SharpReconstruction out;
    out.p_sigma3_plus = invert_sigma3(p1_plus, c);
    out.p_n_plus = invert_interference(p3_plus, c);
    out.sigma3_in_range = out.p_sigma3_plus >= 0.0 && out.p_sigma3_plus <= 1.0;
    out.n_in_range = out.p_n_plus >= 0.0 && out.p_n_plus <= 1.0;
    return out;
}

}  // namespace unsharp
