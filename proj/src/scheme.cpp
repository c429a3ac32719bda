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

#include "unsharp/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace unsharp {

void check_params(const SchemeParams &p) {
    const bool finite = std::isfinite(p.theta_o) && std::isfinite(p.phi_o) &&
                        std::isfinite(p.theta_p) && std::isfinite(p.phi_p) && std::isfinite(p.phi);
    if (!finite) {
        throw std::invalid_argument("scheme parameters must be finite");
    }
    if (p.theta_o < 0.0 || p.theta_o > pi) {
        throw std::invalid_argument("theta_o must lie in [0, pi]");
    }
    if (p.theta_p < 0.0 || p.theta_p > pi) {
        throw std::invalid_argument("theta_p must lie in [0, pi]");
    }
}

SchemeParams normalized_params(const SchemeParams &p) {
    check_params(p);
    SchemeParams out = p;
    out.phi_o = reduce_azimuth(p.phi_o);
    out.phi_p = reduce_azimuth(p.phi_p);
    out.phi = reduce_azimuth(p.phi);
    return out;
}

DerivedCoefficients derived_coefficients(const SchemeParams &p) {
    check_params(p);
    DerivedCoefficients c;
    c.A = -std::sin(p.theta_o) * std::cos(p.phi_o + p.phi);
    c.B = std::cos(p.theta_p);
    c.W = std::cos(p.phi - p.phi_p);
    c.X = std::sin(p.phi - p.phi_p);
    c.Y = std::cos(p.theta_o) * std::sin(p.theta_p);
    c.Z = std::sin(p.theta_o) * std::sin(p.phi_o + p.phi) * std::sin(p.theta_p);
    c.N1 = c.W * c.Y + c.X * c.Z;
    c.N2 = -c.X * c.Y + c.W * c.Z;
    return c;
}

FourOutcomePovm four_effects(const SchemeParams &p) {
    const DerivedCoefficients c = derived_coefficients(p);
    const auto effect = [&c](int s, int t) {
        const double st = static_cast<double>(s * t);
        Effect e;
        e.f0 = 0.25 * (1.0 + st * c.A * c.B);
        e.f = Vec3{0.25 * st * c.N1, 0.25 * st * c.N2, 0.25 * (s * c.A + t * c.B)};
        return e;
    };
    FourOutcomePovm povm;
    povm.f_pp = effect(+1, +1);
    povm.f_pm = effect(+1, -1);
    povm.f_mp = effect(-1, +1);
    povm.f_mm = effect(-1, -1);
    return povm;
}

TwoQubitState final_state(complexd alpha, complexd beta, double phi) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
        !std::isfinite(beta.real()) || !std::isfinite(beta.imag()) || !std::isfinite(phi)) {
        throw std::invalid_argument("final_state: inputs must be finite");
    }
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1.0) > 1e-9) {
        throw std::invalid_argument("final_state: input amplitudes must be normalized");
    }
    const double inv = 1.0 / std::sqrt(n2);
    alpha *= inv;
    beta *= inv;
    const complexd phase(std::cos(phi), std::sin(phi));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    TwoQubitState psi;
    psi.amp[0] = alpha * inv_sqrt2;
    psi.amp[1] = beta * phase * inv_sqrt2;
    psi.amp[2] = -alpha * std::conj(phase) * inv_sqrt2;
    psi.amp[3] = beta * inv_sqrt2;
    return psi;
}

double oracle_probability(const SchemeParams &p, const QubitState &s, int sign_o, int sign_p) {
    check_params(p);
    check_sign(sign_o);
    check_sign(sign_p);
    if (!s.is_pure()) {
        throw std::invalid_argument("oracle_probability requires a pure input state");
    }
    const TwoQubitState psi = final_state(s.alpha(), s.beta(), p.phi);
    const Direction d_o(p.theta_o, p.phi_o);
    const Direction d_p(p.theta_p, p.phi_p);
    return tensor_expectation(psi, sign_o, d_o, sign_p, d_p);
}

ValidationReport validate_scheme(const SchemeParams &p, int n_states, std::uint64_t seed) {
    if (n_states <= 0) {
        throw std::invalid_argument("validate_scheme: n_states must be positive");
    }
    const FourOutcomePovm povm = four_effects(p);
    Rng rng(seed);
    ValidationReport report;
    const int signs[2] = {+1, -1};
    for (int i = 0; i < n_states; ++i) {
        const QubitState s = haar_random_pure_state(rng);
        for (int so : signs) {
            for (int sp : signs) {
                const double closed = expectation(povm.outcome(so, sp), s);
                const double oracle = oracle_probability(p, s, so, sp);
                report.max_abs_deviation =
                    std::max(report.max_abs_deviation, std::abs(closed - oracle));
            }
        }
    }
    return report;
}

QubitState haar_random_pure_state(Rng &rng) {
    const double cos_t = rng.uniform(-1.0, 1.0);
    const double w = rng.uniform(0.0, two_pi);
    const double t = std::acos(std::clamp(cos_t, -1.0, 1.0));
    const complexd alpha(std::cos(0.5 * t), 0.0);
    const complexd beta = complexd(std::cos(w), std::sin(w)) * std::sin(0.5 * t);
    return QubitState::pure(alpha, beta);
}

}  // namespace unsharp
