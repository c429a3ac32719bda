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

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "unsharp/direction.hpp"
#include "unsharp/effect.hpp"

namespace unsharp {

/// A pure object-probe state. Amplitudes are stored object-major: index
/// 2*i_o + i_p over the basis (|+>_o|+>_p, |+>_o|->_p, |->_o|+>_p,
/// |->_o|->_p).
struct TwoQubitState {
    std::array<complexd, 4> amp{};

    double norm2() const {
        return std::norm(amp[0]) + std::norm(amp[1]) + std::norm(amp[2]) + std::norm(amp[3]);
    }
};

inline void check_normalized(const TwoQubitState &psi, double tol = validity_tol) {
    const double n2 = psi.norm2();
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > tol) {
        throw std::invalid_argument("two-qubit state must be normalized");
    }
}

/// Spinor of the rank-1 projection (I + sign * n.sigma)/2, so that
/// P = |chi><chi|. For +n this is (cos(t/2), e^{i p} sin(t/2)); the -n spinor
/// is the orthogonal complement (sin(t/2), -e^{i p} cos(t/2)).
inline std::array<complexd, 2> bloch_spinor(const Direction &d, int sign) {
    check_sign(sign);
    const double c = std::cos(0.5 * d.theta());
    const double s = std::sin(0.5 * d.theta());
    const complexd ph = std::polar(1.0, d.phi());
    if (sign > 0) {
        return {complexd(c, 0.0), ph * s};
    }
    return {complexd(s, 0.0), -ph * c};
}

/// <psi| P^o_{sign_o} (x) P^p_{sign_p} |psi> for spectral projections along
/// `d_o` (object factor) and `d_p` (probe factor). Evaluated as the squared
/// overlap with the product spinor, |<chi_o (x) chi_p | psi>|^2.
inline double tensor_expectation(const TwoQubitState &psi,
                                 int sign_o,
                                 const Direction &d_o,
                                 int sign_p,
                                 const Direction &d_p) {
    check_normalized(psi);
    const auto co = bloch_spinor(d_o, sign_o);
    const auto cp = bloch_spinor(d_p, sign_p);
    complexd overlap = 0.0;
    for (int io = 0; io < 2; ++io) {
        for (int ip = 0; ip < 2; ++ip) {
            overlap += std::conj(co[io] * cp[ip]) * psi.amp[2 * io + ip];
        }
    }
    return std::norm(overlap);
}

}  // namespace unsharp
