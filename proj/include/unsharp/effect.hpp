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

#include <stdexcept>
#include <utility>

#include "unsharp/direction.hpp"
#include "unsharp/state.hpp"
#include "unsharp/vec3.hpp"

namespace unsharp {

/// Default tolerance for effect validity and algebraic identities on O(1)
/// quantities in double precision.
inline constexpr double validity_tol = 1e-12;

/// A qubit effect in Pauli coefficient form, F = f0*I + f.sigma. Hermiticity
/// is structural; positivity and the upper bound F <= I are checked by
/// `effect_validate`, not by construction.
struct Effect {
    double f0 = 0.0;
    Vec3 f{};

    constexpr Effect operator+(const Effect &o) const { return {f0 + o.f0, f + o.f}; }
    constexpr Effect operator-(const Effect &o) const { return {f0 - o.f0, f - o.f}; }
    constexpr Effect operator*(double s) const { return {f0 * s, f * s}; }
};

inline constexpr Effect identity_effect{1.0, {0.0, 0.0, 0.0}};
inline constexpr Effect zero_effect{0.0, {0.0, 0.0, 0.0}};

struct EffectEigenvalues {
    double min = 0.0;
    double max = 0.0;
};

/// Spectrum of f0*I + f.sigma: f0 -+ |f|.
inline EffectEigenvalues eigenvalues(const Effect &e) {
    const double n = e.f.norm();
    return {e.f0 - n, e.f0 + n};
}

/// True iff 0 <= F <= I within `tol`, i.e. f0 - |f| >= -tol and
/// f0 + |f| <= 1 + tol.
inline bool effect_validate(const Effect &e, double tol = validity_tol) {
    if (!std::isfinite(e.f0) || !e.f.finite()) {
        return false;
    }
    const auto eig = eigenvalues(e);
    return eig.min >= -tol && eig.max <= 1.0 + tol;
}

/// Outcome probability tr(rho F) = f0 + f.r. Throws if the effect is invalid.
inline double expectation(const Effect &e, const QubitState &s) {
    if (!effect_validate(e)) {
        throw std::invalid_argument("expectation requires a valid effect (0 <= F <= I)");
    }
    return e.f0 + dot(e.f, s.bloch());
}

inline void check_sign(int sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("sign must be +1 or -1");
    }
}

/// Spectral projection (I + sign * n.sigma)/2 for the unit vector n of `d`.
inline Effect projector_from_direction(const Direction &d, int sign) {
    check_sign(sign);
    return {0.5, d.unit_vector() * (0.5 * sign)};
}

}  // namespace unsharp
