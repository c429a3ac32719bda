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

#include <cmath>
#include <cstdint>

#include "unsharp/effect.hpp"
#include "unsharp/rng.hpp"
#include "unsharp/state.hpp"
#include "unsharp/two_qubit.hpp"

namespace unsharp {

/// The five angles of the joint measurement configuration: the object
/// measurement direction (theta_o, phi_o), the probe measurement direction
/// (theta_p, phi_p), and the entangling phase phi.
struct SchemeParams {
    double theta_o = 0.0;
    double phi_o = 0.0;
    double theta_p = 0.0;
    double phi_p = 0.0;
    double phi = 0.0;
};

/// Throws unless all angles are finite and both polar angles lie in [0, pi].
void check_params(const SchemeParams &p);

/// Copy of `p` with both azimuths and the phase reduced into [0, 2*pi).
SchemeParams normalized_params(const SchemeParams &p);

/// Scalar coefficients of the four-outcome POVM:
///   A  = -sin(theta_o) cos(phi_o + phi)      B  = cos(theta_p)
///   W  = cos(phi - phi_p)                    X  = sin(phi - phi_p)
///   Y  = cos(theta_o) sin(theta_p)           Z  = sin(theta_o) sin(phi_o + phi) sin(theta_p)
///   N1 = W*Y + X*Z                           N2 = -X*Y + W*Z
/// They satisfy N1^2 + N2^2 = (1 - A^2)(1 - B^2).
struct DerivedCoefficients {
    double A = 0.0;
    double B = 0.0;
    double W = 0.0;
    double X = 0.0;
    double Y = 0.0;
    double Z = 0.0;
    double N1 = 0.0;
    double N2 = 0.0;

    /// |N| = sqrt(N1^2 + N2^2).
    double n_norm() const { return std::sqrt(N1 * N1 + N2 * N2); }
};

DerivedCoefficients derived_coefficients(const SchemeParams &p);

/// The four effects of the joint measurement, labelled by the (object, probe)
/// outcome pair. Each is rank 1 (f0 = |f|), all four sum to the identity.
struct FourOutcomePovm {
    Effect f_pp;
    Effect f_pm;
    Effect f_mp;
    Effect f_mm;

    const Effect &outcome(int sign_o, int sign_p) const {
        if (sign_o > 0) {
            return sign_p > 0 ? f_pp : f_pm;
        }
        return sign_p > 0 ? f_mp : f_mm;
    }
};

/// Closed-form four-outcome POVM:
///   F_{s,t} = 1/4 [ (1 + s t A B) I + s t N1 sigma1 + s t N2 sigma2 + (s A + t B) sigma3 ].
FourOutcomePovm four_effects(const SchemeParams &p);

/// Entangled object-probe state prepared from the input amplitudes:
/// (alpha/sqrt2, beta e^{i phi}/sqrt2, -alpha e^{-i phi}/sqrt2, beta/sqrt2)
/// in object-major order. Requires |alpha|^2 + |beta|^2 = 1 within 1e-9.
TwoQubitState final_state(complexd alpha, complexd beta, double phi);

/// Defining-condition probability: prepares the final state from the pure
/// input `s` and evaluates <Psi_f| P^o_{sign_o} (x) P^p_{sign_p} |Psi_f> with
/// the object direction (theta_o, phi_o) and probe direction (theta_p, phi_p).
/// This is the ground-truth path the closed-form effects must reproduce.
double oracle_probability(const SchemeParams &p, const QubitState &s, int sign_o, int sign_p);

struct ValidationReport {
    double max_abs_deviation = 0.0;
};

/// Samples `n_states` Haar-random pure states (deterministic in `seed`) and
/// returns the largest absolute deviation between the closed-form outcome
/// probabilities and the oracle probabilities over all four outcomes.
ValidationReport validate_scheme(const SchemeParams &p, int n_states, std::uint64_t seed);

/// Haar-random pure state: (cos(t/2), e^{i w} sin(t/2)) with cos t uniform on
/// [-1, 1] and w uniform on [0, 2*pi). Draw order: cos t first, then w.
QubitState haar_random_pure_state(Rng &rng);

}  // namespace unsharp
