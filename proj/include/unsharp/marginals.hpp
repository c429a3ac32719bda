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

#include "unsharp/effect.hpp"
#include "unsharp/scheme.hpp"

namespace unsharp {

/// Below this size a contrast coefficient is treated as zero: the affine
/// inversion it would divide by is noise dominated, so the operation reports
/// the marginal as trivial instead.
inline constexpr double trivial_threshold = 1e-9;

/// A two-valued POVM {plus, minus} with plus + minus = I.
struct BinaryPovm {
    Effect plus;
    Effect minus;
};

/// The three coarse-grainings of the four-outcome measurement: m1 ignores the
/// probe outcome, m2 ignores the object outcome, m3 groups equal against
/// unequal outcome pairs.
struct ThreeMarginals {
    BinaryPovm m1;
    BinaryPovm m2;
    BinaryPovm m3;
};

/// Builds the marginal POVMs by outcome grouping:
///   m1_+ = F_++ + F_+-  = (I + A sigma3)/2
///   m2_+ = F_++ + F_-+  = (I + B sigma3)/2
///   m3_+ = F_++ + F_--  = ((1 + A B) I + N1 sigma1 + N2 sigma2)/2
/// Throws if the input is not a valid complete POVM.
ThreeMarginals marginals(const FourOutcomePovm &povm);

/// Contrasts: the spread between the largest and smallest eigenvalues of each
/// marginal's effects. c1 = |A|, c2 = |B|, c3 = |N|.
struct Contrasts {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

Contrasts contrasts(const DerivedCoefficients &c);

/// Unsharpness u_i = 1 - c_i^2.
struct Unsharpness {
    double u1 = 0.0;
    double u2 = 0.0;
    double u3 = 0.0;
};

Unsharpness unsharpness(const Contrasts &ct);

/// Trade-off audit for one configuration. identity_residual measures
/// c3^2 = (1 - c1^2)(1 - c2^2); the pair slacks are 1 - c1^2 - c3^2 and
/// 1 - c2^2 - c3^2 (non-negative for every configuration); u_form_ok restates
/// the slacks as u1 + u3 >= 1 and u2 + u3 >= 1.
struct PayoffReport {
    double identity_residual = 0.0;
    double pair1_slack = 0.0;
    double pair2_slack = 0.0;
    bool u_form_ok = false;
};

PayoffReport payoff_check(const Contrasts &ct);

/// Outcome variance of a binary POVM read as a +-1 valued observable:
/// Var = 1 - tbar^2 with tbar = <m_+> - <m_->. For the first marginal this
/// evaluates to 1 - A^2 r3^2.
double variance(const BinaryPovm &m, const QubitState &s);

/// Unit vector n = (N1, N2, 0)/|N| of the third marginal. Always equatorial.
struct InterferenceDirection {
    Vec3 n{};
};

/// Throws "direction undefined" when |N| < trivial_threshold.
InterferenceDirection interference_direction(const DerivedCoefficients &c);

/// Sharp probabilities recovered from the two informative marginal
/// probabilities. Values are reported raw (no clamping); each flag records
/// whether the raw value landed in [0, 1].
struct SharpReconstruction {
    double p_sigma3_plus = 0.0;
    double p_n_plus = 0.0;
    bool sigma3_in_range = false;
    bool n_in_range = false;
};

/// Inversion of the first-marginal smearing: (p1_plus - (1 - A)/2) / A.
/// Throws "sigma3 marginal trivial" when |A| < trivial_threshold.
double invert_sigma3(double p1_plus, const DerivedCoefficients &c);

/// Inversion of the third-marginal smearing:
/// (p3_plus - (1 + A B - |N|)/2) / |N|.
/// Throws "interference marginal trivial" when |N| < trivial_threshold.
double invert_interference(double p3_plus, const DerivedCoefficients &c);

/// Applies both inversions; throws if either marginal is trivial.
SharpReconstruction reconstruct_sharp_probs(double p1_plus,
                                            double p3_plus,
                                            const DerivedCoefficients &c);

}  // namespace unsharp
