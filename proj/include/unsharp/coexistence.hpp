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

#include <cstdint>

#include "unsharp/effect.hpp"
#include "unsharp/scheme.hpp"
#include "unsharp/vec3.hpp"

namespace unsharp {

/// A pair of unbiased binary POVMs (I +- a.sigma)/2 and (I +- b.sigma)/2,
/// identified by their Pauli vectors. Valid iff |a| <= 1 and |b| <= 1.
struct UnbiasedPair {
    Vec3 a{};
    Vec3 b{};
};

struct CriterionResult {
    bool coexistent = false;
    double lhs = 0.0;
};

/// Exact criterion for unbiased pairs: coexistent iff
/// |a + b|/2 + |a - b|/2 <= 1. Throws if either vector exceeds unit length.
CriterionResult busch_criterion(const UnbiasedPair &p);

/// Specialization to perpendicular pairs (a.b = 0, enforced within 1e-9):
/// coexistent iff |a|^2 + |b|^2 <= 1. Agrees with busch_criterion on its
/// domain. Throws "perpendicularity violated" otherwise.
CriterionResult perpendicular_criterion(const UnbiasedPair &p);

/// Search controls for joint_feasibility. The `seed` field is reserved for
/// randomized search strategies; the default deterministic grid-plus-simplex
/// path does not consume it.
struct SearchConfig {
    int grid_resolution = 15;
    int refine_iterations = 200;
    double tolerance = 1e-6;
    std::uint64_t seed = 0;
};

/// Outcome of the feasibility search. `margin` is the best achieved value of
/// min lambda_min over the four induced effects {G, e-G, f-G, I-e-f+G};
/// `witness` is the G that achieved it. The pair is jointly measurable iff
/// the true maximum is >= 0; the search reports feasible iff
/// margin >= -tolerance.
struct FeasibilityResult {
    bool feasible = false;
    double margin = 0.0;
    Effect witness{};
};

/// Decides whether the binary POVMs {e_plus, I - e_plus} and
/// {f_plus, I - f_plus} occur as marginals of one four-outcome POVM. The
/// joint POVM is parameterized by its (+,+) effect G alone; the search
/// maximizes the concave function m(G) = min_k lambda_min(induced effect k)
/// over G = g0 I + g.sigma by a coarse lexicographic grid (strict improvement
/// keeps the earliest grid point) followed by Nelder-Mead refinement and a
/// compass polish. Deterministic given cfg.
FeasibilityResult joint_feasibility(const Effect &e_plus,
                                    const Effect &f_plus,
                                    const SearchConfig &cfg = {});

/// Feasibility of the two informative marginal pairs of the measurement
/// scheme, (m1, m3) and (m2, m3). Both are feasible by construction: the
/// four-outcome effect F_++ is a witness for either pair, and it is included
/// as a refinement start so the reported margins never fall below its exact
/// margin of 0.
struct ModelMarginalReport {
    FeasibilityResult pair13;
    FeasibilityResult pair23;
};

ModelMarginalReport model_marginal_coexistence(const SchemeParams &p,
                                               const SearchConfig &cfg = {});

}  // namespace unsharp
