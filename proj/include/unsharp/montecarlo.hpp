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
#include <optional>
#include <vector>

#include "unsharp/marginals.hpp"
#include "unsharp/scheme.hpp"

namespace unsharp {

/// Outcome tallies of one simulated counting run. The four counts always sum
/// to n_total.
struct CountTable {
    std::int64_t n_pp = 0;
    std::int64_t n_pm = 0;
    std::int64_t n_mp = 0;
    std::int64_t n_mm = 0;
    std::int64_t n_total = 0;
};

/// Draws n i.i.d. outcomes from the categorical distribution
/// (p_++, p_+-, p_-+, p_--) with p_jk = tr(rho F_jk). Sampling is
/// inverse-CDF over the fixed outcome order (++, +-, -+, --); a draw equal
/// to a CDF boundary selects the earlier outcome. Bit-identical across
/// platforms for a given seed.
CountTable sample_counts(const FourOutcomePovm &povm,
                         const QubitState &s,
                         std::int64_t n,
                         std::uint64_t seed);

/// One reconstructed sharp probability with its propagated standard error.
struct Reconstruction {
    double p_hat = 0.0;
    double se = 0.0;
    bool in_range = false;
};

/// Frequency estimates from a count table. The reconstructions are absent
/// when the corresponding contrast coefficient is below trivial_threshold
/// (the affine inversion is undefined there).
struct EstimateReport {
    double p_hat_1 = 0.0;
    double p_hat_2 = 0.0;
    double p_hat_3 = 0.0;
    std::optional<Reconstruction> sigma3;
    std::optional<Reconstruction> n;
};

/// Marginal frequencies p_hat_1 = (n_pp + n_pm)/N, p_hat_2 = (n_pp + n_mp)/N,
/// p_hat_3 = (n_pp + n_mm)/N, plus the affine inversions of the smearing with
/// errors propagated through them: se_sigma3 = sqrt(p1 (1 - p1)/N)/|A| and
/// the analogue with |N| for the interference direction.
EstimateReport estimate(const CountTable &counts, const DerivedCoefficients &c);

struct ConvergenceRow {
    std::int64_t n = 0;
    double rmse_sigma3 = 0.0;
    double rmse_n = 0.0;
};

/// Repeated-run error study. For each n in n_list, runs `reps` independent
/// simulations and reports the root-mean-square error of both reconstructed
/// probabilities against their exact values (1 + r3)/2 and (1 + n.r)/2.
/// Rep j of sample size n uses the stream seed
/// derive_stream_seed(derive_stream_seed(seed, n), j), so a row depends only
/// on (p, s, n, reps, seed), not on its position in n_list.
std::vector<ConvergenceRow> convergence_study(const SchemeParams &p,
                                              const QubitState &s,
                                              const std::vector<std::int64_t> &n_list,
                                              int reps,
                                              std::uint64_t seed);

}  // namespace unsharp
