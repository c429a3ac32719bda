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

#include "unsharp/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "unsharp/rng.hpp"

namespace unsharp {

CountTable sample_counts(const FourOutcomePovm &povm,
                         const QubitState &s,
                         std::int64_t n,
                         std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("sample_counts: n must be >= 1");
    }
    const double p1 = expectation(povm.f_pp, s);
    const double p2 = expectation(povm.f_pm, s);
    const double p3 = expectation(povm.f_mp, s);
    const double p4 = expectation(povm.f_mm, s);
    if (std::abs(p1 + p2 + p3 + p4 - 1.0) > 1e-9) {
        throw std::runtime_error("sample_counts: outcome probabilities do not sum to 1");
    }
    const double c1 = p1;
    const double c2 = p1 + p2;
    const double c3 = p1 + p2 + p3;
    CountTable t;
    t.n_total = n;
    Rng rng(seed);
    for (std::int64_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        if (u <= c1) {
            ++t.n_pp;
        } else if (u <= c2) {
            ++t.n_pm;
        } else if (u <= c3) {
            ++t.n_mp;
        } else {
            ++t.n_mm;
        }
    }
    return t;
}

EstimateReport estimate(const CountTable &counts, const DerivedCoefficients &c) {
    if (counts.n_total < 1) {
        throw std::invalid_argument("estimate: n_total must be >= 1");
    }
    if (counts.n_pp < 0 || counts.n_pm < 0 || counts.n_mp < 0 || counts.n_mm < 0 ||
        counts.n_pp + counts.n_pm + counts.n_mp + counts.n_mm != counts.n_total) {
        throw std::invalid_argument("estimate: counts must be non-negative and sum to n_total");
    }
    const double n = static_cast<double>(counts.n_total);
    EstimateReport report;
    report.p_hat_1 = static_cast<double>(counts.n_pp + counts.n_pm) / n;
    report.p_hat_2 = static_cast<double>(counts.n_pp + counts.n_mp) / n;
    report.p_hat_3 = static_cast<double>(counts.n_pp + counts.n_mm) / n;
    if (std::abs(c.A) >= trivial_threshold) {
        Reconstruction r;
        r.p_hat = invert_sigma3(report.p_hat_1, c);
        r.se = std::sqrt(report.p_hat_1 * (1.0 - report.p_hat_1) / n) / std::abs(c.A);
        r.in_range = r.p_hat >= 0.0 && r.p_hat <= 1.0;
        report.sigma3 = r;
    }
    const double n_norm = c.n_norm();
    if (n_norm >= trivial_threshold) {
        Reconstruction r;
        r.p_hat = invert_interference(report.p_hat_3, c);
        r.se = std::sqrt(report.p_hat_3 * (1.0 - report.p_hat_3) / n) / n_norm;
        r.in_range = r.p_hat >= 0.0 && r.p_hat <= 1.0;
        report.n = r;
    }
    return report;
}

std::vector<ConvergenceRow> convergence_study(const SchemeParams &p,
                                              const QubitState &s,
                                              const std::vector<std::int64_t> &n_list,
                                              int reps,
                                              std::uint64_t seed) {
    if (reps < 1) {
        throw std::invalid_argument("convergence_study: reps must be >= 1");
    }
    for (const std::int64_t n : n_list) {
        if (n < 10) {
            throw std::invalid_argument("convergence_study: each n must be >= 10");
        }
    }
    const DerivedCoefficients c = derived_coefficients(p);
    if (std::abs(c.A) < trivial_threshold) {
        throw std::invalid_argument("sigma3 marginal trivial");
    }
    const FourOutcomePovm povm = four_effects(p);
    const Vec3 r = s.bloch();
    const double exact_sigma3 = 0.5 * (1.0 + r.z);
    const Vec3 n_dir = interference_direction(c).n;
    const double exact_n = 0.5 * (1.0 + dot(n_dir, r));
    std::vector<ConvergenceRow> rows;
    rows.reserve(n_list.size());
    for (const std::int64_t n : n_list) {
        const std::uint64_t n_seed = derive_stream_seed(seed, static_cast<std::uint64_t>(n));
        double sq_sigma3 = 0.0;
        double sq_n = 0.0;
        for (int j = 0; j < reps; ++j) {
            const std::uint64_t rep_seed =
                derive_stream_seed(n_seed, static_cast<std::uint64_t>(j));
            const CountTable t = sample_counts(povm, s, n, rep_seed);
            const EstimateReport est = estimate(t, c);
            const double d_sigma3 = est.sigma3->p_hat - exact_sigma3;
            const double d_n = est.n->p_hat - exact_n;
            sq_sigma3 += d_sigma3 * d_sigma3;
            sq_n += d_n * d_n;
        }
        ConvergenceRow row;
        row.n = n;
        row.rmse_sigma3 = std::sqrt(sq_sigma3 / reps);
        row.rmse_n = std::sqrt(sq_n / reps);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace unsharp
