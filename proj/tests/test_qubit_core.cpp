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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "matrix_oracle.hpp"
#include "test_util.hpp"
#include "unsharp/direction.hpp"
#include "unsharp/effect.hpp"
#include "unsharp/rng.hpp"
#include "unsharp/scheme.hpp"
#include "unsharp/state.hpp"
#include "unsharp/two_qubit.hpp"

using namespace unsharp;

namespace {
constexpr double kTol = 1e-12;
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

TEST_CASE("direction produces unit vectors and validates its domain") {
    Rng rng(101);
    for (int i = 0; i < 1000; ++i) {
        const Direction d = testutil::random_direction(rng);
        CHECK(std::abs(d.unit_vector().norm() - 1.0) <= kTol);
    }
    CHECK_THROWS_AS(Direction(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Direction(pi + 0.1, 0.0), std::invalid_argument);
    CHECK(Direction(0.5, -0.5).phi() == doctest::Approx(two_pi - 0.5).epsilon(1e-12));
}

TEST_CASE("pure state normalization is enforced and bloch conversion round-trips") {
    const QubitState plus = QubitState::pure(1.0, 0.0);
    CHECK(plus.bloch().z == doctest::Approx(1.0));
    CHECK_THROWS_AS(QubitState::pure(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(QubitState::mixed({0.8, 0.8, 0.8}), std::invalid_argument);

    Rng rng(102);
    for (int i = 0; i < 1000; ++i) {
        const QubitState s = haar_random_pure_state(rng);
        CHECK(std::abs(s.bloch().norm() - 1.0) <= 1e-9);
    }
    const QubitState mixed = QubitState::maximally_mixed();
    CHECK(mixed.bloch().norm() == 0.0);
    CHECK_THROWS_AS(mixed.alpha(), std::logic_error);
}

TEST_CASE("pure-state density matrix equals the bloch form") {
    Rng rng(103);
    for (int i = 0; i < 500; ++i) {
        const QubitState s = haar_random_pure_state(rng);
        const oracle::Mat2 from_amplitudes = oracle::density_matrix(s);
        const oracle::Mat2 from_bloch =
            oracle::density_matrix(QubitState::mixed(s.bloch()));
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                CHECK(std::abs(from_amplitudes[r][c] - from_bloch[r][c]) <= 1e-9);
            }
        }
    }
}

TEST_CASE("effect_validate accepts projections and rejects out-of-range spectra") {
    CHECK(effect_validate({0.5, {0.0, 0.0, 0.5}}));
    CHECK_FALSE(effect_validate({0.5, {0.0, 0.0, 0.6}}));

    const SchemeParams canonical{pi / 3.0, 0.0, pi / 3.0, 0.0, 0.0};
    const Effect f_pp = four_effects(canonical).f_pp;
    CHECK(effect_validate(f_pp));
    CHECK(std::abs(eigenvalues(f_pp).min) <= kTol);
}

TEST_CASE("expectation matches the defining trace formula") {
    const Effect p3_plus{0.5, {0.0, 0.0, 0.5}};
    CHECK(expectation(p3_plus, QubitState::pure(1.0, 0.0)) == doctest::Approx(1.0));
    CHECK(expectation(p3_plus, QubitState::maximally_mixed()) == doctest::Approx(0.5));

    const SchemeParams canonical{pi / 3.0, 0.0, pi / 3.0, 0.0, 0.0};
    const Effect f_pp = four_effects(canonical).f_pp;
    const double expected = 0.375 - 3.0 * kSqrt3 / 16.0;
    CHECK(std::abs(expectation(f_pp, QubitState::pure(1.0, 0.0)) - expected) <= kTol);

    CHECK_THROWS_AS(expectation({0.5, {0.0, 0.0, 0.6}}, QubitState::maximally_mixed()),
                    std::invalid_argument);
}

TEST_CASE("expectation agrees with explicit matrix arithmetic") {
    Rng rng(104);
    for (int i = 0; i < 2000; ++i) {
        const Effect e = testutil::random_valid_effect(rng);
        const QubitState s =
            (i % 2 == 0) ? haar_random_pure_state(rng) : testutil::random_mixed_state(rng);
        const double via_bloch = expectation(e, s);
        const double via_matrices =
            oracle::real_trace_product(oracle::density_matrix(s), oracle::effect_matrix(e));
        CHECK(std::abs(via_bloch - via_matrices) <= kTol);
        CHECK(via_bloch >= -kTol);
        CHECK(via_bloch <= 1.0 + kTol);
    }
}

TEST_CASE("eigenvalues follow f0 -+ |f| and match the trace-determinant route") {
    const auto projection = eigenvalues({0.5, {0.0, 0.0, 0.5}});
    CHECK(projection.min == doctest::Approx(0.0));
    CHECK(projection.max == doctest::Approx(1.0));

    const SchemeParams canonical{pi / 3.0, 0.0, pi / 3.0, 0.0, 0.0};
    const FourOutcomePovm povm = four_effects(canonical);
    const Effect m3_plus = povm.f_pp + povm.f_mm;
    CHECK(std::abs(eigenvalues(m3_plus).min - (0.5 - kSqrt3 / 4.0)) <= kTol);
    CHECK(std::abs(eigenvalues(m3_plus).max - 0.5) <= kTol);

    Rng rng(105);
    for (int i = 0; i < 2000; ++i) {
        const Effect e = testutil::random_valid_effect(rng);
        const auto eig = eigenvalues(e);
        CHECK(std::abs(eig.min + eig.max - 2.0 * e.f0) <= kTol);
        CHECK(std::abs(eig.max - eig.min - 2.0 * e.f.norm()) <= kTol);
        const auto reference = oracle::hermitian_eigenvalues(oracle::effect_matrix(e));
        CHECK(std::abs(eig.min - reference[0]) <= kTol);
        CHECK(std::abs(eig.max - reference[1]) <= kTol);
    }
}

TEST_CASE("projector_from_direction yields rank-1 projections") {
    const Effect up = projector_from_direction({0.0, 0.0}, +1);
    CHECK(up.f0 == doctest::Approx(0.5));
    CHECK(up.f.z == doctest::Approx(0.5));

    const Effect minus_x = projector_from_direction({pi / 2.0, 0.0}, -1);
    CHECK(minus_x.f.x == doctest::Approx(-0.5));
    CHECK(std::abs(minus_x.f.z) <= kTol);

    const Effect tilted = projector_from_direction({pi / 3.0, 0.0}, +1);
    CHECK(std::abs(tilted.f.x - kSqrt3 / 4.0) <= kTol);
    CHECK(std::abs(tilted.f.z - 0.25) <= kTol);

    Rng rng(106);
    for (int i = 0; i < 1000; ++i) {
        const auto eig = eigenvalues(projector_from_direction(testutil::random_direction(rng), +1));
        CHECK(std::abs(eig.min) <= kTol);
        CHECK(std::abs(eig.max - 1.0) <= kTol);
    }
}

TEST_CASE("tensor_expectation on product states and the analytic family") {
    TwoQubitState plus_plus;
    plus_plus.amp = {1.0, 0.0, 0.0, 0.0};
    const Direction z{0.0, 0.0};
    CHECK(tensor_expectation(plus_plus, +1, z, +1, z) == doctest::Approx(1.0));
    CHECK(tensor_expectation(plus_plus, -1, z, +1, z) == doctest::Approx(0.0));

    Rng rng(107);
    for (int i = 0; i < 200; ++i) {
        const double theta_o = rng.uniform(0.0, pi);
        const double phi_o = rng.uniform(0.0, two_pi);
        const TwoQubitState psi = final_state(1.0, 0.0, 0.0);
        const double p = tensor_expectation(psi, +1, {theta_o, phi_o}, +1, z);
        const double analytic = 0.5 * (1.0 - std::sin(theta_o) * std::cos(phi_o));
        CHECK(std::abs(p - analytic) <= 1e-10);
    }

    TwoQubitState unnormalized;
    unnormalized.amp = {0.5, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(tensor_expectation(unnormalized, +1, z, +1, z), std::invalid_argument);
}

TEST_CASE("tensor_expectation sums to one over the four sign pairs") {
    Rng rng(108);
    for (int i = 0; i < 500; ++i) {
        const QubitState s = haar_random_pure_state(rng);
        const TwoQubitState psi = final_state(s.alpha(), s.beta(), rng.uniform(0.0, two_pi));
        const Direction d_o = testutil::random_direction(rng);
        const Direction d_p = testutil::random_direction(rng);
        double total = 0.0;
        for (int so : {+1, -1}) {
            for (int sp : {+1, -1}) {
                total += tensor_expectation(psi, so, d_o, sp, d_p);
            }
        }
        CHECK(std::abs(total - 1.0) <= kTol);
    }
}

TEST_CASE("tensor_expectation agrees with the kronecker-product oracle") {
    Rng rng(109);
    for (int i = 0; i < 500; ++i) {
        const QubitState s = haar_random_pure_state(rng);
        const TwoQubitState psi = final_state(s.alpha(), s.beta(), rng.uniform(0.0, two_pi));
        const Direction d_o = testutil::random_direction(rng);
        const Direction d_p = testutil::random_direction(rng);
        const int so = (rng.uniform() < 0.5) ? +1 : -1;
        const int sp = (rng.uniform() < 0.5) ? +1 : -1;
        const double fast = tensor_expectation(psi, so, d_o, sp, d_p);
        const oracle::Mat4 joint =
            oracle::kron(oracle::projector_matrix(d_o, so), oracle::projector_matrix(d_p, sp));
        CHECK(std::abs(fast - oracle::quad_form(psi, joint)) <= kTol);
    }
}
