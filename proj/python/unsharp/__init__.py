# Copyright 2026 The Unsharp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Joint unsharp measurements of complementary qubit observables.

The heavy lifting lives in the compiled extension; this package re-exports
its public names unchanged.
"""

from unsharp._core import (
    BinaryPovm,
    Contrasts,
    ConvergenceRow,
    CountTable,
    CriterionResult,
    DerivedCoefficients,
    Effect,
    EffectEigenvalues,
    EstimateReport,
    FeasibilityResult,
    FourOutcomePovm,
    ModelMarginalReport,
    PayoffReport,
    QubitState,
    Reconstruction,
    SchemeParams,
    SearchConfig,
    SharpReconstruction,
    ThreeMarginals,
    Unsharpness,
    ValidationReport,
    Vec3,
    __version__,
    busch_criterion,
    check_params,
    contrasts,
    convergence_study,
    derived_coefficients,
    effect_validate,
    eigenvalues,
    estimate,
    expectation,
    four_effects,
    identity_effect,
    interference_direction,
    invert_interference,
    invert_sigma3,
    joint_feasibility,
    marginals,
    model_marginal_coexistence,
    normalized_params,
    oracle_probability,
    payoff_check,
    perpendicular_criterion,
    pi,
    reconstruct_sharp_probs,
    sample_counts,
    trivial_threshold,
    unsharpness,
    validate_scheme,
    validity_tol,
    variance,
)

__all__ = [
    "BinaryPovm",
    "Contrasts",
    "ConvergenceRow",
    "CountTable",
    "CriterionResult",
    "DerivedCoefficients",
    "Effect",
    "EffectEigenvalues",
    "EstimateReport",
    "FeasibilityResult",
    "FourOutcomePovm",
    "ModelMarginalReport",
    "PayoffReport",
    "QubitState",
    "Reconstruction",
    "SchemeParams",
    "SearchConfig",
    "SharpReconstruction",
    "ThreeMarginals",
    "Unsharpness",
    "ValidationReport",
    "Vec3",
    "__version__",
    "busch_criterion",
    "check_params",
    "contrasts",
    "convergence_study",
    "derived_coefficients",
    "effect_validate",
    "eigenvalues",
    "estimate",
    "expectation",
    "four_effects",
    "identity_effect",
    "interference_direction",
    "invert_interference",
    "invert_sigma3",
    "joint_feasibility",
    "marginals",
    "model_marginal_coexistence",
    "normalized_params",
    "oracle_probability",
    "payoff_check",
    "perpendicular_criterion",
    "pi",
    "reconstruct_sharp_probs",
    "sample_counts",
    "trivial_threshold",
    "unsharpness",
    "validate_scheme",
    "validity_tol",
    "variance",
]
