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
#include <complex>
#include <stdexcept>

#include "unsharp/vec3.hpp"

namespace unsharp {

using complexd = std::complex<double>;

/// A qubit state, either pure (amplitude pair in the sigma3 eigenbasis,
/// |+> = (1,0)^T, |-> = (0,1)^T) or mixed (Bloch vector r with |r| <= 1,
/// rho = (I + r.sigma)/2). Construct through the `pure` / `mixed` factories;
/// instances are always valid.
///
/// The Bloch vector of a pure state (alpha, beta) is
///   r = (2 Re(alpha conj(beta)), -2 Im(alpha conj(beta)), |alpha|^2 - |beta|^2).
class QubitState {
  public:
    /// Pure state from amplitudes. Requires ||psi|| = 1 within 1e-9; the
    /// stored amplitudes are renormalized exactly.
    static QubitState pure(complexd alpha, complexd beta) {
        const double n2 = std::norm(alpha) + std::norm(beta);
        if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-9) {
            throw std::invalid_argument("pure state amplitudes must be normalized");
        }
        const double n = std::sqrt(n2);
        return QubitState(alpha / n, beta / n);
    }

    /// Mixed state from a Bloch vector with |r| <= 1.
    static QubitState mixed(const Vec3 &r) {
        if (!r.finite() || r.norm() > 1.0 + 1e-12) {
            throw std::invalid_argument("Bloch vector must satisfy |r| <= 1");
        }
        return QubitState(r);
    }

    /// Maximally mixed state, r = 0.
    static QubitState maximally_mixed() { return QubitState(Vec3{0.0, 0.0, 0.0}); }

    bool is_pure() const { return pure_; }

    const Vec3 &bloch() const { return r_; }

    complexd alpha() const {
        require_pure();
        return alpha_;
    }
    complexd beta() const {
        require_pure();
        return beta_;
    }

  private:
    QubitState(complexd alpha, complexd beta)
        : pure_(true),
          alpha_(alpha),
          beta_(beta),
          r_{2.0 * std::real(alpha * std::conj(beta)),
             -2.0 * std::imag(alpha * std::conj(beta)),
             std::norm(alpha) - std::norm(beta)} {}

    explicit QubitState(const Vec3 &r) : pure_(false), alpha_(0.0), beta_(0.0), r_(r) {}

    void require_pure() const {
        if (!pure_) {
            throw std::logic_error("state is mixed; amplitudes undefined");
        }
    }

    bool pure_;
    complexd alpha_;
    complexd beta_;
    Vec3 r_;
};

}  // namespace unsharp
