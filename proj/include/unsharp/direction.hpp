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
#include <stdexcept>

#include "unsharp/vec3.hpp"

namespace unsharp {

inline constexpr double pi = 3.1415926535897932384626433832795;
inline constexpr double two_pi = 2.0 * pi;

/// Reduces an azimuth into [0, 2*pi). Throws on non-finite input.
inline double reduce_azimuth(double phi) {
    if (!std::isfinite(phi)) {
        throw std::invalid_argument("azimuth must be finite");
    }
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) {
        r += two_pi;
    }
    return r;
}

/// A point on the Poincare sphere in polar coordinates. theta is the polar
/// angle in [0, pi]; phi is the azimuth, stored reduced into [0, 2*pi).
class Direction {
  public:
    Direction(double theta, double phi) : theta_(theta), phi_(reduce_azimuth(phi)) {
        if (!std::isfinite(theta) || theta < 0.0 || theta > pi) {
            throw std::invalid_argument("polar angle must lie in [0, pi]");
        }
    }

    double theta() const { return theta_; }
    double phi() const { return phi_; }

    /// The Euclidean unit vector (sin t cos p, sin t sin p, cos t).
    Vec3 unit_vector() const {
        const double st = std::sin(theta_);
        return {st * std::cos(phi_), st * std::sin(phi_), std::cos(theta_)};
    }

  private:
    double theta_;
    double phi_;
};

}  // namespace unsharp
