// Copyright 2026 The corrgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <numbers>
#include <string>
#include <string_view>

#include "corrgame/rng.hpp"

namespace corrgame {

inline constexpr double kPi = std::numbers::pi;

/// Polar/azimuthal angles in radians. theta in [0, pi], phi in [0, 2 pi).
struct SphericalAngles {
  double theta = 0.0;
  double phi = 0.0;
};

/// A unit vector in 3-space; a player's move. Stored as Cartesian components,
/// the spherical form is a constructor and a view.
class Direction {
 public:
  /// The shared z-axis.
  constexpr Direction() = default;

  /// Normalizes (x, y, z). Throws PreconditionError for a zero or non-finite
  /// vector.
  static Direction from_components(double x, double y, double z);

  /// Throws PreconditionError when the angles are outside their ranges.
  static Direction from_spherical(const SphericalAngles& angles);

  /// Same as from_spherical, but wraps phi into [0, 2 pi) first. theta must
  /// still be in [0, pi].
  static Direction from_spherical_wrapped(double theta, double phi);

  static constexpr Direction z_axis() { return Direction{}; }

  constexpr double x() const { return x_; }
  constexpr double y() const { return y_; }
  constexpr double z() const { return z_; }

  /// theta in [0, pi]; phi in [0, 2 pi), with phi = 0 on the poles.
  SphericalAngles to_spherical() const;

  Direction operator-() const { return Direction(-x_, -y_, -z_); }

  /// Rotation about the z-axis by `angle` radians.
  Direction rotated_about_z(double angle) const;

  /// Reflection through the x-z plane (y -> -y).
  Direction mirrored_y() const { return Direction(x_, -y_, z_); }

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  constexpr Direction(double x, double y, double z) : x_(x), y_(y), z_(z) {}

  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 1.0;
};

double dot(const Direction& a, const Direction& b);

/// arccos of the clamped dot product, in [0, pi].
double angle_between(const Direction& a, const Direction& b);

/// Uniform on the sphere: z uniform in [-1, 1], phi uniform in [0, 2 pi).
Direction sample_uniform_direction(Rng& rng);

inline constexpr double degrees_to_radians(double deg) { return deg * kPi / 180.0; }
inline constexpr double radians_to_degrees(double rad) { return rad * 180.0 / kPi; }

/// Parses "theta,phi" in degrees. Throws PreconditionError on malformed text
/// or out-of-range angles.
Direction parse_direction_degrees(std::string_view text);

}  // namespace corrgame
