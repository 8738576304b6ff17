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

#include "corrgame/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "corrgame/errors.hpp"
#include "parse_util.hpp"

namespace corrgame {

Direction Direction::from_components(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(norm) || norm == 0.0) {
    throw PreconditionError("direction must be a finite nonzero vector");
  }
  return Direction(x / norm, y / norm, z / norm);
}

Direction Direction::from_spherical(const SphericalAngles& angles) {
  const double theta = angles.theta;
  const double phi = angles.phi;
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw PreconditionError("theta must lie in [0, pi], got " + std::to_string(theta));
  }
  if (!(phi >= 0.0 && phi < 2.0 * kPi)) {
    throw PreconditionError("phi must lie in [0, 2 pi), got " + std::to_string(phi));
  }
  const double st = std::sin(theta);
  return Direction(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
}

Direction Direction::from_spherical_wrapped(double theta, double phi) {
  double wrapped = std::fmod(phi, 2.0 * kPi);
  if (wrapped < 0.0) wrapped += 2.0 * kPi;
  if (wrapped >= 2.0 * kPi) wrapped = 0.0;
  return from_spherical({theta, wrapped});
}

SphericalAngles Direction::to_spherical() const {
  const double theta = std::acos(std::clamp(z_, -1.0, 1.0));
  double phi = 0.0;
  if (x_ != 0.0 || y_ != 0.0) {
    phi = std::atan2(y_, x_);
    if (phi < 0.0) phi += 2.0 * kPi;
    if (phi >= 2.0 * kPi) phi = 0.0;
  }
  return {theta, phi};
}

Direction Direction::rotated_about_z(double angle) const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return Direction(c * x_ - s * y_, s * x_ + c * y_, z_);
}

double dot(const Direction& a, const Direction& b) {
  return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

double angle_between(const Direction& a, const Direction& b) {
  const double cx = a.y() * b.z() - a.z() * b.y();
  const double cy = a.z() * b.x() - a.x() * b.z();
  const double cz = a.x() * b.y() - a.y() * b.x();
  return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot(a, b));
}

Direction sample_uniform_direction(Rng& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * kPi * rng.uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  // Components are already unit length up to rounding; from_components
  // renormalizes to keep the 1e-12 norm invariant.
  return Direction::from_components(r * std::cos(phi), r * std::sin(phi), z);
}

Direction parse_direction_degrees(std::string_view text) {
  const std::vector<double> parts = detail::parse_real_list(text, "direction");
  if (parts.size() != 2) {
    throw PreconditionError("direction must be \"theta,phi\" in degrees, got \"" +
                            std::string(text) + "\"");
  }
  const double theta = degrees_to_radians(parts[0]);
  if (!(parts[0] >= 0.0 && parts[0] <= 180.0)) {
    throw PreconditionError("theta must lie in [0, 180] degrees, got \"" +
                            std::string(text) + "\"");
  }
  return Direction::from_spherical_wrapped(std::min(theta, kPi),
                                           degrees_to_radians(parts[1]));
}

}  // namespace corrgame
