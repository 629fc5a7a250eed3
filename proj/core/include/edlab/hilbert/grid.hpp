// Copyright 2026 The edlab Authors
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

#include <cstddef>
#include <numbers>

namespace edlab {

/// Periodic discretization of a one-dimensional configuration space.
///
/// Positions are x_j = (j - n/2) * spacing for j in [0, n), so the grid
/// covers [-length/2, length/2). Momenta follow the FFT ordering:
/// index m carries hbar * 2*pi * m' / length with m' = m for m < n/2 and
/// m' = m - n otherwise, covering [-pi*hbar*n/length, pi*hbar*n/length).
/// With this convention P acts as -i*hbar d/dx.
class GridSpec {
 public:
  static constexpr std::size_t kMinPoints = 8;

  /// Throws ValidationError unless n_points is a power of two >= 8 and
  /// length, hbar are positive and finite.
  GridSpec(std::size_t n_points, double length, double hbar = 1.0);

  std::size_t n_points() const { return n_points_; }
  double length() const { return length_; }
  double hbar() const { return hbar_; }
  double spacing() const { return length_ / static_cast<double>(n_points_); }

  double position(std::size_t index) const {
    return (static_cast<double>(index) - static_cast<double>(n_points_ / 2)) * spacing();
  }

  double momentum(std::size_t index) const {
    const auto n = static_cast<std::ptrdiff_t>(n_points_);
    auto m = static_cast<std::ptrdiff_t>(index);
    if (m >= n / 2) m -= n;
    return hbar_ * 2.0 * std::numbers::pi * static_cast<double>(m) / length_;
  }

  double momentum_spacing() const { return hbar_ * 2.0 * std::numbers::pi / length_; }
  double min_position() const { return -0.5 * length_; }
  double max_position() const { return 0.5 * length_; }
  double max_momentum() const { return std::numbers::pi * hbar_ * static_cast<double>(n_points_) / length_; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::size_t n_points_;
  double length_;
  double hbar_;
};

}  // namespace edlab
