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

#include "edlab/hilbert/grid.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "edlab/error.hpp"

namespace edlab {
namespace {

TEST(GridSpecTest, RejectsInvalidParameters) {
  EXPECT_THROW(GridSpec(4, 1.0), ValidationError);
  EXPECT_THROW(GridSpec(100, 1.0), ValidationError);
  EXPECT_THROW(GridSpec(0, 1.0), ValidationError);
  EXPECT_THROW(GridSpec(64, 0.0), ValidationError);
  EXPECT_THROW(GridSpec(64, -1.0), ValidationError);
  EXPECT_THROW(GridSpec(64, std::numeric_limits<double>::infinity()), ValidationError);
  EXPECT_THROW(GridSpec(64, 1.0, 0.0), ValidationError);
  EXPECT_NO_THROW(GridSpec(8, 1.0));
}

TEST(GridSpecTest, PositionsAreCenteredAndSpanHalfOpenInterval) {
  const GridSpec grid(512, 40.0);
  EXPECT_DOUBLE_EQ(grid.spacing(), 40.0 / 512.0);
  EXPECT_DOUBLE_EQ(grid.position(0), -20.0);
  EXPECT_DOUBLE_EQ(grid.position(256), 0.0);
  EXPECT_DOUBLE_EQ(grid.position(511), 20.0 - grid.spacing());
}

TEST(GridSpecTest, MomentaFollowTransformOrderAndSpanSymmetricRange) {
  const GridSpec grid(16, 8.0, 2.0);
  const double dp = 2.0 * 2.0 * std::numbers::pi / 8.0;
  EXPECT_DOUBLE_EQ(grid.momentum_spacing(), dp);
  EXPECT_DOUBLE_EQ(grid.momentum(0), 0.0);
  EXPECT_DOUBLE_EQ(grid.momentum(1), dp);
  EXPECT_DOUBLE_EQ(grid.momentum(7), 7 * dp);
  EXPECT_DOUBLE_EQ(grid.momentum(8), -8 * dp);
  EXPECT_DOUBLE_EQ(grid.momentum(15), -dp);
  EXPECT_DOUBLE_EQ(grid.max_momentum(), std::numbers::pi * 2.0 * 16 / 8.0);
  double lo = 1e300;
  double hi = -1e300;
  for (std::size_t m = 0; m < 16; ++m) {
    lo = std::min(lo, grid.momentum(m));
    hi = std::max(hi, grid.momentum(m));
  }
  EXPECT_DOUBLE_EQ(lo, -grid.max_momentum());
  EXPECT_LT(hi, grid.max_momentum());
}

TEST(GridSpecTest, EqualityComparesAllFields) {
  EXPECT_EQ(GridSpec(64, 8.0), GridSpec(64, 8.0, 1.0));
  EXPECT_FALSE(GridSpec(64, 8.0) == GridSpec(64, 8.0, 2.0));
  EXPECT_FALSE(GridSpec(64, 8.0) == GridSpec(128, 8.0));
}

}  // namespace
}  // namespace edlab
