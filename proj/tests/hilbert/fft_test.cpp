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

#include "edlab/hilbert/fft.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "edlab/hilbert/random_state.hpp"
#include "edlab/hilbert/state.hpp"
#include "test_support.hpp"

namespace edlab {
namespace {

std::vector<cplx> random_vector(std::size_t n, Rng& rng) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
  return v;
}

TEST(FftTest, ForwardMatchesNaiveDft) {
  Rng rng(7);
  for (std::size_t n : {8u, 32u, 128u}) {
    auto x = random_vector(n, rng);
    const auto expected = testing::naive_dft(x);
    fft::forward(x);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(std::abs(x[k] - expected[k]), 0.0, 1e-11) << n << ":" << k;
  }
}

TEST(FftTest, InverseUndoesForward) {
  Rng rng(11);
  auto x = random_vector(256, rng);
  const auto original = x;
  fft::forward(x);
  fft::inverse(x);
  for (std::size_t k = 0; k < x.size(); ++k) EXPECT_NEAR(std::abs(x[k] - original[k]), 0.0, 1e-13);
}

TEST(FftTest, ParsevalHoldsForRandomLocalizedStates) {
  const auto grid = testing::reference_grid();
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto state = random_localized_state(grid, rng);
    std::vector<cplx> work(state.amplitudes().begin(), state.amplitudes().end());
    fft::forward(work);
    double sum = 0.0;
    for (const auto& c : work) sum += std::norm(c);
    // sum |F_k|^2 = n sum |x_j|^2, so the momentum-space norm is sum/n * h.
    const double norm = sum / static_cast<double>(grid.n_points()) * grid.spacing();
    EXPECT_NEAR(norm, 1.0, 1e-12);
    fft::inverse(work);
    EXPECT_NEAR(squared_norm(grid, work), 1.0, 1e-12);
  }
}

TEST(FftTest, AxisTransformsMatchPerLineTransforms) {
  const std::size_t rows = 8;
  const std::size_t cols = 16;
  Rng rng(5);
  const auto data = random_vector(rows * cols, rng);

  auto along_cols = data;
  fft::forward(along_cols, rows, cols, fft::Axis::kCols);
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<cplx> line(data.begin() + static_cast<long>(i * cols), data.begin() + static_cast<long>((i + 1) * cols));
    const auto expected = testing::naive_dft(line);
    for (std::size_t j = 0; j < cols; ++j) EXPECT_NEAR(std::abs(along_cols[i * cols + j] - expected[j]), 0.0, 1e-12);
  }

  auto along_rows = data;
  fft::forward(along_rows, rows, cols, fft::Axis::kRows);
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<cplx> line(rows);
    for (std::size_t i = 0; i < rows; ++i) line[i] = data[i * cols + j];
    const auto expected = testing::naive_dft(line);
    for (std::size_t i = 0; i < rows; ++i) EXPECT_NEAR(std::abs(along_rows[i * cols + j] - expected[i]), 0.0, 1e-12);
  }

  fft::inverse(along_rows, rows, cols, fft::Axis::kRows);
  for (std::size_t k = 0; k < data.size(); ++k) EXPECT_NEAR(std::abs(along_rows[k] - data[k]), 0.0, 1e-13);
}

}  // namespace
}  // namespace edlab
