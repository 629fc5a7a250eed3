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

#include <complex>
#include <cstddef>
#include <span>

namespace edlab::fft {

using cplx = std::complex<double>;

/// Axis of a row-major (rows x cols) array. Axis::kRows transforms along the
/// first index (stride cols), Axis::kCols along the second (contiguous).
enum class Axis { kRows, kCols };

// In-place discrete Fourier transforms. forward uses exp(-2*pi*i*j*k/n) and
// is unnormalized; inverse applies exp(+2*pi*i*j*k/n) and divides by n, so
// inverse(forward(x)) == x. Plans are cached and shared; all functions are
// safe to call concurrently on distinct buffers.
void forward(std::span<cplx> data);
void inverse(std::span<cplx> data);
void forward(std::span<cplx> data, std::size_t rows, std::size_t cols, Axis axis);
void inverse(std::span<cplx> data, std::size_t rows, std::size_t cols, Axis axis);

}  // namespace edlab::fft
