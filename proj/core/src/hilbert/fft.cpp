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

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace edlab::fft {
namespace {

// (length, howmany, stride, dist, sign)
using PlanKey = std::tuple<int, int, int, int, int>;

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const PlanKey& key) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const auto [n, howmany, stride, dist, sign] = key;
    // The planner only needs a buffer of the right extent; FFTW_ESTIMATE
    // leaves it untouched and FFTW_UNALIGNED lets the plan run on any array.
    std::vector<fftw_complex> scratch(static_cast<std::size_t>((n - 1) * stride + (howmany - 1) * dist + 1));
    int dims[] = {n};
    fftw_plan plan = fftw_plan_many_dft(1, dims, howmany, scratch.data(), nullptr, stride, dist, scratch.data(),
                                        nullptr, stride, dist, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::span<cplx> data, int n, int howmany, int stride, int dist, int sign) {
  fftw_plan plan = cache().get({n, howmany, stride, dist, sign});
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

void scale(std::span<cplx> data, double factor) {
  for (auto& v : data) v *= factor;
}

}  // namespace

void forward(std::span<cplx> data) {
  run(data, static_cast<int>(data.size()), 1, 1, 1, FFTW_FORWARD);
}

void inverse(std::span<cplx> data) {
  run(data, static_cast<int>(data.size()), 1, 1, 1, FFTW_BACKWARD);
  scale(data, 1.0 / static_cast<double>(data.size()));
}

void forward(std::span<cplx> data, std::size_t rows, std::size_t cols, Axis axis) {
  const int r = static_cast<int>(rows);
  const int c = static_cast<int>(cols);
  if (axis == Axis::kCols) {
    run(data, c, r, 1, c, FFTW_FORWARD);
  } else {
    run(data, r, c, c, 1, FFTW_FORWARD);
  }
}

void inverse(std::span<cplx> data, std::size_t rows, std::size_t cols, Axis axis) {
  const int r = static_cast<int>(rows);
  const int c = static_cast<int>(cols);
  if (axis == Axis::kCols) {
    run(data, c, r, 1, c, FFTW_BACKWARD);
    scale(data, 1.0 / static_cast<double>(cols));
  } else {
    run(data, r, c, c, 1, FFTW_BACKWARD);
    scale(data, 1.0 / static_cast<double>(rows));
  }
}

}  // namespace edlab::fft
