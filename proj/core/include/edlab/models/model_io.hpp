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

#include <string>

#include "edlab/models/model.hpp"

namespace edlab {

inline constexpr const char* kModelSchema = "edlab.model/1";

/// JSON document with the model's name, kind, coupling, hbar, readout
/// width, Gaussian probe parameters and io_map coefficients. Throws
/// ValidationError when a probe-carrying model has no recorded
/// GaussianParams (see with_probe_params).
std::string model_to_json(const MeasurementModel& model);

/// Rebuilds a model from model_to_json output. Throws ValidationError on
/// malformed documents, unknown keys, a schema mismatch, or when the
/// rebuilt io_map differs from the stored coefficients.
MeasurementModel model_from_json(const std::string& document);

/// Builds the named model with a Gaussian probe (ignored for "epr").
MeasurementModel build_model(ModelKind kind, const GaussianParams& probe, double coupling = 1.0,
                             double readout_width = 0.0);

}  // namespace edlab
