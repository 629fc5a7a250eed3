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

#include "edlab/models/model_io.hpp"

#include <json.hpp>
#include <set>

#include "edlab/error.hpp"

namespace edlab {
namespace {

using nlohmann::ordered_json;

ordered_json observable_json(const LinearObservable& obs) {
  return {{"q", obs.q}, {"p", obs.p}, {"q0", obs.q0}, {"p0", obs.p0}, {"constant", obs.constant}};
}

void require_keys(const ordered_json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& item : j.items()) {
    if (!allowed.contains(item.key())) throw ValidationError(where + ": unknown key '" + item.key() + "'");
  }
  for (const auto& key : allowed) {
    if (!j.contains(key)) throw ValidationError(where + ": missing key '" + key + "'");
  }
}

LinearObservable observable_from(const ordered_json& j, FactorLayout layout, const std::string& where) {
  require_keys(j, {"q", "p", "q0", "p0", "constant"}, where);
  return {j["q"].get<double>(), j["p"].get<double>(), j["q0"].get<double>(), j["p0"].get<double>(),
          j["constant"].get<double>(), layout};
}

}  // namespace

MeasurementModel build_model(ModelKind kind, const GaussianParams& probe, double coupling, double readout_width) {
  switch (kind) {
    case ModelKind::kVonNeumann: return with_probe_params(build_von_neumann(probe.state(), coupling), probe);
    case ModelKind::kZeroCoupling: return with_probe_params(build_zero_coupling(probe.state()), probe);
    case ModelKind::kOzawa: return with_probe_params(build_ozawa_contractive(probe.state(), coupling), probe);
    case ModelKind::kEpr: return build_epr_indirect(readout_width, probe.hbar);
    case ModelKind::kCustom: break;
  }
  throw ValidationError("custom models need an explicit io_map");
}

std::string model_to_json(const MeasurementModel& model) {
  ordered_json j;
  j["schema"] = kModelSchema;
  j["name"] = model.name();
  j["kind"] = to_string(model.kind());
  j["coupling"] = model.coupling();
  j["hbar"] = model.hbar();
  j["readout_width"] = model.readout_width();
  if (model.probe()) {
    if (!model.probe_params()) throw ValidationError("model '" + model.name() + "' has no recorded probe parameters");
    const auto& p = *model.probe_params();
    j["probe"] = {{"n_points", p.n_points}, {"length", p.length}, {"mean_q", p.mean_q}, {"mean_p", p.mean_p},
                  {"sigma_q", p.sigma_q}};
  } else {
    j["probe"] = nullptr;
  }
  j["io_map"] = {{"meter_out", observable_json(model.io_map().meter_out)},
                 {"momentum_out", observable_json(model.io_map().momentum_out)}};
  j["propagator"] = to_string(model.propagator_kind());
  return j.dump(2);
}

MeasurementModel model_from_json(const std::string& document) {
  ordered_json j;
  try {
    j = ordered_json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("model document is not valid JSON: ") + e.what());
  }
  try {
    require_keys(j, {"schema", "name", "kind", "coupling", "hbar", "readout_width", "probe", "io_map", "propagator"},
                 "model");
    if (j["schema"] != kModelSchema) throw ValidationError("model: unsupported schema " + j["schema"].dump());
    const auto kind = model_kind_from_string(j["kind"].get<std::string>());
    const double hbar = j["hbar"].get<double>();
    const auto layout = kind == ModelKind::kEpr ? FactorLayout::kParticlePair : FactorLayout::kObjectProbe;
    require_keys(j["io_map"], {"meter_out", "momentum_out"}, "model.io_map");
    const IoMap stored{observable_from(j["io_map"]["meter_out"], layout, "model.io_map.meter_out"),
                       observable_from(j["io_map"]["momentum_out"], layout, "model.io_map.momentum_out")};

    GaussianParams probe;
    probe.hbar = hbar;
    if (!j["probe"].is_null()) {
      const auto& pj = j["probe"];
      require_keys(pj, {"n_points", "length", "mean_q", "mean_p", "sigma_q"}, "model.probe");
      probe.n_points = pj["n_points"].get<std::size_t>();
      probe.length = pj["length"].get<double>();
      probe.mean_q = pj["mean_q"].get<double>();
      probe.mean_p = pj["mean_p"].get<double>();
      probe.sigma_q = pj["sigma_q"].get<double>();
    } else if (kind != ModelKind::kEpr) {
      throw ValidationError("model: kind '" + to_string(kind) + "' requires a probe");
    }

    MeasurementModel model = kind == ModelKind::kCustom
                                 ? with_probe_params(build_custom_model(j["name"].get<std::string>(), probe.state(), stored),
                                                     probe)
                                 : build_model(kind, probe, j["coupling"].get<double>(), j["readout_width"].get<double>());
    if (!(model.io_map().meter_out == stored.meter_out) || !(model.io_map().momentum_out == stored.momentum_out)) {
      throw ValidationError("model: stored io_map does not match the rebuilt '" + to_string(kind) + "' model");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("model document has a field of the wrong type: ") + e.what());
  }
}

}  // namespace edlab
