// Copyright 2026 The qaoatn Authors
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

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qaoatn/instance.hpp"
#include "qaoatn/lattice.hpp"
#include "qaoatn/sampler.hpp"
#include "qaoatn/schedule.hpp"

namespace qaoatn {

using Json = nlohmann::ordered_json;

class SerializationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// {kind, n, edges: [[a, b], ...], coords: [[x, y], ...]}
Json lattice_to_json(const Lattice& lattice);
Lattice lattice_from_json(const Json& j);

/// {lattice, seed, linear: [[v, d]], quadratic: [[i, j, d]], cubic: [[l, n1, n2, d]]}
Json instance_to_json(const SpinGlassInstance& instance);
SpinGlassInstance instance_from_json(const Json& j);

/// Representatives are written as bit strings, qubit 0 first.
Json ground_truth_to_json(const GroundTruth& truth, int num_qubits);

Json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const Json& j);

Json coeffs_to_json(const InterpCoeffs& coeffs);
InterpCoeffs coeffs_from_json(const Json& j);

Json batch_stats_to_json(const BatchStats& stats);
Json histogram_to_json(const Histogram& h);

/// instance_seed,iteration,best_energy,evaluations
void write_training_log_csv(std::ostream& out, const std::vector<TrainingLogRow>& rows);

Json read_json_file(const std::filesystem::path& path);
/// Two-space indented, trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qaoatn
