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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaoatn/serialization.hpp"

namespace qaoatn {

/// Malformed or inconsistent experiment configuration (exit code 2).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A stage could not produce its outputs (exit code 3).
class StageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Backend { Statevector, Tn };

/// One JSON document per experiment. Instance seeds are either listed
/// explicitly or derived from master_seed; every other stochastic choice is
/// derived from master_seed as well.
struct ExperimentConfig {
    std::string name = "experiment";
    std::string lattice;  // Lattice::from_kind string
    std::vector<std::uint64_t> train_seeds;
    std::vector<std::uint64_t> target_seeds;
    std::vector<int> p_list;
    int num_basis = 10;  // C
    int chi = 16;
    int amplitude_rank = 16;            // R_m
    std::vector<int> norm_ranks{16};    // R_M sweep
    int variational_passes = 2;
    std::size_t num_samples = 1000;     // N_s
    Backend backend = Backend::Tn;
    /// Backend for the training objective; defaults to `backend`.
    Backend train_backend = Backend::Tn;
    int optimizer_budget = 400;
    /// "trained" (median of the trained schedules), "baseline_p5",
    /// "baseline_ramp" (straight-line fit of baseline_p5 at any p) or a path
    /// to a schedule JSON file.
    std::string schedule = "trained";
    std::filesystem::path output_dir = "out";
    std::uint64_t master_seed = 0;
    int histogram_bins = 50;

    /// Canonical JSON form; the config hash is taken over its dump.
    Json to_json() const;
};

/// Parses and validates; throws ConfigError. `num_train` / `num_targets`
/// may replace the explicit seed lists.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// 64-bit FNV-1a of the canonical config dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

/// Seed of a derived stream; labels are documented in harness.cpp.
std::uint64_t train_instance_seed(std::uint64_t master_seed, std::size_t k);
std::uint64_t target_instance_seed(std::uint64_t master_seed, std::size_t k);
std::uint64_t sampling_seed(std::uint64_t master_seed, std::size_t target, int p, int norm_rank);

struct StageRecord {
    std::string status;  // "ok" or "failed"
    std::string error;
    double wall_clock_seconds = 0.0;
    std::vector<std::string> files;  // relative to the output directory
};

struct RunManifest {
    std::string config_hash;
    std::string version;
    std::map<std::string, StageRecord> stages;

    Json to_json() const;
    static RunManifest from_json(const Json& j);
};

struct CommandOptions {
    /// Substring filters on work-item labels such as "target_03/p25/RM8";
    /// items matching none of them are skipped. Empty runs everything.
    std::vector<std::string> stage_filter;
};

/// Stage entry points. Each writes its files under config.output_dir
/// (existing files are first copied to NAME.bak), records itself in
/// manifest.json and throws StageError on failure.
void cmd_gen(const ExperimentConfig& config, const CommandOptions& options = {});
void cmd_train(const ExperimentConfig& config, const CommandOptions& options = {});
void cmd_run(const ExperimentConfig& config, const CommandOptions& options = {});
void cmd_report(const ExperimentConfig& config, const CommandOptions& options = {});

/// Runs the named command ("gen", "train", "run", "report" or "all") and
/// maps errors to exit codes 0 / 2 / 3, printing them to stderr.
int run_command(const std::string& command, const ExperimentConfig& config, const CommandOptions& options);

std::string version_string();

}  // namespace qaoatn
