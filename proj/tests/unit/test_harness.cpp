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


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qaoatn/harness.hpp"

using namespace qaoatn;
namespace fs = std::filesystem;

namespace {

Json small_config(const fs::path& out) {
    return Json{{"name", "tiny"},          {"lattice", "square:2x3"}, {"num_train", 2},   {"num_targets", 2},
                {"p", {2}},                {"C", 2},                  {"chi", 4},         {"R_m", 0},
                {"R_M", {1, 2}},           {"N_s", 40},               {"backend", "tn"},  {"train_backend", "statevector"},
                {"optimizer_budget", 15},  {"schedule", "trained"},   {"output_dir", out.string()},
                {"master_seed", 3}};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("qaoatn_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Config, ParsesAndDerivesSeeds) {
    const auto cfg = parse_config(small_config("x"));
    EXPECT_EQ(cfg.train_seeds.size(), 2u);
    ASSERT_EQ(cfg.target_seeds.size(), 2u);
    EXPECT_EQ(cfg.target_seeds[1], target_instance_seed(3, 1));
    EXPECT_EQ(cfg.train_seeds[0], train_instance_seed(3, 0));
    EXPECT_NE(cfg.train_seeds[0], cfg.target_seeds[0]);
    EXPECT_EQ(cfg.backend, Backend::Tn);
    EXPECT_EQ(cfg.train_backend, Backend::Statevector);
    EXPECT_EQ(cfg.norm_ranks, (std::vector<int>{1, 2}));
}

TEST(Config, RejectsBadInput) {
    auto bad = [](const char* key, Json value) {
        Json j = small_config("x");
        j[key] = std::move(value);
        return j;
    };
    EXPECT_THROW(parse_config(bad("unknown_key", 1)), ConfigError);
    EXPECT_THROW(parse_config(bad("backend", "gpu")), ConfigError);
    EXPECT_THROW(parse_config(bad("R_m", -1)), ConfigError);
    EXPECT_THROW(parse_config(bad("lattice", "square:0x3")), ConfigError);
    EXPECT_THROW(parse_config(bad("p", "five")), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, HashIgnoresOutputDir) {
    const auto a = parse_config(small_config("one"));
    const auto b = parse_config(small_config("two"));
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
    Json j = small_config("one");
    j["chi"] = 8;
    EXPECT_NE(config_hash(parse_config(j)), config_hash(a));
    EXPECT_EQ(parse_config(a.to_json()).to_json(), a.to_json());
}

TEST(Config, SamplingSeedsAreDistinct) {
    EXPECT_NE(sampling_seed(1, 0, 5, 4), sampling_seed(1, 0, 5, 8));
    EXPECT_NE(sampling_seed(1, 0, 5, 4), sampling_seed(1, 1, 5, 4));
    EXPECT_NE(sampling_seed(1, 0, 5, 4), sampling_seed(1, 0, 25, 4));
    EXPECT_EQ(sampling_seed(1, 0, 5, 4), sampling_seed(1, 0, 5, 4));
}

TEST(Harness, ExitCodes) {
    const fs::path dir = scratch_dir("codes");
    const auto cfg = parse_config(small_config(dir));
    EXPECT_EQ(run_command("bogus", cfg, {}), 2);
    EXPECT_EQ(run_command("run", cfg, {}), 3);
    const auto manifest = RunManifest::from_json(read_json_file(dir / "manifest.json"));
    EXPECT_EQ(manifest.stages.at("run").status, "failed");
    EXPECT_FALSE(manifest.stages.at("run").error.empty());
    fs::remove_all(dir);
}

TEST(Harness, EndToEndIsReproducible) {
    const fs::path dir = scratch_dir("e2e");
    const auto cfg = parse_config(small_config(dir));
    ASSERT_EQ(run_command("all", cfg, {}), 0);
    for (const char* f : {"instances/train_00.json", "instances/target_01.json", "instances/target_01_truth.json",
                          "schedules/p2/median.json", "schedules/p2/training_log.csv",
                          "runs/target_00/p2/diagnostics.csv", "runs/target_01/p2/samples_RM2.csv",
                          "runs/target_01/p2/stats_RM1.json", "report/summary.csv", "report/s_cut.csv",
                          "report/energy_histograms.json", "report/weights.json", "manifest.json"}) {
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    }
    const auto manifest = RunManifest::from_json(read_json_file(dir / "manifest.json"));
    EXPECT_EQ(manifest.config_hash, config_hash(cfg));
    EXPECT_EQ(manifest.version, version_string());
    for (const char* stage : {"gen", "train", "run", "report"}) EXPECT_EQ(manifest.stages.at(stage).status, "ok") << stage;

    const std::string samples = slurp(dir / "runs/target_01/p2/samples_RM2.csv");
    const std::string summary = slurp(dir / "report/summary.csv");
    ASSERT_EQ(run_command("all", cfg, {}), 0);
    EXPECT_EQ(slurp(dir / "runs/target_01/p2/samples_RM2.csv"), samples);
    EXPECT_EQ(slurp(dir / "report/summary.csv"), summary);
    EXPECT_TRUE(fs::exists(dir / "runs/target_01/p2/samples_RM2.csv.bak"));
    fs::remove_all(dir);
}

TEST(Harness, StageFilterSkipsOtherItems) {
    const fs::path dir = scratch_dir("filter");
    Json j = small_config(dir);
    j["schedule"] = "baseline_p5";
    j["p"] = {5};
    const auto cfg = parse_config(j);
    ASSERT_EQ(run_command("gen", cfg, {}), 0);
    CommandOptions opt;
    opt.stage_filter = {"target_01/p5/RM2"};
    ASSERT_EQ(run_command("run", cfg, opt), 0);
    EXPECT_TRUE(fs::exists(dir / "runs/target_01/p5/samples_RM2.csv"));
    EXPECT_FALSE(fs::exists(dir / "runs/target_01/p5/samples_RM1.csv"));
    EXPECT_FALSE(fs::exists(dir / "runs/target_00/p5/samples_RM2.csv"));
    fs::remove_all(dir);
}

TEST(Harness, StatevectorBackendHasUnitWeights) {
    const fs::path dir = scratch_dir("sv");
    Json j = small_config(dir);
    j["backend"] = "statevector";
    j["schedule"] = "baseline_p5";
    j["p"] = {5};
    const auto cfg = parse_config(j);
    ASSERT_EQ(run_command("all", cfg, {}), 0);
    const Json stats = read_json_file(dir / "runs/target_00/p5/stats_sv.json");
    EXPECT_DOUBLE_EQ(stats["var_omega"].get<double>(), 0.0);
    EXPECT_EQ(stats["N_s"], 40);
    fs::remove_all(dir);
}
