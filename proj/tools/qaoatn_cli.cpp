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


#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qaoatn/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"QAOA spin-glass experiments on tensor-network and state-vector simulators"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string filter;

    for (const char* name : {"gen", "train", "run", "report", "all"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment JSON")->required();
        sub->add_option("--out", out_dir, "output directory (overrides the config and QAOATN_OUT)");
        sub->add_option("--seed", seed, "master seed override");
        sub->add_option("--stage-filter", filter, "comma-separated substrings of work items to run, e.g. p25,target_01");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    const auto* sub = app.get_subcommands().front();

    qaoatn::ExperimentConfig config;
    try {
        qaoatn::Json j = qaoatn::read_json_file(config_path);
        if (sub->count("--seed")) {
            j["master_seed"] = seed;
        }
        config = qaoatn::parse_config(j);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (const char* env = std::getenv("QAOATN_OUT"); env && *env) config.output_dir = env;
    if (!out_dir.empty()) config.output_dir = out_dir;

    qaoatn::CommandOptions options;
    std::stringstream ss(filter);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) options.stage_filter.push_back(item);
    }
    return qaoatn::run_command(command, config, options);
}
