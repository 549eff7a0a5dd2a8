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


#include "qaoatn/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qaoatn/evolve.hpp"
#include "qaoatn/philox.hpp"
#include "qaoatn/statevector.hpp"

namespace fs = std::filesystem;

namespace qaoatn {

namespace {

// Labels of the derived seed streams (high 32 bits select the stream).
constexpr std::uint64_t kTrainLabel = std::uint64_t{1} << 32;
constexpr std::uint64_t kTargetLabel = std::uint64_t{2} << 32;
constexpr std::uint64_t kSampleLabel = std::uint64_t{3} << 32;

// Largest lattice the brute-force reference is computed for.
constexpr int kBruteForceQubits = 26;

std::string backend_name(Backend b) { return b == Backend::Statevector ? "statevector" : "tn"; }

Backend parse_backend(const std::string& s) {
    if (s == "statevector") return Backend::Statevector;
    if (s == "tn") return Backend::Tn;
    throw ConfigError("backend must be 'statevector' or 'tn', got '" + s + "'");
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

std::string two_digits(std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02zu", k);
    return buf;
}

std::string train_file(std::size_t k) { return "instances/train_" + two_digits(k) + ".json"; }
std::string target_file(std::size_t k) { return "instances/target_" + two_digits(k) + ".json"; }
std::string truth_file(std::size_t k) { return "instances/target_" + two_digits(k) + "_truth.json"; }
std::string schedule_dir(int p) { return "schedules/p" + std::to_string(p); }
std::string run_dir(std::size_t k, int p) { return "runs/target_" + two_digits(k) + "/p" + std::to_string(p); }
std::string rank_tag(Backend b, int r) { return b == Backend::Statevector ? std::string("sv") : "RM" + std::to_string(r); }

bool selected(const CommandOptions& options, const std::string& label) {
    if (options.stage_filter.empty()) return true;
    for (const auto& f : options.stage_filter) {
        if (label.find(f) != std::string::npos) return true;
    }
    return false;
}

// Writes stage outputs, keeping a .bak copy of anything overwritten.
class StageWriter {
  public:
    explicit StageWriter(fs::path root) : root_(std::move(root)) {}

    void text(const std::string& rel, const std::string& content) {
        const fs::path path = root_ / rel;
        std::error_code ec;
        if (fs::exists(path, ec)) {
            fs::copy_file(path, fs::path(path.string() + ".bak"), fs::copy_options::overwrite_existing, ec);
            if (ec) throw StageError("cannot back up " + path.string() + ": " + ec.message());
        }
        write_text_file(path, content);
        files_.push_back(rel);
    }

    void json(const std::string& rel, const Json& j) { text(rel, j.dump(2) + "\n"); }

    const std::vector<std::string>& files() const { return files_; }

  private:
    fs::path root_;
    std::vector<std::string> files_;
};

Json read_input(const ExperimentConfig& config, const std::string& rel) {
    const fs::path path = config.output_dir / rel;
    if (!fs::exists(path)) throw StageError("missing input " + path.string() + " (run the earlier stage first)");
    try {
        return read_json_file(path);
    } catch (const SerializationError& e) {
        throw StageError(e.what());
    }
}

SpinGlassInstance read_instance(const ExperimentConfig& config, const std::string& rel) {
    try {
        return instance_from_json(read_input(config, rel));
    } catch (const SerializationError& e) {
        throw StageError(rel + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw StageError(rel + ": " + e.what());
    }
}

const fs::path kManifest = "manifest.json";

// Records one stage in manifest.json; a manifest from a different config is
// replaced.
void record_stage(const ExperimentConfig& config, const std::string& stage, StageRecord record) {
    const fs::path path = config.output_dir / kManifest;
    RunManifest manifest;
    const std::string hash = config_hash(config);
    if (fs::exists(path)) {
        try {
            manifest = RunManifest::from_json(read_json_file(path));
        } catch (const std::exception&) {
            manifest = {};
        }
        if (manifest.config_hash != hash) manifest = {};
    }
    manifest.config_hash = hash;
    manifest.version = version_string();
    manifest.stages[stage] = std::move(record);
    write_json_file(path, manifest.to_json());
}

template <class Body>
void run_stage(const ExperimentConfig& config, const std::string& stage, Body body) {
    const auto t0 = std::chrono::steady_clock::now();
    StageWriter writer(config.output_dir);
    StageRecord record;
    try {
        body(writer);
        record.status = "ok";
    } catch (const std::exception& e) {
        record.status = "failed";
        record.error = e.what();
    }
    record.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    record.files = writer.files();
    const bool failed = record.status != "ok";
    const std::string error = record.error;
    record_stage(config, stage, std::move(record));
    if (failed) throw StageError(stage + ": " + error);
}

Schedule resolve_schedule(const ExperimentConfig& config, int p) {
    if (config.schedule == "trained") {
        try {
            return schedule_from_json(read_input(config, schedule_dir(p) + "/median.json"));
        } catch (const SerializationError& e) {
            throw StageError(e.what());
        }
    }
    if (config.schedule == "baseline_p5") return baseline_p5();
    if (config.schedule == "baseline_ramp") return schedule_from_coeffs(linear_ramp_init(config.num_basis), p);
    Schedule s;
    try {
        s = schedule_from_json(read_json_file(config.schedule));
    } catch (const SerializationError& e) {
        throw StageError(e.what());
    }
    if (s.p() != p) throw StageError("schedule file " + config.schedule + " has p = " + std::to_string(s.p()));
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string read_text(const ExperimentConfig& config, const std::string& rel) {
    const fs::path path = config.output_dir / rel;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageError("missing input " + path.string() + " (run the earlier stage first)");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Json ExperimentConfig::to_json() const {
    Json ranks = Json::array();
    for (int r : norm_ranks) ranks.push_back(r);
    return Json{{"name", name},
                {"lattice", lattice},
                {"train_seeds", train_seeds},
                {"target_seeds", target_seeds},
                {"p", p_list},
                {"C", num_basis},
                {"chi", chi},
                {"R_m", amplitude_rank},
                {"R_M", ranks},
                {"variational_passes", variational_passes},
                {"N_s", num_samples},
                {"backend", backend_name(backend)},
                {"train_backend", backend_name(train_backend)},
                {"optimizer_budget", optimizer_budget},
                {"schedule", schedule},
                {"output_dir", output_dir.string()},
                {"master_seed", master_seed},
                {"histogram_bins", histogram_bins}};
}

ExperimentConfig parse_config(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::vector<std::string> known{
        "name", "lattice", "train_seeds", "target_seeds", "num_train", "num_targets", "p", "C", "chi", "R_m",
        "R_M", "variational_passes", "N_s", "backend", "train_backend", "optimizer_budget", "schedule",
        "output_dir", "master_seed", "histogram_bins", "description"};
    for (const auto& item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw ConfigError("unknown config field '" + item.key() + "'");
        }
    }
    ExperimentConfig c;
    c.name = get_or<std::string>(j, "name", c.name);
    if (!j.contains("lattice")) throw ConfigError("config field 'lattice' is required");
    c.lattice = get_or<std::string>(j, "lattice", "");
    try {
        Lattice::from_kind(c.lattice);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("lattice: ") + e.what());
    }
    c.master_seed = get_or<std::uint64_t>(j, "master_seed", 0);
    c.train_seeds = get_or<std::vector<std::uint64_t>>(j, "train_seeds", {});
    c.target_seeds = get_or<std::vector<std::uint64_t>>(j, "target_seeds", {});
    if (j.contains("num_train")) {
        if (!c.train_seeds.empty()) throw ConfigError("give either train_seeds or num_train");
        const int k = get_or<int>(j, "num_train", 0);
        if (k < 0) throw ConfigError("num_train must be >= 0");
        for (int i = 0; i < k; ++i) c.train_seeds.push_back(train_instance_seed(c.master_seed, i));
    }
    if (j.contains("num_targets")) {
        if (!c.target_seeds.empty()) throw ConfigError("give either target_seeds or num_targets");
        const int k = get_or<int>(j, "num_targets", 0);
        if (k < 0) throw ConfigError("num_targets must be >= 0");
        for (int i = 0; i < k; ++i) c.target_seeds.push_back(target_instance_seed(c.master_seed, i));
    }
    if (c.target_seeds.empty()) throw ConfigError("at least one target instance is required");
    c.p_list = get_or<std::vector<int>>(j, "p", {5});
    if (c.p_list.empty()) throw ConfigError("'p' must list at least one depth");
    for (int p : c.p_list) {
        if (p < 1) throw ConfigError("every p must be >= 1");
    }
    c.num_basis = get_or<int>(j, "C", c.num_basis);
    if (c.num_basis < 1) throw ConfigError("'C' must be >= 1");
    c.chi = get_or<int>(j, "chi", c.chi);
    if (c.chi < 0) throw ConfigError("'chi' must be >= 1 (0 for uncapped)");
    c.amplitude_rank = get_or<int>(j, "R_m", c.amplitude_rank);
    if (c.amplitude_rank < 0) throw ConfigError("'R_m' must be >= 0");
    c.norm_ranks = get_or<std::vector<int>>(j, "R_M", c.norm_ranks);
    if (c.norm_ranks.empty()) throw ConfigError("'R_M' must list at least one rank");
    for (int r : c.norm_ranks) {
        if (r < 0) throw ConfigError("every R_M must be >= 0");
    }
    c.variational_passes = get_or<int>(j, "variational_passes", c.variational_passes);
    const auto ns = get_or<std::int64_t>(j, "N_s", static_cast<std::int64_t>(c.num_samples));
    if (ns < 1) throw ConfigError("'N_s' must be >= 1");
    c.num_samples = static_cast<std::size_t>(ns);
    c.backend = parse_backend(get_or<std::string>(j, "backend", "tn"));
    c.train_backend = parse_backend(get_or<std::string>(j, "train_backend", backend_name(c.backend)));
    c.optimizer_budget = get_or<int>(j, "optimizer_budget", c.optimizer_budget);
    if (c.optimizer_budget < 0) throw ConfigError("'optimizer_budget' must be >= 0");
    c.schedule = get_or<std::string>(j, "schedule", c.schedule);
    if (c.schedule == "trained" && c.train_seeds.empty()) throw ConfigError("schedule 'trained' needs training instances");
    if (c.schedule == "baseline_p5") {
        for (int p : c.p_list) {
            if (p != 5) throw ConfigError("schedule 'baseline_p5' only exists for p = 5");
        }
    }
    c.output_dir = get_or<std::string>(j, "output_dir", c.output_dir.string());
    c.histogram_bins = get_or<int>(j, "histogram_bins", c.histogram_bins);
    if (c.histogram_bins < 1) throw ConfigError("'histogram_bins' must be >= 1");
    return c;
}

ExperimentConfig load_config(const fs::path& path) {
    try {
        return parse_config(read_json_file(path));
    } catch (const SerializationError& e) {
        throw ConfigError(e.what());
    }
}

std::string config_hash(const ExperimentConfig& config) {
    Json j = config.to_json();
    j.erase("output_dir");
    const std::string text = j.dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::uint64_t train_instance_seed(std::uint64_t master_seed, std::size_t k) {
    return derive_seed(master_seed, kTrainLabel | k);
}

std::uint64_t target_instance_seed(std::uint64_t master_seed, std::size_t k) {
    return derive_seed(master_seed, kTargetLabel | k);
}

std::uint64_t sampling_seed(std::uint64_t master_seed, std::size_t target, int p, int norm_rank) {
    const std::uint64_t label = kSampleLabel | (static_cast<std::uint64_t>(target & 0xffff) << 16) |
                                static_cast<std::uint64_t>(p & 0xffff);
    return derive_seed(derive_seed(master_seed, label), static_cast<std::uint64_t>(norm_rank));
}

Json RunManifest::to_json() const {
    Json stages_j = Json::object();
    for (const auto& [name, rec] : stages) {
        Json r{{"status", rec.status}, {"wall_clock_seconds", rec.wall_clock_seconds}, {"files", rec.files}};
        if (!rec.error.empty()) r["error"] = rec.error;
        stages_j[name] = r;
    }
    return Json{{"config_hash", config_hash}, {"version", version}, {"stages", stages_j}};
}

RunManifest RunManifest::from_json(const Json& j) {
    RunManifest m;
    m.config_hash = j.at("config_hash").get<std::string>();
    m.version = j.value("version", "");
    for (const auto& item : j.at("stages").items()) {
        StageRecord r;
        r.status = item.value().at("status").get<std::string>();
        r.error = item.value().value("error", "");
        r.wall_clock_seconds = item.value().value("wall_clock_seconds", 0.0);
        r.files = item.value().at("files").get<std::vector<std::string>>();
        m.stages[item.key()] = std::move(r);
    }
    return m;
}

void cmd_gen(const ExperimentConfig& config, const CommandOptions& options) {
    run_stage(config, "gen", [&](StageWriter& out) {
        const Lattice lat = Lattice::from_kind(config.lattice);
        for (std::size_t k = 0; k < config.train_seeds.size(); ++k) {
            if (!selected(options, "train_" + two_digits(k))) continue;
            out.json(train_file(k), instance_to_json(random_instance(lat, config.train_seeds[k])));
        }
        for (std::size_t k = 0; k < config.target_seeds.size(); ++k) {
            if (!selected(options, "target_" + two_digits(k))) continue;
            const auto inst = random_instance(lat, config.target_seeds[k]);
            out.json(target_file(k), instance_to_json(inst));
            if (lat.num_vertices() <= kBruteForceQubits) {
                out.json(truth_file(k), ground_truth_to_json(brute_force(inst), lat.num_vertices()));
            }
        }
    });
}

void cmd_train(const ExperimentConfig& config, const CommandOptions& options) {
    run_stage(config, "train", [&](StageWriter& out) {
        if (config.train_seeds.empty()) throw StageError("no training instances configured");
        std::vector<SpinGlassInstance> instances;
        for (std::size_t k = 0; k < config.train_seeds.size(); ++k) instances.push_back(read_instance(config, train_file(k)));
        for (int p : config.p_list) {
            if (!selected(options, "p" + std::to_string(p))) continue;
            OptimizerConfig opt;
            opt.max_evaluations = config.optimizer_budget;
            std::vector<TrainingResult> results;
            try {
                if (config.train_backend == Backend::Statevector) {
                    StatevectorBackend backend;
                    results = train(instances, p, config.num_basis, backend, opt);
                } else {
                    TnBackend backend(config.chi);
                    results = train(instances, p, config.num_basis, backend, opt);
                }
            } catch (const TrainingError& e) {
                throw StageError(e.what());
            }
            std::vector<Schedule> schedules;
            std::vector<TrainingLogRow> log;
            for (std::size_t k = 0; k < results.size(); ++k) {
                const auto& r = results[k];
                out.json(schedule_dir(p) + "/train_" + two_digits(k) + ".json",
                         Json{{"instance_seed", config.train_seeds[k]},
                              {"coefficients", coeffs_to_json(r.coeffs)},
                              {"schedule", schedule_to_json(r.schedule)},
                              {"initial_energy", r.initial_energy},
                              {"best_energy", r.best_energy},
                              {"evaluations", r.evaluations}});
                schedules.push_back(r.schedule);
                log.insert(log.end(), r.log.begin(), r.log.end());
            }
            std::ostringstream csv;
            write_training_log_csv(csv, log);
            out.text(schedule_dir(p) + "/training_log.csv", csv.str());
            out.json(schedule_dir(p) + "/median.json", schedule_to_json(median_transfer(schedules)));
        }
    });
}

void cmd_run(const ExperimentConfig& config, const CommandOptions& options) {
    run_stage(config, "run", [&](StageWriter& out) {
        for (std::size_t k = 0; k < config.target_seeds.size(); ++k) {
            const std::string tlabel = "target_" + two_digits(k);
            bool any = false;
            for (int p : config.p_list) {
                for (int r : config.norm_ranks) {
                    any = any || selected(options, tlabel + "/p" + std::to_string(p) + "/" + rank_tag(config.backend, r));
                }
            }
            if (!any) continue;
            const auto inst = read_instance(config, target_file(k));
            for (int p : config.p_list) {
                const std::string plabel = tlabel + "/p" + std::to_string(p);
                const Schedule schedule = resolve_schedule(config, p);
                const std::string dir = run_dir(k, p);
                if (config.backend == Backend::Statevector) {
                    if (!selected(options, plabel + "/sv")) continue;
                    DenseState sv = plus_state(inst.num_vertices());
                    apply_qaoa(sv, inst, schedule);
                    const auto probs = probabilities(sv);
                    const auto draws = sample_exact(sv, config.num_samples, sampling_seed(config.master_seed, k, p, 0));
                    std::vector<SampleRecord> records;
                    for (std::size_t i = 0; i < draws.size(); ++i) {
                        SampleRecord rec;
                        rec.index = i;
                        for (int v = 0; v < inst.num_vertices(); ++v) rec.bits.push_back((draws[i] >> v) & 1u);
                        rec.energy = cost_bits(inst, draws[i]);
                        rec.log_p = rec.log_q = std::log(probs[draws[i]]);
                        rec.omega = 1.0;
                        records.push_back(std::move(rec));
                    }
                    const BatchStats st = normalize_batch(records);
                    std::ostringstream csv;
                    write_samples_csv(csv, records);
                    out.text(dir + "/samples_sv.csv", csv.str());
                    Json stats = batch_stats_to_json(st);
                    stats["p"] = p;
                    stats["backend"] = "statevector";
                    stats["exact_energy"] = energy(sv, inst);
                    out.json(dir + "/stats_sv.json", stats);
                    continue;
                }
                std::optional<EvolveResult> evolved;
                try {
                    evolved.emplace(evolve(TNState::init_plus(inst.lattice(), config.chi), inst, schedule));
                } catch (const std::exception& e) {
                    throw StageError(plabel + ": evolution failed: " + e.what());
                }
                const EvolveResult& evo = *evolved;
                std::ostringstream diag;
                write_diagnostics_csv(diag, evo.steps);
                out.text(dir + "/diagnostics.csv", diag.str());
                const ColumnPartition part = column_partition(inst.lattice());
                for (int rm : config.norm_ranks) {
                    const std::string label = plabel + "/" + rank_tag(config.backend, rm);
                    if (!selected(options, label)) continue;
                    SamplerOptions so;
                    so.amplitude_rank = config.amplitude_rank;
                    so.norm.max_rank = rm;
                    so.norm.variational_passes = config.variational_passes;
                    so.instance = &inst;
                    BoundaryEnvs envs;
                    SampleBatch batch;
                    try {
                        envs = build_norm_envs(evo.state, part, so.norm);
                        batch = draw_samples(evo.state, envs, 0, config.num_samples,
                                             sampling_seed(config.master_seed, k, p, rm), so);
                    } catch (const std::exception& e) {
                        throw StageError(label + ": sampling failed: " + e.what());
                    }
                    batch.stats = normalize_batch(batch.records, batch.stats.aborts);
                    std::ostringstream csv;
                    write_samples_csv(csv, batch.records);
                    out.text(dir + "/samples_" + rank_tag(config.backend, rm) + ".csv", csv.str());
                    Json stats = batch_stats_to_json(batch.stats);
                    stats["p"] = p;
                    stats["chi"] = config.chi;
                    stats["R_m"] = config.amplitude_rank;
                    stats["R_M"] = rm;
                    stats["backend"] = "tn";
                    stats["bp_energy"] = bp_energy(evo.state, evo.bp, inst);
                    stats["truncation_weight"] = evo.total_truncation_weight;
                    stats["fit_residual"] = envs.fit_residual;
                    stats["abort_reasons"] = batch.abort_reasons;
                    out.json(dir + "/stats_" + rank_tag(config.backend, rm) + ".json", stats);
                }
            }
        }
    });
}

void cmd_report(const ExperimentConfig& config, const CommandOptions& options) {
    run_stage(config, "report", [&](StageWriter& out) {
        const std::vector<int> ranks =
            config.backend == Backend::Statevector ? std::vector<int>{0} : config.norm_ranks;
        Json energy_series = Json::array();
        Json weight_series = Json::array();
        std::ostringstream summary, scut;
        summary << std::setprecision(17);
        scut << std::setprecision(17);
        summary << "target,p,R_M,N_s,mean_energy,min_energy,ground_energy,mean_omega,var_omega,var_omega_tilde,aborts\n";
        scut << "target,p,step,x,s_cut\n";
        for (int p : config.p_list) {
            for (int rm : ranks) {
                const std::string tag = rank_tag(config.backend, rm);
                std::vector<int> pooled;
                for (std::size_t k = 0; k < config.target_seeds.size(); ++k) {
                    const std::string label = "target_" + two_digits(k) + "/p" + std::to_string(p) + "/" + tag;
                    if (!selected(options, label)) continue;
                    const std::string dir = run_dir(k, p);
                    std::stringstream csv(read_text(config, dir + "/samples_" + tag + ".csv"));
                    std::string line;
                    std::getline(csv, line);
                    std::vector<SampleRecord> records;
                    while (std::getline(csv, line)) {
                        if (line.empty()) continue;
                        const auto cells = split_csv_line(line);
                        if (cells.size() != 7) throw StageError(dir + ": malformed samples row");
                        SampleRecord r;
                        r.index = std::stoull(cells[0]);
                        r.energy = std::stoi(cells[2]);
                        r.omega = std::stod(cells[5]);
                        records.push_back(std::move(r));
                    }
                    const Json stats = read_input(config, dir + "/stats_" + tag + ".json");
                    const WeightDiagnostics wd = weight_diagnostics(records, config.histogram_bins);
                    std::vector<int> energies;
                    double mean_e = 0;
                    int min_e = records.empty() ? 0 : records.front().energy;
                    for (const auto& r : records) {
                        energies.push_back(r.energy);
                        mean_e += r.energy;
                        min_e = std::min(min_e, r.energy);
                    }
                    if (!records.empty()) mean_e /= static_cast<double>(records.size());
                    pooled.insert(pooled.end(), energies.begin(), energies.end());
                    std::string ground = "";
                    if (fs::exists(config.output_dir / truth_file(k))) {
                        ground = std::to_string(read_input(config, truth_file(k)).at("energy").get<int>());
                    }
                    summary << k << ',' << p << ',' << (config.backend == Backend::Statevector ? std::string("") : std::to_string(rm))
                            << ',' << records.size() << ',' << mean_e << ',' << min_e << ',' << ground << ','
                            << stats.at("mean_omega").get<double>() << ',' << stats.at("var_omega").get<double>() << ','
                            << stats.at("var_omega_tilde").get<double>() << ',' << stats.at("aborts").get<std::size_t>()
                            << '\n';
                    energy_series.push_back(Json{{"target", k},
                                                 {"p", p},
                                                 {"R_M", rm},
                                                 {"source", dir + "/samples_" + tag + ".csv"},
                                                 {"histogram", histogram_to_json(integer_histogram(energies))}});
                    weight_series.push_back(Json{{"target", k},
                                                 {"p", p},
                                                 {"R_M", rm},
                                                 {"source", dir + "/samples_" + tag + ".csv"},
                                                 {"omega", histogram_to_json(wd.omega)},
                                                 {"omega_tilde", histogram_to_json(wd.omega_tilde)}});
                }
                if (!pooled.empty()) {
                    energy_series.push_back(Json{{"target", "all"},
                                                 {"p", p},
                                                 {"R_M", rm},
                                                 {"histogram", histogram_to_json(integer_histogram(pooled))}});
                }
            }
            if (config.backend == Backend::Tn) {
                for (std::size_t k = 0; k < config.target_seeds.size(); ++k) {
                    if (!selected(options, "target_" + two_digits(k) + "/p" + std::to_string(p))) continue;
                    std::stringstream diag(read_text(config, run_dir(k, p) + "/diagnostics.csv"));
                    std::string line;
                    std::getline(diag, line);
                    while (std::getline(diag, line)) {
                        const auto cells = split_csv_line(line);
                        if (cells.size() != 5) continue;
                        scut << k << ',' << p << ',' << cells[0] << ',' << cells[1] << ',' << cells[4] << '\n';
                    }
                }
            }
        }
        out.json("report/energy_histograms.json", Json{{"series", energy_series}});
        out.json("report/weights.json", Json{{"series", weight_series}});
        out.text("report/summary.csv", summary.str());
        if (config.backend == Backend::Tn) out.text("report/s_cut.csv", scut.str());
    });
}

int run_command(const std::string& command, const ExperimentConfig& config, const CommandOptions& options) {
    try {
        if (command == "gen") {
            cmd_gen(config, options);
        } else if (command == "train") {
            cmd_train(config, options);
        } else if (command == "run") {
            cmd_run(config, options);
        } else if (command == "report") {
            cmd_report(config, options);
        } else if (command == "all") {
            cmd_gen(config, options);
            if (config.schedule == "trained") cmd_train(config, options);
            cmd_run(config, options);
            cmd_report(config, options);
        } else {
            throw ConfigError("unknown command '" + command + "'");
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "stage failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

std::string version_string() { return "qaoatn 0.1.0"; }

}  // namespace qaoatn
