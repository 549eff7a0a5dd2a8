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


#include "qaoatn/serialization.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace qaoatn {

namespace {

template <class T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SerializationError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw SerializationError(std::string("bad field '") + key + "': " + e.what());
    }
}

std::vector<std::vector<int>> int_rows(const Json& j, const char* key, std::size_t width) {
    auto rows = field<std::vector<std::vector<int>>>(j, key);
    for (const auto& r : rows) {
        if (r.size() != width) throw SerializationError(std::string("rows of '") + key + "' need " + std::to_string(width) + " entries");
    }
    return rows;
}

}  // namespace

Json lattice_to_json(const Lattice& lattice) {
    Json edges = Json::array(), coords = Json::array();
    for (const auto& e : lattice.edges()) edges.push_back({e.a, e.b});
    for (const auto& c : lattice.coords()) coords.push_back({c.x, c.y});
    return Json{{"kind", lattice.kind()}, {"n", lattice.num_vertices()}, {"edges", edges}, {"coords", coords}};
}

Lattice lattice_from_json(const Json& j) {
    const auto kind = field<std::string>(j, "kind");
    const int n = field<int>(j, "n");
    std::vector<Edge> edges;
    for (const auto& r : int_rows(j, "edges", 2)) edges.push_back({std::min(r[0], r[1]), std::max(r[0], r[1])});
    std::vector<Coord> coords;
    if (j.contains("coords")) {
        for (const auto& r : int_rows(j, "coords", 2)) coords.push_back({r[0], r[1]});
    }
    if (kind.rfind("custom_", 0) == 0) {
        const auto colon = kind.find(':');
        if (colon == std::string::npos) throw SerializationError("malformed custom lattice kind: " + kind);
        const auto fam = kind.substr(7, colon - 7);
        LatticeFamily family;
        if (fam == "square") {
            family = LatticeFamily::Square;
        } else if (fam == "heavy_hex") {
            family = LatticeFamily::HeavyHex;
        } else {
            throw SerializationError("unknown lattice family in kind: " + kind);
        }
        return Lattice::custom(family, kind.substr(colon + 1), n, std::move(edges), std::move(coords));
    }
    Lattice lat = Lattice::from_kind(kind);
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (lat.num_vertices() != n || lat.edges() != sorted) {
        throw SerializationError("lattice data does not match the built-in '" + kind + "'");
    }
    return lat;
}

Json instance_to_json(const SpinGlassInstance& instance) {
    Json lin = Json::array(), quad = Json::array(), cub = Json::array();
    for (const auto& t : instance.linear()) lin.push_back({t.v, t.d});
    for (const auto& t : instance.quadratic()) quad.push_back({t.i, t.j, t.d});
    for (const auto& t : instance.cubic()) cub.push_back({t.l, t.n1, t.n2, t.d});
    return Json{{"lattice", lattice_to_json(instance.lattice())},
                {"seed", instance.seed()},
                {"linear", lin},
                {"quadratic", quad},
                {"cubic", cub}};
}

SpinGlassInstance instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("lattice")) throw SerializationError("missing field 'lattice'");
    Lattice lat = lattice_from_json(j.at("lattice"));
    std::vector<LinearTerm> lin;
    std::vector<QuadraticTerm> quad;
    std::vector<CubicTerm> cub;
    for (const auto& r : int_rows(j, "linear", 2)) lin.push_back({r[0], r[1]});
    for (const auto& r : int_rows(j, "quadratic", 3)) quad.push_back({r[0], r[1], r[2]});
    for (const auto& r : int_rows(j, "cubic", 4)) cub.push_back({r[0], r[1], r[2], r[3]});
    return SpinGlassInstance(std::move(lat), field<std::uint64_t>(j, "seed"), std::move(lin), std::move(quad),
                             std::move(cub));
}

Json ground_truth_to_json(const GroundTruth& truth, int num_qubits) {
    Json reps = Json::array();
    for (auto bits : truth.representatives) {
        std::string s;
        for (int v = 0; v < num_qubits; ++v) s.push_back(((bits >> v) & 1u) ? '1' : '0');
        reps.push_back(s);
    }
    return Json{{"energy", truth.energy}, {"count", truth.count}, {"representatives", reps}};
}

Json schedule_to_json(const Schedule& schedule) {
    return Json{{"p", schedule.p()}, {"gammas", schedule.gammas}, {"betas", schedule.betas}};
}

Schedule schedule_from_json(const Json& j) {
    Schedule s{field<std::vector<double>>(j, "gammas"), field<std::vector<double>>(j, "betas")};
    if (j.contains("p") && field<int>(j, "p") != s.p()) throw SerializationError("schedule 'p' disagrees with its angle lists");
    try {
        s.validate();
    } catch (const ScheduleError& e) {
        throw SerializationError(e.what());
    }
    return s;
}

Json coeffs_to_json(const InterpCoeffs& coeffs) {
    return Json{{"C", coeffs.num_basis()}, {"u", coeffs.u}, {"v", coeffs.v}};
}

InterpCoeffs coeffs_from_json(const Json& j) {
    InterpCoeffs c{field<std::vector<double>>(j, "u"), field<std::vector<double>>(j, "v")};
    if (c.u.size() != c.v.size() || c.u.empty()) throw SerializationError("u and v need the same nonzero length");
    if (j.contains("C") && field<int>(j, "C") != c.num_basis()) throw SerializationError("'C' disagrees with u and v");
    return c;
}

Json batch_stats_to_json(const BatchStats& stats) {
    return Json{{"N_s", stats.num_samples},
                {"mean_omega", stats.mean_omega},
                {"var_omega", stats.var_omega},
                {"var_omega_tilde", stats.var_omega_tilde},
                {"aborts", stats.aborts}};
}

Json histogram_to_json(const Histogram& h) { return Json{{"edges", h.edges}, {"counts", h.counts}}; }

void write_training_log_csv(std::ostream& out, const std::vector<TrainingLogRow>& rows) {
    out << "instance_seed,iteration,best_energy,evaluations\n" << std::setprecision(17);
    for (const auto& r : rows) {
        out << r.instance_seed << ',' << r.iteration << ',' << r.best_energy << ',' << r.evaluations << '\n';
    }
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SerializationError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SerializationError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SerializationError("cannot write " + path.string());
    out << text;
    if (!out) throw SerializationError("write failed for " + path.string());
}

}  // namespace qaoatn
