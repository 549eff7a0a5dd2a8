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

#include "qaoatn/evolve.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qaoatn/log.hpp"

namespace qaoatn {

namespace {

BPCache refresh(const TNState& state, const BPCache& warm, const EvolveOptions& options, const char* where) {
    BPCache bp = run_bp(state, options.bp, &warm);
    BpOptions retry = options.bp;
    for (int attempt = 0; attempt < options.bp_retries && !bp.converged; ++attempt) {
        retry.damping = 0.5;
        retry.max_iters *= 2;
        bp = run_bp(state, retry, &bp);
    }
    if (!bp.converged) {
        std::ostringstream os;
        os << "BP did not converge " << where << " (delta " << bp.final_delta << ")";
        warn(os.str());
    }
    return bp;
}

StepRecord make_record(const TNState& state, const BPCache& bp, const std::vector<int>& cut, int step, int p,
                       double truncation) {
    StepRecord r;
    r.step = step;
    r.x = p > 0 ? static_cast<double>(step) / p : 0.0;
    r.truncation_weight = truncation;
    r.norm_estimate = std::exp(bp_log_norm(state, bp));
    r.s_cut = cut_entropy(state.lattice(), bp, cut).s_cut;
    r.max_bond_dim = state.max_bond_dim();
    r.bp_converged = bp.converged;
    return r;
}

}  // namespace

EvolveResult evolve(TNState initial, const SpinGlassInstance& instance, const Schedule& schedule,
                    const EvolveOptions& options) {
    if (initial.num_sites() != instance.num_vertices()) {
        throw TensorNetworkError("state and instance sizes differ");
    }
    const Lattice& lat = instance.lattice();
    const std::vector<int> cut = options.cut.empty() ? bisection_cut(lat) : options.cut;
    const Circuit circuit = schedule.p() > 0 ? compile_circuit(instance, schedule) : Circuit{};
    const int p = schedule.p();

    EvolveResult res{std::move(initial), {}, {}, 0.0, 0.0};
    res.bp = refresh(res.state, initial_messages(res.state), options, "on the initial state");
    res.steps.push_back(make_record(res.state, res.bp, cut, 0, p, 0.0));

    double layer_truncation = 0;
    for (const auto& block : circuit.blocks) {
        for (const auto& gate : block.gates) {
            const GateReport rep = apply_gate(res.state, res.bp, gate);
            layer_truncation += rep.discarded_weight;
            res.total_truncation_weight += rep.discarded_weight;
            res.total_pruned_weight += rep.pruned_weight;
            if (options.refresh == BpRefresh::PerGate && gate.sites.size() == 2) {
                res.bp = refresh(res.state, res.bp, options, "after a gate");
            }
        }
        res.bp = refresh(res.state, res.bp, options,
                         block.kind == BlockKind::Cost ? "after a cost layer" : "after a mixer layer");
        if (block.kind == BlockKind::Mixer) {
            res.steps.push_back(make_record(res.state, res.bp, cut, block.layer, p, layer_truncation));
            layer_truncation = 0;
        }
    }
    return res;
}

void write_diagnostics_csv(std::ostream& out, const std::vector<StepRecord>& steps) {
    out << "step,x,truncation_weight,norm_estimate,s_cut\n";
    out << std::setprecision(17);
    for (const auto& r : steps) {
        out << r.step << ',' << r.x << ',' << r.truncation_weight << ',' << r.norm_estimate << ',' << r.s_cut << '\n';
    }
}

double TnBackend::energy(const SpinGlassInstance& instance, const Schedule& schedule) {
    const EvolveResult r = evolve(TNState::init_plus(instance.lattice(), chi_max_), instance, schedule, options_);
    const cplx e = bp_energy_complex(r.state, r.bp, instance);
    if (std::abs(e.imag()) > 1e-8) {
        std::ostringstream os;
        os << "BP energy has imaginary residue " << e.imag();
        warn(os.str());
    }
    return e.real();
}

}  // namespace qaoatn
