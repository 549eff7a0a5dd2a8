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

#include <iosfwd>
#include <vector>

#include "qaoatn/circuit.hpp"
#include "qaoatn/instance.hpp"
#include "qaoatn/schedule.hpp"
#include "qaoatn/tn_state.hpp"

namespace qaoatn {

enum class BpRefresh {
    PerBlock,  // re-converge after each cost layer and each mixer layer
    PerGate,   // re-converge after every two-qubit gate
};

struct EvolveOptions {
    BpOptions bp;
    BpRefresh refresh = BpRefresh::PerBlock;
    /// Extra BP attempts (with damping 0.5 and doubled iterations) when a
    /// refresh does not converge.
    int bp_retries = 1;
    /// Edges of the entanglement cut; empty means bisection_cut(lattice).
    std::vector<int> cut;
};

/// One record per completed layer j (and j = 0 for the initial state).
struct StepRecord {
    int step = 0;
    double x = 0.0;                  // j / p
    double truncation_weight = 0.0;  // sum of discarded weights in the layer
    double norm_estimate = 1.0;      // BP estimate of <psi|psi>
    double s_cut = 0.0;
    int max_bond_dim = 1;
    bool bp_converged = true;
};

struct EvolveResult {
    TNState state;
    BPCache bp;
    std::vector<StepRecord> steps;
    double total_truncation_weight = 0.0;
    double total_pruned_weight = 0.0;
};

/// Runs compile_circuit(instance, schedule) on `initial` gate by gate. An
/// empty schedule returns the initial state with a single record.
EvolveResult evolve(TNState initial, const SpinGlassInstance& instance, const Schedule& schedule,
                    const EvolveOptions& options = {});

/// CSV with header step,x,truncation_weight,norm_estimate,s_cut.
void write_diagnostics_csv(std::ostream& out, const std::vector<StepRecord>& steps);

/// Training backend that evolves |+> with the tensor network and returns the
/// real part of the BP energy, warning when the imaginary part exceeds 1e-8.
class TnBackend : public EnergyBackend {
  public:
    TnBackend(int chi_max, EvolveOptions options = {}) : chi_max_(chi_max), options_(std::move(options)) {}
    double energy(const SpinGlassInstance& instance, const Schedule& schedule) override;
    std::string name() const override { return "tn"; }

  private:
    int chi_max_;
    EvolveOptions options_;
};

}  // namespace qaoatn
