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

#include <cmath>
#include <sstream>

#include "qaoatn/evolve.hpp"
#include "qaoatn/statevector.hpp"

using namespace qaoatn;

TEST(Evolve, EmptyScheduleSingleRecord) {
    const auto lat = Lattice::square(2, 2);
    const auto res = evolve(TNState::init_plus(lat, 4), random_instance(lat, 1), Schedule{});
    ASSERT_EQ(res.steps.size(), 1u);
    EXPECT_EQ(res.steps[0].step, 0);
    EXPECT_EQ(res.steps[0].s_cut, 0.0);
}

TEST(Evolve, ZeroAnglesStayProduct) {
    const auto lat = Lattice::heavy_hex_device("guadalupe");
    const Schedule zero{std::vector<double>(4, 0.0), std::vector<double>(4, 0.0)};
    const auto res = evolve(TNState::init_plus(lat, 16), random_instance(lat, 2), zero);
    ASSERT_EQ(res.steps.size(), 5u);
    for (const auto& s : res.steps) {
        EXPECT_NEAR(s.s_cut, 0.0, 1e-12);
        EXPECT_EQ(s.max_bond_dim, 1);
        EXPECT_EQ(s.truncation_weight, 0.0);
    }
}

TEST(Evolve, UncappedMatchesStatevector) {
    const auto lat = Lattice::heavy_hex_device("guadalupe");
    const auto inst = random_instance(lat, 6);
    const auto sched = Schedule{{0.4, 0.7}, {0.5, 0.2}};
    const auto res = evolve(TNState::init_plus(lat, kUncapped), inst, sched);
    DenseState d = plus_state(16);
    apply_qaoa(d, inst, sched);
    const auto psi = res.state.to_dense();
    double diff = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) diff = std::max(diff, std::abs(psi[i] - d.amplitudes[i]));
    EXPECT_LT(diff, 1e-10);
    EXPECT_EQ(res.total_truncation_weight, 0.0);
}

TEST(Evolve, TruncationShrinksWithBondDimension) {
    const auto lat = Lattice::square(3, 3);
    const auto inst = random_instance(lat, 4);
    const Schedule sched{{0.5, 0.6, 0.7}, {0.6, 0.5, 0.4}};
    DenseState d = plus_state(9);
    apply_qaoa(d, inst, sched);
    double prev_err = 10;
    for (int chi : {1, 2, 4, 8, 32}) {
        const auto res = evolve(TNState::init_plus(lat, chi), inst, sched);
        const auto psi = res.state.to_dense();
        cplx overlap = 0;
        double nrm = 0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            overlap += std::conj(d.amplitudes[i]) * psi[i];
            nrm += std::norm(psi[i]);
        }
        const double infidelity = 1 - std::norm(overlap) / nrm;
        EXPECT_LE(infidelity, prev_err + 1e-9) << chi;
        prev_err = infidelity;
        for (const auto& s : res.steps) EXPECT_LE(s.max_bond_dim, chi);
    }
    EXPECT_LT(prev_err, 1e-10);
}

TEST(Evolve, EntropyBoundedByBondDimension) {
    const auto lat = Lattice::heavy_hex_device("guadalupe");
    const auto inst = random_instance(lat, 8);
    for (int chi : {2, 4}) {
        EvolveOptions opt;
        const auto res = evolve(TNState::init_plus(lat, chi), inst, baseline_p5(), opt);
        const double bound = bisection_cut(lat).size() * std::log2(chi);
        for (const auto& s : res.steps) EXPECT_LE(s.s_cut, bound + 1e-9);
    }
}

TEST(Evolve, DiagnosticsCsv) {
    const auto lat = Lattice::square(2, 2);
    const auto res = evolve(TNState::init_plus(lat, 4), random_instance(lat, 1), Schedule{{0.1, 0.2}, {0.3, 0.4}});
    std::ostringstream out;
    write_diagnostics_csv(out, res.steps);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "step,x,truncation_weight,norm_estimate,s_cut");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 3);
    EXPECT_DOUBLE_EQ(res.steps[1].x, 0.5);
}

TEST(Evolve, TnBackendEnergy) {
    const auto lat = Lattice::square(2, 3);
    const auto inst = random_instance(lat, 3);
    const Schedule sched{{0.3}, {0.6}};
    TnBackend tn(kUncapped);
    StatevectorBackend sv;
    EXPECT_NEAR(tn.energy(inst, sched), sv.energy(inst, sched), 1e-4);
    EXPECT_EQ(tn.name(), "tn");
}
