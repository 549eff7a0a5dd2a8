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
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaoatn/instance.hpp"

namespace qaoatn {

class ScheduleError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Layer angles; layer j applies exp(-i gamma_j H_C) then exp(-i beta_j H_X).
struct Schedule {
    std::vector<double> gammas;
    std::vector<double> betas;

    int p() const { return static_cast<int>(gammas.size()); }
    /// Throws unless both lists have the same length >= 1 and finite entries.
    void validate() const;
};

/// Coefficients of gamma(x) = sum_c u_c f_c(x) and beta(x) = sum_c v_c f_c(x).
struct InterpCoeffs {
    std::vector<double> u;
    std::vector<double> v;

    int num_basis() const { return static_cast<int>(u.size()); }
};

/// f_c(x) = T_{c-1}(2x - 1), the shifted Chebyshev polynomial of the first
/// kind without weight normalization. c is 1-based.
double basis_value(int c, double x);

/// gamma_j = gamma(j / p), beta_j = beta(j / p) for j = 1..p.
Schedule schedule_from_coeffs(const InterpCoeffs& coeffs, int p);

/// Per-layer median of gammas and betas, each taken independently; an even
/// count averages the two central values.
Schedule median_transfer(const std::vector<Schedule>& schedules);

/// The p = 5 reference schedule found by global search.
Schedule baseline_p5();

/// Least-squares fit of baseline_p5 onto f_1 and f_2 (a straight line in
/// j / p); the remaining coefficients are zero.
InterpCoeffs linear_ramp_init(int num_basis);

/// Anything that can evaluate <H_C> for an instance and schedule.
class EnergyBackend {
  public:
    virtual ~EnergyBackend() = default;
    virtual double energy(const SpinGlassInstance& instance, const Schedule& schedule) = 0;
    virtual std::string name() const = 0;
};

/// Wraps a callable, for tests and synthetic objectives.
class FunctionBackend : public EnergyBackend {
  public:
    using Fn = std::function<double(const SpinGlassInstance&, const Schedule&)>;
    explicit FunctionBackend(Fn fn) : fn_(std::move(fn)) {}
    double energy(const SpinGlassInstance& instance, const Schedule& schedule) override {
        return fn_(instance, schedule);
    }
    std::string name() const override { return "function"; }

  private:
    Fn fn_;
};

struct OptimizerConfig {
    /// Objective evaluations per instance; 0 returns the initial coefficients.
    int max_evaluations = 400;
    /// Box |u_c|, |v_c| <= bound.
    double bound = 6.283185307179586;
    double initial_radius = 0.3;
    /// Final trust-region radius (absolute step tolerance).
    double final_radius = 1e-7;
    /// Starting point; empty means linear_ramp_init.
    InterpCoeffs initial;
};

struct TrainingLogRow {
    std::uint64_t instance_seed = 0;
    int iteration = 0;  // 0-based evaluation number
    double best_energy = 0;
    int evaluations = 0;
};

struct TrainingResult {
    InterpCoeffs coeffs;
    Schedule schedule;
    double initial_energy = 0;
    double best_energy = 0;
    int evaluations = 0;
    std::vector<TrainingLogRow> log;
};

class TrainingError : public std::runtime_error {
  public:
    TrainingError(std::size_t instance_index, const std::string& what)
        : std::runtime_error("training instance " + std::to_string(instance_index) + ": " + what),
          instance_index_(instance_index) {}
    std::size_t instance_index() const { return instance_index_; }

  private:
    std::size_t instance_index_;
};

/// Minimizes <H_C>(schedule_from_coeffs(u, v, p)) per instance with NLopt's
/// BOBYQA inside the box. The best point seen is returned, so the logged
/// best energy never increases.
std::vector<TrainingResult> train(const std::vector<SpinGlassInstance>& instances, int p, int num_basis,
                                  EnergyBackend& backend, const OptimizerConfig& config = {});

/// Minimizes a generic bound-constrained objective with the same optimizer;
/// exposed for testing the optimizer in isolation.
struct MinimizeResult {
    std::vector<double> x;
    double f = 0;
    int evaluations = 0;
    std::vector<double> best_trace;  // best-so-far after every evaluation
};
MinimizeResult minimize_bobyqa(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                               double bound, double initial_radius, double final_radius, int max_evaluations);

}  // namespace qaoatn
