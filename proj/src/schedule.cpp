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
#include "qaoatn/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include <Eigen/Dense>
#include <nlopt.h>

namespace qaoatn {

void Schedule::validate() const {
    if (gammas.size() != betas.size()) throw ScheduleError("gammas and betas differ in length");
    if (gammas.empty()) throw ScheduleError("schedule needs p >= 1");
    for (std::size_t j = 0; j < gammas.size(); ++j) {
        if (!std::isfinite(gammas[j]) || !std::isfinite(betas[j])) throw ScheduleError("non-finite angle");
    }
}

double basis_value(int c, double x) {
    if (c < 1) throw ScheduleError("basis index starts at 1");
    if (!(x >= 0.0 && x <= 1.0)) throw ScheduleError("basis argument outside [0, 1]");
    const double t = 2.0 * x - 1.0;
    double prev = 1.0, cur = t;
    if (c == 1) return prev;
    for (int k = 2; k < c; ++k) {
        const double next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Schedule schedule_from_coeffs(const InterpCoeffs& coeffs, int p) {
    if (p < 1) throw ScheduleError("p must be >= 1");
    if (coeffs.u.size() != coeffs.v.size()) throw ScheduleError("u and v differ in length");
    Schedule s;
    for (int j = 1; j <= p; ++j) {
        const double x = static_cast<double>(j) / p;
        double g = 0, b = 0;
        for (int c = 1; c <= coeffs.num_basis(); ++c) {
            const double f = basis_value(c, x);
            g += coeffs.u[c - 1] * f;
            b += coeffs.v[c - 1] * f;
        }
        s.gammas.push_back(g);
        s.betas.push_back(b);
    }
    return s;
}

Schedule median_transfer(const std::vector<Schedule>& schedules) {
    if (schedules.empty()) throw ScheduleError("median of zero schedules");
    const int p = schedules.front().p();
    for (const auto& s : schedules) {
        if (s.p() != p || static_cast<int>(s.betas.size()) != p) throw ScheduleError("schedules differ in p");
    }
    auto median = [](std::vector<double> xs) {
        std::sort(xs.begin(), xs.end());
        const std::size_t k = xs.size();
        return k % 2 ? xs[k / 2] : 0.5 * (xs[k / 2 - 1] + xs[k / 2]);
    };
    Schedule out;
    for (int j = 0; j < p; ++j) {
        std::vector<double> g, b;
        for (const auto& s : schedules) {
            g.push_back(s.gammas[j]);
            b.push_back(s.betas[j]);
        }
        out.gammas.push_back(median(g));
        out.betas.push_back(median(b));
    }
    return out;
}

Schedule baseline_p5() {
    return {{6.16555, 6.08373, 6.01445, 5.9616, 5.93736}, {0.53822, 0.44776, 0.32923, 0.23056, 0.12587}};
}

InterpCoeffs linear_ramp_init(int num_basis) {
    if (num_basis < 1) throw ScheduleError("num_basis must be >= 1");
    const Schedule base = baseline_p5();
    const int p = base.p();
    const int k = std::min(num_basis, 2);
    Eigen::MatrixXd a(p, k);
    Eigen::VectorXd g(p), b(p);
    for (int j = 1; j <= p; ++j) {
        for (int c = 1; c <= k; ++c) a(j - 1, c - 1) = basis_value(c, static_cast<double>(j) / p);
        g(j - 1) = base.gammas[j - 1];
        b(j - 1) = base.betas[j - 1];
    }
    const auto qr = a.colPivHouseholderQr();
    const Eigen::VectorXd ug = qr.solve(g), vb = qr.solve(b);
    InterpCoeffs init{std::vector<double>(num_basis, 0.0), std::vector<double>(num_basis, 0.0)};
    for (int c = 0; c < k; ++c) {
        init.u[c] = ug(c);
        init.v[c] = vb(c);
    }
    return init;
}

namespace {

struct Objective {
    const std::function<double(const std::vector<double>&)>* f;
    MinimizeResult* result;
    std::exception_ptr error;
    nlopt_opt opt;
};

double nlopt_trampoline(unsigned n, const double* x, double*, void* data) {
    auto* obj = static_cast<Objective*>(data);
    std::vector<double> xv(x, x + n);
    double value;
    try {
        value = (*obj->f)(xv);
    } catch (...) {
        obj->error = std::current_exception();
        nlopt_force_stop(obj->opt);
        return std::numeric_limits<double>::infinity();
    }
    auto& r = *obj->result;
    ++r.evaluations;
    if (std::isfinite(value) && (r.best_trace.empty() || value < r.f)) {
        r.f = value;
        r.x = xv;
    }
    r.best_trace.push_back(r.f);
    return std::isfinite(value) ? value : std::numeric_limits<double>::max();
}

}  // namespace

MinimizeResult minimize_bobyqa(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                               double bound, double initial_radius, double final_radius, int max_evaluations) {
    MinimizeResult result;
    result.x = x0;
    result.f = std::numeric_limits<double>::infinity();
    if (max_evaluations <= 0) return result;
    const unsigned n = static_cast<unsigned>(x0.size());
    for (auto& xi : x0) xi = std::clamp(xi, -bound, bound);
    nlopt_opt opt = nlopt_create(NLOPT_LN_BOBYQA, n);
    if (!opt) throw std::runtime_error("nlopt_create failed");
    std::vector<double> lo(n, -bound), hi(n, bound), step(n, initial_radius), xtol(n, final_radius);
    nlopt_set_lower_bounds(opt, lo.data());
    nlopt_set_upper_bounds(opt, hi.data());
    nlopt_set_initial_step(opt, step.data());
    nlopt_set_xtol_abs(opt, xtol.data());
    nlopt_set_maxeval(opt, max_evaluations);
    Objective obj{&f, &result, nullptr, opt};
    nlopt_set_min_objective(opt, nlopt_trampoline, &obj);
    double fmin = 0;
    const nlopt_result status = nlopt_optimize(opt, x0.data(), &fmin);
    nlopt_destroy(opt);
    if (obj.error) std::rethrow_exception(obj.error);
    if (status < 0 && status != NLOPT_ROUNDOFF_LIMITED && result.evaluations == 0) {
        throw std::runtime_error("BOBYQA failed with NLopt status " + std::to_string(status));
    }
    return result;
}

std::vector<TrainingResult> train(const std::vector<SpinGlassInstance>& instances, int p, int num_basis,
                                  EnergyBackend& backend, const OptimizerConfig& config) {
    if (p < 1) throw ScheduleError("p must be >= 1");
    InterpCoeffs init = config.initial.u.empty() ? linear_ramp_init(num_basis) : config.initial;
    if (init.num_basis() != num_basis || static_cast<int>(init.v.size()) != num_basis) {
        throw ScheduleError("initial coefficients do not have num_basis entries");
    }
    auto unpack = [num_basis](const std::vector<double>& x) {
        InterpCoeffs c;
        c.u.assign(x.begin(), x.begin() + num_basis);
        c.v.assign(x.begin() + num_basis, x.end());
        return c;
    };
    std::vector<double> x0 = init.u;
    x0.insert(x0.end(), init.v.begin(), init.v.end());

    std::vector<TrainingResult> results;
    for (std::size_t k = 0; k < instances.size(); ++k) {
        const auto& inst = instances[k];
        TrainingResult r;
        try {
            if (config.max_evaluations <= 0) {
                r.coeffs = init;
                r.schedule = schedule_from_coeffs(init, p);
                results.push_back(std::move(r));
                continue;
            }
            std::function<double(const std::vector<double>&)> f = [&](const std::vector<double>& x) {
                return backend.energy(inst, schedule_from_coeffs(unpack(x), p));
            };
            const MinimizeResult m = minimize_bobyqa(f, x0, config.bound, config.initial_radius, config.final_radius,
                                                     config.max_evaluations);
            r.coeffs = unpack(m.x);
            r.schedule = schedule_from_coeffs(r.coeffs, p);
            r.best_energy = m.f;
            r.evaluations = m.evaluations;
            r.initial_energy = m.best_trace.empty() ? m.f : m.best_trace.front();
            for (int it = 0; it < static_cast<int>(m.best_trace.size()); ++it) {
                r.log.push_back({inst.seed(), it, m.best_trace[it], it + 1});
            }
        } catch (const TrainingError&) {
            throw;
        } catch (const std::exception& e) {
            throw TrainingError(k, e.what());
        }
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace qaoatn
