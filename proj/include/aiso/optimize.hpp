// Copyright 2026 The AISO Workbench Authors
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
#include <vector>

#include <Eigen/Dense>

#include "aiso/common.hpp"

namespace aiso {

using Objective = std::function<double(const Eigen::VectorXd &)>;
/// Reports cumulative copies after each evaluation; may be empty.
using CopiesProbe = std::function<int64_t()>;

struct EvalRecord {
    int64_t index = 0;
    uint64_t theta_hash = 0;
    double cost = 0.0;
    int64_t copies = 0;
};

struct OptTrace {
    std::vector<EvalRecord> records;
    bool budget_exhausted = false;

    int64_t evaluations() const { return static_cast<int64_t>(records.size()); }
};

/// FNV-1a over the raw bytes of theta.
uint64_t hash_params(const Eigen::VectorXd &theta);

struct OptResult {
    Eigen::VectorXd theta;
    OptTrace trace;
};

struct SpsaConfig {
    int64_t iterations = 5000;
    double a_scale = 1.0;
    double c_scale = 1.0;
    /// a_r = a_scale * r^-a_exponent, c_r = c_scale * r^-c_exponent.
    double a_exponent = 0.4;
    double c_exponent = 0.4;
    uint64_t seed = 0;
};

double spsa_gain_a(const SpsaConfig &config, int64_t r);
double spsa_gain_c(const SpsaConfig &config, int64_t r);

/// Two evaluations per iteration with Rademacher perturbations. BudgetExhausted from
/// the objective stops the run; the result keeps the last parameters and marks the trace.
OptResult spsa_minimize(const Objective &f, Eigen::VectorXd theta0, const SpsaConfig &config,
                        const CopiesProbe &copies = {});

struct PowellConfig {
    int64_t max_evaluations = 1000;
    /// Stop once an iteration improves f by less than this (relative).
    double ftol = 1e-10;
    /// Brent tolerance (relative in the line coordinate).
    double line_tol = 1e-8;
    /// Reset the direction set to the coordinate basis every `reset_period` iterations (0 = dimension).
    int reset_period = 0;
    /// Keep going from the best point with a fresh basis after ftol convergence.
    bool restart_on_convergence = false;
};

/// Powell's conjugate-direction method with bracketing and Brent line searches.
/// Never calls `f` more than max_evaluations times.
OptResult powell_minimize(const Objective &f, Eigen::VectorXd theta0, const PowellConfig &config,
                          const CopiesProbe &copies = {});

/// Minimum of each consecutive block of `interval` costs (last block may be short).
std::vector<double> interval_min_reduce(const OptTrace &trace, int64_t interval);

}  // namespace aiso
