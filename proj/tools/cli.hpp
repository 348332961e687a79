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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "aiso/experiment.hpp"

namespace aiso::cli {

/// Unknown keys are rejected so typos do not silently fall back to defaults.
ExperimentConfig config_from_json(const nlohmann::json &j);
nlohmann::json config_to_json(const ExperimentConfig &c);
ExperimentConfig load_config(const std::string &path);

/// <dir>/shadows_i<k>.txt
std::string store_path(const std::string &dir, int instance);

struct Stats {
    double mean = 0.0;
    double std = 0.0;  ///< population (ddof = 0)
    double median = 0.0;
};
Stats summarize(std::vector<double> values);

struct BudgetRun {
    Method method = Method::Aiso;
    int64_t budget = 0;
    std::vector<InstanceRun> instances;
};

struct RunReport {
    ExperimentConfig config;
    std::vector<BudgetRun> runs;
    double seconds = 0.0;
};

/// One BudgetRun per configured budget. With shadow_dir set, AISO reads
/// shadows_i<k>.txt instead of acquiring and its budget is the store size.
RunReport run_experiment(const ExperimentConfig &config, const std::string &shadow_dir = "", std::ostream *log = nullptr);

/// method,budget,instance,index,cost,copies,estimate
void write_curves_csv(std::ostream &out, const RunReport &report);
/// method,budget,instance,interval,start,min_cost
void write_intervals_csv(std::ostream &out, const RunReport &report);
/// One row per budget: mean/std/median over instances.
void write_summary_csv(std::ostream &out, const RunReport &report);
nlohmann::json report_json(const RunReport &report);

/// Writes <prefix>_curves.csv, _intervals.csv, _summary.csv and .json.
void write_run_outputs(const std::string &prefix, const RunReport &report);

struct SweepRow {
    Method method = Method::Aiso;
    int64_t budget = 0;
    int instances = 0;
    Stats lowest;
    Stats final_cost;
    double copies = 0.0;  ///< mean per instance
};
/// Every budget under each listed method.
std::vector<SweepRow> sweep_budgets(const ExperimentConfig &config, const std::vector<Method> &methods,
                                    std::ostream *log = nullptr);
/// method,budget,instances,mean_lowest_cost,std_lowest_cost,mean_final_cost,std_final_cost,copies
void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);

}  // namespace aiso::cli
