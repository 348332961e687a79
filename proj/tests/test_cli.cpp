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


#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

using namespace aiso;
using nlohmann::json;

namespace {

ExperimentConfig tiny() {
    ExperimentConfig c;
    c.n = 4;
    c.layers = 2;
    c.instances = 2;
    c.spsa_iterations = 40;
    c.budgets = {1000};
    c.interval = 10;
    return c;
}

std::string curves(const cli::RunReport &r) {
    std::ostringstream os;
    cli::write_curves_csv(os, r);
    return os.str();
}

}  // namespace

TEST(config_json, round_trip_and_errors) {
    ExperimentConfig c = tiny();
    c.target_family = AnsatzFamily::TTN;
    c.backend = ShadowBackend::Mps;
    const json j = cli::config_to_json(c);
    EXPECT_EQ(cli::config_to_json(cli::config_from_json(j)), j);
    EXPECT_THROW(cli::config_from_json(json{{"qubits", 4}}), std::invalid_argument);
    EXPECT_THROW(cli::config_from_json(json{{"n", "four"}}), std::invalid_argument);
    EXPECT_THROW(cli::config_from_json(json{{"budgets", json::array({10, 0})}}), std::invalid_argument);
    EXPECT_THROW(cli::config_from_json(json{{"instances", 0}}), std::invalid_argument);
    EXPECT_EQ(cli::config_from_json(json{{"budgets", 500}}).budgets, std::vector<int64_t>{500});
    EXPECT_THROW(cli::load_config("/nonexistent.json"), std::runtime_error);
}

TEST(summarize, population_statistics) {
    const cli::Stats s = cli::summarize({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_DOUBLE_EQ(s.std, std::sqrt(1.25));
    EXPECT_DOUBLE_EQ(s.median, 2.5);
    EXPECT_DOUBLE_EQ(cli::summarize({7.0}).std, 0.0);
}

TEST(run_experiment, replay_is_bit_identical) {
    const ExperimentConfig c = tiny();
    const cli::RunReport a = cli::run_experiment(c);
    const cli::RunReport b = cli::run_experiment(c);
    EXPECT_EQ(curves(a), curves(b));
    ASSERT_EQ(a.runs.size(), 1u);
    EXPECT_EQ(a.runs[0].instances.size(), 2u);
    std::istringstream is(curves(a));
    std::string header;
    std::getline(is, header);
    EXPECT_EQ(header, "method,budget,instance,index,cost,copies,estimate");
}

TEST(run_experiment, baseline_copies_per_evaluation) {
    // 5e5 copies over 5000 SPSA iterations (10^4 evaluations) -> 50 each.
    ExperimentConfig c = tiny();
    c.method = Method::Vqa;
    c.instances = 1;
    c.spsa_iterations = 5000;
    c.budgets = {500000};
    cli::RunReport r = cli::run_experiment(c);
    EXPECT_EQ(r.runs[0].instances[0].shots_per_evaluation, 50);
    EXPECT_EQ(r.runs[0].instances[0].copies, 500000);
    // VQCS, 1e5 copies over 10^3 Powell evaluations -> 100 each.
    c.problem = Problem::Vqcs;
    c.n = 2;
    c.optimizer = OptimizerKind::Powell;
    c.budgets = {100000};
    r = cli::run_experiment(c);
    const InstanceRun &run = r.runs[0].instances[0];
    EXPECT_EQ(run.shots_per_evaluation, 100);
    EXPECT_EQ(run.copies, static_cast<int64_t>(run.rows.size()) * 100);
}

TEST(run_experiment, one_store_serves_several_families) {
    ExperimentConfig c = tiny();
    c.target_family = AnsatzFamily::ALA;
    c.target_layers = 2;
    const auto dir = std::filesystem::temp_directory_path() / "aiso_test_cli_store";
    std::filesystem::create_directories(dir);
    BudgetLedger ledger;
    for (int k = 0; k < c.instances; ++k) {
        write_shadow_store_file(cli::store_path(dir.string(), k), generate_shadow_store(c, k, 10, 100, &ledger));
    }
    EXPECT_EQ(ledger.copies_consumed(), 2000);
    for (AnsatzFamily f : {AnsatzFamily::ALA, AnsatzFamily::HEA, AnsatzFamily::TTN, AnsatzFamily::MERA}) {
        c.family = f;
        const cli::RunReport r = cli::run_experiment(c, dir.string());
        for (const InstanceRun &run : r.runs[0].instances) EXPECT_EQ(run.copies, 1000);
    }
    // A different target is refused.
    c.target_layers = 3;
    EXPECT_THROW(cli::run_experiment(c, dir.string()), std::invalid_argument);
    std::filesystem::remove_all(dir);
}

TEST(sweep_budgets, one_row_per_method_and_budget) {
    ExperimentConfig c = tiny();
    c.budgets = {1000, 4000};
    c.instances = 1;
    const auto rows = cli::sweep_budgets(c, {Method::Aiso, Method::Vqa});
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].copies, 1000.0);
    EXPECT_EQ(rows[1].copies, 4000.0);
    EXPECT_EQ(rows[3].copies, 4000.0);
    std::ostringstream os;
    cli::write_sweep_csv(os, rows);
    const std::string text = os.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST(report_json, carries_seeds_and_config) {
    const cli::RunReport r = cli::run_experiment(tiny());
    const json j = cli::report_json(r);
    EXPECT_EQ(j["config"], cli::config_to_json(tiny()));
    EXPECT_EQ(j["runs"][0]["instances"][1]["seeds"]["shadows"].get<uint64_t>(), instance_seeds(2026, 1).shadows);
    EXPECT_EQ(j["runs"][0]["instances"][0]["final_params"].size(), static_cast<size_t>(run_ansatz(tiny()).num_params));
}
