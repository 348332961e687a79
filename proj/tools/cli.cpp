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
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace aiso::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[32];
    // Whole copy counts print as integers, not 1e+06.
    const bool whole = std::abs(v) < 9.0e15 && v == std::trunc(v);
    const auto r = whole ? std::to_chars(buf, buf + sizeof buf, static_cast<int64_t>(v))
                         : std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

template <class T>
T get_int(const json &v, const std::string &key) {
    if (!v.is_number_integer()) throw std::invalid_argument("config: '" + key + "' must be an integer");
    return v.get<T>();
}

std::string get_str(const json &v, const std::string &key) {
    if (!v.is_string()) throw std::invalid_argument("config: '" + key + "' must be a string");
    return v.get<std::string>();
}

std::ofstream open_out(const std::string &path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    return f;
}

}  // namespace

ExperimentConfig config_from_json(const json &j) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    ExperimentConfig c;
    for (const auto &[key, v] : j.items()) {
        if (key == "problem") c.problem = parse_problem(get_str(v, key));
        else if (key == "family" || key == "ansatz") c.family = parse_ansatz_family(get_str(v, key));
        else if (key == "n") c.n = get_int<int>(v, key);
        else if (key == "layers") c.layers = get_int<int>(v, key);
        else if (key == "shadow_depth") c.shadow_depth = get_int<int>(v, key);
        else if (key == "method") c.method = parse_method(get_str(v, key));
        else if (key == "budgets") {
            c.budgets.clear();
            if (v.is_array()) {
                for (const auto &b : v) c.budgets.push_back(get_int<int64_t>(b, key));
            } else {
                c.budgets.push_back(get_int<int64_t>(v, key));
            }
        } else if (key == "optimizer") c.optimizer = parse_optimizer(get_str(v, key));
        else if (key == "spsa_iterations") c.spsa_iterations = get_int<int64_t>(v, key);
        else if (key == "powell_evaluations") c.powell_evaluations = get_int<int64_t>(v, key);
        else if (key == "instances") c.instances = get_int<int>(v, key);
        else if (key == "master_seed") c.master_seed = get_int<uint64_t>(v, key);
        else if (key == "t1") c.t1 = get_int<int64_t>(v, key);
        else if (key == "target_family") {
            if (v.is_null()) c.target_family.reset();
            else c.target_family = parse_ansatz_family(get_str(v, key));
        } else if (key == "target_layers") c.target_layers = get_int<int>(v, key);
        else if (key == "target_mode") c.target_mode = parse_target_mode(get_str(v, key));
        else if (key == "interval") c.interval = get_int<int64_t>(v, key);
        else if (key == "backend") c.backend = parse_shadow_backend(get_str(v, key));
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig &c) {
    json j;
    j["problem"] = to_string(c.problem);
    j["family"] = to_string(c.family);
    j["n"] = c.n;
    j["layers"] = c.layers;
    j["shadow_depth"] = c.shadow_depth;
    j["method"] = to_string(c.method);
    j["budgets"] = c.budgets;
    j["optimizer"] = to_string(c.optimizer);
    j["spsa_iterations"] = c.spsa_iterations;
    j["powell_evaluations"] = c.powell_evaluations;
    j["instances"] = c.instances;
    j["master_seed"] = c.master_seed;
    j["t1"] = c.t1;
    j["target_family"] = c.target_family ? json(to_string(*c.target_family)) : json(nullptr);
    j["target_layers"] = c.target_layers;
    j["target_mode"] = to_string(c.target_mode);
    j["interval"] = c.interval;
    j["backend"] = to_string(c.backend);
    return j;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config " + path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument("config " + path + ": " + e.what());
    }
    return config_from_json(j);
}

std::string store_path(const std::string &dir, int instance) {
    return dir + "/shadows_i" + std::to_string(instance) + ".txt";
}

Stats summarize(std::vector<double> values) {
    Stats s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / static_cast<double>(values.size()));
    s.median = median(std::move(values));
    return s;
}

RunReport run_experiment(const ExperimentConfig &config, const std::string &shadow_dir, std::ostream *log) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    report.config = config;
    const bool from_store = config.method == Method::Aiso && !shadow_dir.empty();
    const std::vector<int64_t> budgets = from_store ? std::vector<int64_t>{0} : config.budgets;
    for (int64_t budget : budgets) {
        BudgetRun br;
        br.method = config.method;
        br.budget = budget;
        for (int k = 0; k < config.instances; ++k) {
            const auto ti = std::chrono::steady_clock::now();
            InstanceRun run;
            if (from_store) {
                const ShadowStore store = read_shadow_store_file(store_path(shadow_dir, k));
                if (store.header.target != target_tag(config, k)) {
                    throw std::invalid_argument("store " + store_path(shadow_dir, k) + " holds target '" +
                                                store.header.target + "', config expects '" + target_tag(config, k) + "'");
                }
                if (store.header.depth != config.shadow_depth) throw std::invalid_argument("store depth differs from config");
                const ShadowSet set = shadow_set_from_store(store, config.backend);
                BudgetLedger ledger;
                ledger.charge_acquisition(set.copies());
                br.budget = set.copies();
                run = run_instance(config, k, set.copies(), &set, &ledger);
            } else {
                run = run_instance(config, k, budget);
            }
            if (log != nullptr) {
                const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - ti).count();
                *log << to_string(config.method) << " budget=" << br.budget << " instance=" << k
                     << " initial=" << run.initial_cost << " final=" << run.final_cost
                     << " interval_min=" << run.final_interval_min << " copies=" << run.copies << " (" << sec << " s)\n";
            }
            br.instances.push_back(std::move(run));
        }
        report.runs.push_back(std::move(br));
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

void write_curves_csv(std::ostream &out, const RunReport &report) {
    out << "method,budget,instance,index,cost,copies,estimate\n";
    for (const BudgetRun &br : report.runs) {
        const std::string m = to_string(br.method);
        for (const InstanceRun &r : br.instances) {
            for (const EvalRow &row : r.rows) {
                out << m << ',' << br.budget << ',' << r.instance << ',' << row.index << ',' << num(row.cost) << ','
                    << row.copies << ',' << num(row.estimate) << '\n';
            }
        }
    }
}

void write_intervals_csv(std::ostream &out, const RunReport &report) {
    const auto width = static_cast<size_t>(report.config.interval);
    out << "method,budget,instance,interval,start,min_cost\n";
    for (const BudgetRun &br : report.runs) {
        for (const InstanceRun &r : br.instances) {
            for (size_t start = 0; start < r.rows.size(); start += width) {
                double lo = r.rows[start].cost;
                for (size_t i = start; i < std::min(r.rows.size(), start + width); ++i) lo = std::min(lo, r.rows[i].cost);
                out << to_string(br.method) << ',' << br.budget << ',' << r.instance << ',' << start / width << ','
                    << start << ',' << num(lo) << '\n';
            }
        }
    }
}

namespace {

struct BudgetSummary {
    Stats initial, final_cost, interval_min, lowest;
    double copies = 0.0;
    int64_t shots = 0;
    int exhausted = 0;
};

BudgetSummary summarize_budget(const BudgetRun &br) {
    std::vector<double> init, fin, imin, low;
    BudgetSummary s;
    for (const InstanceRun &r : br.instances) {
        init.push_back(r.initial_cost);
        fin.push_back(r.final_cost);
        imin.push_back(r.final_interval_min);
        low.push_back(r.lowest_cost);
        s.copies += static_cast<double>(r.copies);
        s.shots = r.shots_per_evaluation;
        s.exhausted += r.budget_exhausted ? 1 : 0;
    }
    if (!br.instances.empty()) s.copies /= static_cast<double>(br.instances.size());
    s.initial = summarize(init);
    s.final_cost = summarize(fin);
    s.interval_min = summarize(imin);
    s.lowest = summarize(low);
    return s;
}

}  // namespace

void write_summary_csv(std::ostream &out, const RunReport &report) {
    out << "method,budget,instances,copies_per_instance,shots_per_evaluation,mean_initial_cost,mean_final_cost,"
           "std_final_cost,median_final_cost,mean_interval_min,std_interval_min,median_interval_min,mean_lowest_cost,"
           "std_lowest_cost,budget_exhausted_runs\n";
    for (const BudgetRun &br : report.runs) {
        const BudgetSummary s = summarize_budget(br);
        out << to_string(br.method) << ',' << br.budget << ',' << br.instances.size() << ',' << num(s.copies) << ','
            << s.shots << ',' << num(s.initial.mean) << ',' << num(s.final_cost.mean) << ',' << num(s.final_cost.std)
            << ',' << num(s.final_cost.median) << ',' << num(s.interval_min.mean) << ',' << num(s.interval_min.std)
            << ',' << num(s.interval_min.median) << ',' << num(s.lowest.mean) << ',' << num(s.lowest.std) << ','
            << s.exhausted << '\n';
    }
}

json report_json(const RunReport &report) {
    json j;
    j["format"] = "aiso-run v1";
    j["config"] = config_to_json(report.config);
    j["wall_clock_seconds"] = report.seconds;
    j["runs"] = json::array();
    for (const BudgetRun &br : report.runs) {
        json b;
        b["method"] = to_string(br.method);
        b["budget"] = br.budget;
        const BudgetSummary s = summarize_budget(br);
        b["summary"] = {{"mean_final_cost", s.final_cost.mean},       {"std_final_cost", s.final_cost.std},
                        {"median_final_cost", s.final_cost.median},   {"mean_interval_min", s.interval_min.mean},
                        {"median_interval_min", s.interval_min.median}, {"mean_lowest_cost", s.lowest.mean},
                        {"copies_per_instance", s.copies}};
        b["instances"] = json::array();
        for (const InstanceRun &r : br.instances) {
            const InstanceSeeds seeds = instance_seeds(report.config.master_seed, r.instance);
            b["instances"].push_back({{"instance", r.instance},
                                      {"seeds",
                                       {{"instance", seeds.instance},
                                        {"target", seeds.target},
                                        {"shadows", seeds.shadows},
                                        {"init", seeds.init},
                                        {"optimizer", seeds.optimizer},
                                        {"shots", seeds.shots}}},
                                      {"target", target_tag(report.config, r.instance)},
                                      {"evaluations", r.rows.size()},
                                      {"initial_cost", r.initial_cost},
                                      {"final_cost", r.final_cost},
                                      {"lowest_cost", r.lowest_cost},
                                      {"final_interval_min", r.final_interval_min},
                                      {"copies", r.copies},
                                      {"shots_per_evaluation", r.shots_per_evaluation},
                                      {"budget_exhausted", r.budget_exhausted},
                                      {"final_params", std::vector<double>(r.final_params.data(),
                                                                           r.final_params.data() + r.final_params.size())}});
        }
        j["runs"].push_back(std::move(b));
    }
    return j;
}

void write_run_outputs(const std::string &prefix, const RunReport &report) {
    {
        std::ofstream f = open_out(prefix + "_curves.csv");
        write_curves_csv(f, report);
    }
    {
        std::ofstream f = open_out(prefix + "_intervals.csv");
        write_intervals_csv(f, report);
    }
    {
        std::ofstream f = open_out(prefix + "_summary.csv");
        write_summary_csv(f, report);
    }
    std::ofstream f = open_out(prefix + ".json");
    f << report_json(report).dump(2) << '\n';
}

std::vector<SweepRow> sweep_budgets(const ExperimentConfig &config, const std::vector<Method> &methods, std::ostream *log) {
    std::vector<SweepRow> rows;
    for (Method m : methods) {
        ExperimentConfig c = config;
        c.method = m;
        const RunReport report = run_experiment(c, "", log);
        for (const BudgetRun &br : report.runs) {
            const BudgetSummary s = summarize_budget(br);
            rows.push_back(SweepRow{m, br.budget, static_cast<int>(br.instances.size()), s.lowest, s.final_cost, s.copies});
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << "method,budget,instances,mean_lowest_cost,std_lowest_cost,mean_final_cost,std_final_cost,copies\n";
    for (const SweepRow &r : rows) {
        out << to_string(r.method) << ',' << r.budget << ',' << r.instances << ',' << num(r.lowest.mean) << ','
            << num(r.lowest.std) << ',' << num(r.final_cost.mean) << ',' << num(r.final_cost.std) << ',' << num(r.copies)
            << '\n';
    }
}

}  // namespace aiso::cli
