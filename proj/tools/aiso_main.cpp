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


// aiso: command-line workbench.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"

using namespace aiso;

namespace {

// Config file plus per-field flag overrides.
struct ConfigFlags {
    std::string path;
    std::string problem, family, method, optimizer, target_family, target_mode, backend;
    int n = 0, layers = 0, shadow_depth = 0, instances = 0, target_layers = 0;
    int64_t spsa_iterations = 0, powell_evaluations = 0, t1 = 0, interval = 0;
    uint64_t seed = 0;
    std::vector<int64_t> budgets;
    std::vector<std::pair<CLI::Option *, std::function<void(ExperimentConfig &)>>> setters;

    template <class T, class F>
    void add(CLI::App *app, const std::string &name, T &var, const std::string &help, F apply) {
        setters.emplace_back(app->add_option(name, var, help), apply);
    }

    void attach(CLI::App *app) {
        app->add_option("-c,--config", path, "JSON config file")->check(CLI::ExistingFile);
        add(app, "--problem", problem, "vqsp | vqcs", [this](ExperimentConfig &c) { c.problem = parse_problem(problem); });
        add(app, "--family", family, "ala | mera | hea | ttn",
            [this](ExperimentConfig &c) { c.family = parse_ansatz_family(family); });
        add(app, "-n,--qubits", n, "system qubits", [this](ExperimentConfig &c) { c.n = n; });
        add(app, "--layers", layers, "ansatz layers", [this](ExperimentConfig &c) { c.layers = layers; });
        add(app, "--shadow-depth", shadow_depth, "brickwork depth d",
            [this](ExperimentConfig &c) { c.shadow_depth = shadow_depth; });
        add(app, "--method", method, "aiso | vqa | exact", [this](ExperimentConfig &c) { c.method = parse_method(method); });
        add(app, "--budgets", budgets, "total copies per run", [this](ExperimentConfig &c) { c.budgets = budgets; });
        add(app, "--optimizer", optimizer, "spsa | powell",
            [this](ExperimentConfig &c) { c.optimizer = parse_optimizer(optimizer); });
        add(app, "--spsa-iterations", spsa_iterations, "",
            [this](ExperimentConfig &c) { c.spsa_iterations = spsa_iterations; });
        add(app, "--powell-evaluations", powell_evaluations, "",
            [this](ExperimentConfig &c) { c.powell_evaluations = powell_evaluations; });
        add(app, "--instances", instances, "", [this](ExperimentConfig &c) { c.instances = instances; });
        add(app, "--seed", seed, "master seed", [this](ExperimentConfig &c) { c.master_seed = seed; });
        add(app, "--t1", t1, "AISO median groups", [this](ExperimentConfig &c) { c.t1 = t1; });
        add(app, "--target-family", target_family, "family the targets come from",
            [this](ExperimentConfig &c) { c.target_family = parse_ansatz_family(target_family); });
        add(app, "--target-layers", target_layers, "", [this](ExperimentConfig &c) { c.target_layers = target_layers; });
        add(app, "--target-mode", target_mode, "ansatz | haar",
            [this](ExperimentConfig &c) { c.target_mode = parse_target_mode(target_mode); });
        add(app, "--interval", interval, "evaluations per interval", [this](ExperimentConfig &c) { c.interval = interval; });
        add(app, "--backend", backend, "dense | mps",
            [this](ExperimentConfig &c) { c.backend = parse_shadow_backend(backend); });
    }

    ExperimentConfig resolve() const {
        ExperimentConfig c = path.empty() ? ExperimentConfig{} : cli::load_config(path);
        for (const auto &[opt, apply] : setters) {
            if (opt->count() > 0) apply(c);
        }
        c.validate();
        return c;
    }
};

DenseOperator parse_observable(const std::string &what, int n) {
    if (what == "zero") return DenseOperator::zero(n);
    if (what == "projector") {
        DenseOperator p = DenseOperator::zero(n);
        p.mutable_matrix()(0, 0) = 1.0;
        return p;
    }
    if (what.rfind("pauli:", 0) == 0) {
        const PauliString p = PauliString::parse(what.substr(6));
        if (p.num_qubits() != n) throw std::invalid_argument("observable has the wrong qubit count");
        return pauli_to_dense(p);
    }
    throw std::invalid_argument("unknown observable '" + what + "' (zero | projector | pauli:<string>)");
}

int cmd_generate(const ExperimentConfig &c, int64_t t2, int instance, const std::string &dir) {
    if (t2 <= 0) t2 = c.budgets.front() / c.t1;
    std::filesystem::create_directories(dir);
    BudgetLedger ledger;
    for (int k = 0; k < c.instances; ++k) {
        if (instance >= 0 && k != instance) continue;
        const ShadowStore store = generate_shadow_store(c, k, c.t1, t2, &ledger);
        const std::string path = cli::store_path(dir, k);
        write_shadow_store_file(path, store);
        std::cout << "instance " << k << ": " << store.snapshots.size() << " snapshots (T1=" << c.t1 << ", T2=" << t2
                  << ") -> " << path << "\n";
    }
    std::cout << "copies consumed: " << ledger.copies_consumed() << "\n";
    return 0;
}

int cmd_run(const ExperimentConfig &c, const std::string &shadow_dir, const std::string &out, bool quiet) {
    const cli::RunReport report = cli::run_experiment(c, shadow_dir, quiet ? nullptr : &std::cerr);
    if (!out.empty()) {
        const auto parent = std::filesystem::path(out).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
        cli::write_run_outputs(out, report);
    }
    cli::write_summary_csv(std::cout, report);
    return 0;
}

int cmd_plan(double delta, double eps, double m, double c, double norm, const std::string &design) {
    const Design d = design == "one" ? Design::OneDesign : design == "two" ? Design::TwoDesign
                                                                           : throw std::invalid_argument("design: one | two");
    const SamplePlan p = plan_samples(delta, eps, m, c, norm, d);
    std::cout << "T1 = " << p.t1 << "\nT2 = " << p.t2 << "\ncopies = " << p.t1 * p.t2 << "\n";
    return 0;
}

int cmd_verify(const std::string &which, int n, int d, int64_t samples, int states, uint64_t seed,
               const std::string &observable) {
    const BrickworkLayout layout(n, d);
    const DenseOperator o = parse_observable(observable, n);
    const DenseOperator traceless = o.traceless_part();
    const double fro2 = traceless.matrix().squaredNorm();
    Rng rng(seed);
    if (fro2 == 0.0) {
        std::cout << which << ": observable has no traceless part, bound holds trivially\nPASS\n";
        return 0;
    }
    if (which == "theorem2") {
        const auto [est, se] = estimate_locally_scrambled_norm(layout, traceless, samples, rng);
        const double bound = 4.0 * fro2;
        const bool ok = est - 3.0 * se <= bound;
        std::printf("theorem2 n=%d d=%d samples=%lld\n  estimate %.6f  stderr %.6f  bound 4|O|_F^2 = %.6f\n%s\n", n, d,
                    static_cast<long long>(samples), est, se, bound, ok ? "PASS" : "FAIL");
        return ok ? 0 : 1;
    }
    if (which == "theorem5") {
        const VarianceBoundReport r = verify_variance_bound(layout, o, states, samples, rng);
        std::printf("theorem5 n=%d d=%d states=%d samples/state=%lld\n"
                    "  mean norm %.6f\n  variance %.6f  (noise corrected %.6f)  stderr %.6f  95%% upper %.6f\n"
                    "  bound 64|O|_F^4 = %.6f   (64|O|_F^2 = %.6f, reported only)\n%s\n",
                    n, d, r.num_states, static_cast<long long>(r.samples_per_state), r.mean_norm, r.variance,
                    r.variance_noise_corrected, r.variance_stderr, r.ci_upper, r.bound, r.bound_alt_exponent,
                    r.satisfied ? "PASS" : "FAIL");
        return r.satisfied ? 0 : 1;
    }
    throw std::invalid_argument("verify-bounds: theorem2 | theorem5");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"AISO workbench: shallow-shadow assisted state and circuit learning"};
    app.require_subcommand(1);

    ConfigFlags gen_flags, run_flags, sweep_flags;
    int64_t t2 = 0;
    int instance = -1;
    std::string out_dir;
    auto *gen = app.add_subcommand("generate-shadows", "Acquire T1 x T2 shallow shadows per instance");
    gen_flags.attach(gen);
    gen->add_option("--t2", t2, "snapshots per group (default: first budget / T1)");
    gen->add_option("--instance", instance, "only this instance");
    gen->add_option("-o,--out-dir", out_dir, "directory for shadows_i<k>.txt")->required();

    std::string shadow_dir, out_prefix;
    bool quiet = false;
    auto *run = app.add_subcommand("run", "Optimize every instance at every budget");
    run_flags.attach(run);
    run->add_option("--shadow-dir", shadow_dir, "reuse stores from generate-shadows");
    run->add_option("-o,--out", out_prefix, "prefix for _curves.csv, _intervals.csv, _summary.csv, .json");
    run->add_flag("-q,--quiet", quiet);

    double delta = 0.1, eps = 0.1, m = 1, c = 1, norm = 1;
    std::string design = "one";
    auto *plan = app.add_subcommand("plan", "Sample counts T1, T2 for m observables");
    plan->add_option("--delta", delta)->required();
    plan->add_option("--epsilon", eps)->required();
    plan->add_option("--m", m)->required();
    plan->add_option("--c", c, "shadow-norm constant")->required();
    plan->add_option("--norm", norm, "max Frobenius norm");
    plan->add_option("--design", design, "one | two")->check(CLI::IsMember({"one", "two"}));

    std::string which, observable = "projector";
    int vn = 8, vd = 3, states = 200;
    int64_t samples = 20000;
    uint64_t vseed = 1;
    auto *verify = app.add_subcommand("verify-bounds", "Monte Carlo check of the shadow-norm bounds");
    verify->add_option("which", which, "theorem2 | theorem5")->required()->check(CLI::IsMember({"theorem2", "theorem5"}));
    verify->add_option("-n,--qubits", vn);
    verify->add_option("-d,--depth", vd);
    verify->add_option("--samples", samples, "samples (per state for theorem5)");
    verify->add_option("--states", states, "Haar states (theorem5)");
    verify->add_option("--seed", vseed);
    verify->add_option("--observable", observable, "projector | zero | pauli:<string>");

    std::string sweep_out, methods_arg = "aiso,vqa";
    auto *sweep = app.add_subcommand("sweep-budgets", "Mean lowest cost against copies, per method and budget");
    sweep_flags.attach(sweep);
    sweep->add_option("--methods", methods_arg, "comma-separated methods");
    sweep->add_option("-o,--out", sweep_out, "CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_generate(gen_flags.resolve(), t2, instance, out_dir);
        if (*run) return cmd_run(run_flags.resolve(), shadow_dir, out_prefix, quiet);
        if (*plan) return cmd_plan(delta, eps, m, c, norm, design);
        if (*verify) return cmd_verify(which, vn, vd, samples, states, vseed, observable);
        if (*sweep) {
            std::vector<Method> methods;
            std::stringstream ss(methods_arg);
            for (std::string tok; std::getline(ss, tok, ',');) methods.push_back(parse_method(tok));
            const auto rows = cli::sweep_budgets(sweep_flags.resolve(), methods, &std::cerr);
            if (sweep_out.empty()) {
                cli::write_sweep_csv(std::cout, rows);
            } else {
                std::ofstream f(sweep_out);
                if (!f) throw std::runtime_error("cannot open " + sweep_out);
                cli::write_sweep_csv(f, rows);
            }
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "aiso: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
