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


#include "aiso/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aiso {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::Aiso: return "aiso";
        case Method::Vqa: return "vqa";
        case Method::Exact: return "exact";
    }
    return "?";
}

std::string to_string(OptimizerKind o) { return o == OptimizerKind::Spsa ? "spsa" : "powell"; }
std::string to_string(TargetMode t) { return t == TargetMode::Ansatz ? "ansatz" : "haar"; }

Method parse_method(std::string_view s) {
    const std::string v = lower(s);
    if (v == "aiso") return Method::Aiso;
    if (v == "vqa") return Method::Vqa;
    if (v == "exact") return Method::Exact;
    throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

OptimizerKind parse_optimizer(std::string_view s) {
    const std::string v = lower(s);
    if (v == "spsa") return OptimizerKind::Spsa;
    if (v == "powell") return OptimizerKind::Powell;
    throw std::invalid_argument("unknown optimizer '" + std::string(s) + "'");
}

TargetMode parse_target_mode(std::string_view s) {
    const std::string v = lower(s);
    if (v == "ansatz") return TargetMode::Ansatz;
    if (v == "haar") return TargetMode::Haar;
    throw std::invalid_argument("unknown target mode '" + std::string(s) + "'");
}

int64_t ExperimentConfig::evaluations_per_run() const {
    return optimizer == OptimizerKind::Spsa ? 2 * spsa_iterations : powell_evaluations;
}

void ExperimentConfig::validate() const {
    if (n < 2) throw std::invalid_argument("config: n must be >= 2");
    if (layers < 1) throw std::invalid_argument("config: layers must be >= 1");
    if (shadow_depth < 1) throw std::invalid_argument("config: shadow depth must be >= 1");
    if (budgets.empty()) throw std::invalid_argument("config: no budgets");
    for (int64_t b : budgets) {
        if (b < 1) throw std::invalid_argument("config: budgets must be >= 1");
    }
    if (instances < 1) throw std::invalid_argument("config: instance count must be >= 1");
    if (spsa_iterations < 1 || powell_evaluations < 2) throw std::invalid_argument("config: optimizer budget too small");
    if (t1 < 1) throw std::invalid_argument("config: t1 must be >= 1");
    if (interval < 1) throw std::invalid_argument("config: interval must be >= 1");
    const int reg = problem == Problem::Vqsp ? n : 2 * n;
    if (reg > kMaxDenseShadowQubits && backend == ShadowBackend::Dense) {
        throw std::invalid_argument("config: dense shadows need at most " + std::to_string(kMaxDenseShadowQubits) +
                                    " register qubits");
    }
}

InstanceSeeds instance_seeds(uint64_t master_seed, int instance) {
    const uint64_t s = derive_seed(master_seed, static_cast<uint64_t>(instance));
    return InstanceSeeds{s, derive_seed(s, 0), derive_seed(s, 1), derive_seed(s, 2), derive_seed(s, 3), derive_seed(s, 4)};
}

AnsatzDescriptor run_ansatz(const ExperimentConfig &config) {
    return build_ansatz(config.family, config.n, config.layers,
                        config.problem == Problem::Vqcs ? BlockTemplate::Block8 : BlockTemplate::Block4);
}

CostFunction make_instance_cost(const ExperimentConfig &config, int instance) {
    const InstanceSeeds seeds = instance_seeds(config.master_seed, instance);
    Rng rng(seeds.target);
    const BlockTemplate block = config.problem == Problem::Vqcs ? BlockTemplate::Block8 : BlockTemplate::Block4;
    StateVector target;
    if (config.target_mode == TargetMode::Ansatz) {
        const AnsatzDescriptor t =
            build_ansatz(config.effective_target_family(), config.n, config.effective_target_layers(), block);
        const Eigen::VectorXd p = random_parameters(t, rng);
        target = config.problem == Problem::Vqsp ? apply_ansatz(t, p, StateVector::zero(config.n), Direction::Adjoint)
                                                 : vectorize_unitary(t, p);
    } else {
        target = config.problem == Problem::Vqsp ? haar_random_state(config.n, rng)
                                                 : vectorize_unitary(haar_random_unitary(config.n, rng));
    }
    return make_cost(config.problem, run_ansatz(config), std::move(target));
}

std::string target_tag(const ExperimentConfig &config, int instance) {
    std::ostringstream os;
    os << to_string(config.problem) << '/' << to_string(config.effective_target_family()) << "/L"
       << config.effective_target_layers() << '/' << to_string(config.target_mode) << "/n" << config.n << "/master"
       << config.master_seed << "/instance" << instance;
    return os.str();
}

InstanceRun run_instance(const ExperimentConfig &config, int instance, int64_t budget, const ShadowSet *shadows,
                         BudgetLedger *ledger) {
    config.validate();
    if (budget < 1) throw std::invalid_argument("run_instance: budget must be >= 1");
    const CostFunction cost = make_instance_cost(config, instance);
    const InstanceSeeds seeds = instance_seeds(config.master_seed, instance);
    BudgetLedger local(budget);
    BudgetLedger &book = ledger != nullptr ? *ledger : local;

    InstanceRun run;
    run.instance = instance;
    Objective estimator;
    ShadowSet owned;
    Rng shot_rng(seeds.shots);
    switch (config.method) {
        case Method::Aiso: {
            if (shadows == nullptr) {
                const int64_t t2 = budget / config.t1;
                if (t2 < 1) throw std::invalid_argument("run_instance: budget smaller than t1");
                const PatternWeightTable table = pattern_weights(BrickworkLayout(cost.num_qubits(), config.shadow_depth));
                owned = acquire_shadow_set([&cost] { return cost.target; }, table, config.t1, t2, seeds.shadows, &book,
                                           config.backend, config.backend == ShadowBackend::Mps);
                shadows = &owned;
            }
            if (shadows->num_qubits() != cost.num_qubits()) throw std::invalid_argument("run_instance: shadow register size mismatch");
            const ShadowSet *set = shadows;
            estimator = [&cost, set](const Eigen::VectorXd &p) { return shadow_cost(cost, p, *set); };
            break;
        }
        case Method::Vqa: {
            run.shots_per_evaluation = budget / config.evaluations_per_run();
            if (run.shots_per_evaluation < 1) {
                throw std::invalid_argument("run_instance: budget " + std::to_string(budget) + " gives no shots for " +
                                            std::to_string(config.evaluations_per_run()) + " evaluations");
            }
            const int64_t shots = run.shots_per_evaluation;
            estimator = [&cost, shots, &shot_rng, &book](const Eigen::VectorXd &p) {
                return shot_cost(cost, p, shots, shot_rng, &book);
            };
            break;
        }
        case Method::Exact:
            estimator = [&cost](const Eigen::VectorXd &p) { return exact_cost(cost, p); };
            break;
    }

    const Objective traced = [&](const Eigen::VectorXd &p) {
        const double e = estimator(p);
        run.rows.push_back(EvalRow{static_cast<int64_t>(run.rows.size()), e, exact_cost(cost, p), book.copies_consumed()});
        return e;
    };
    Rng init_rng(seeds.init);
    const Eigen::VectorXd theta0 = random_parameters(cost.ansatz, init_rng);
    run.initial_cost = exact_cost(cost, theta0);
    const CopiesProbe probe = [&book] { return book.copies_consumed(); };
    OptResult result;
    if (config.optimizer == OptimizerKind::Spsa) {
        SpsaConfig sc;
        sc.iterations = config.spsa_iterations;
        sc.seed = seeds.optimizer;
        result = spsa_minimize(traced, theta0, sc, probe);
    } else {
        PowellConfig pc;
        pc.max_evaluations = config.powell_evaluations;
        pc.restart_on_convergence = true;
        result = powell_minimize(traced, theta0, pc, probe);
    }
    run.final_params = result.theta;
    run.final_cost = exact_cost(cost, result.theta);
    run.budget_exhausted = result.trace.budget_exhausted;
    run.copies = book.copies_consumed();
    run.lowest_cost = run.final_cost;
    for (const EvalRow &r : run.rows) run.lowest_cost = std::min(run.lowest_cost, r.cost);
    run.final_interval_min = run.final_cost;
    if (!run.rows.empty()) {
        const size_t start = (run.rows.size() - 1) / static_cast<size_t>(config.interval) * static_cast<size_t>(config.interval);
        run.final_interval_min = std::numeric_limits<double>::infinity();
        for (size_t i = start; i < run.rows.size(); ++i) run.final_interval_min = std::min(run.final_interval_min, run.rows[i].cost);
    }
    return run;
}

void write_shadow_store(std::ostream &out, const ShadowStore &store) {
    const ShadowStoreHeader &h = store.header;
    out << "# aiso-shadow-store v" << h.version << " n=" << h.n << " d=" << h.depth << " layout=" << h.layout
        << " t1=" << h.t1 << " t2=" << h.t2 << " seed=" << h.seed << " target=" << (h.target.empty() ? "-" : h.target)
        << '\n';
    for (const Snapshot &s : store.snapshots) {
        const auto &blocks = s.circuit.blocks();
        for (size_t i = 0; i < blocks.size(); ++i) {
            if (i != 0) out << ',';
            out << blocks[i];
        }
        out << ';' << s.outcome.to_string() << '\n';
    }
    if (!out) throw std::runtime_error("write_shadow_store: write failed");
}

ShadowStore read_shadow_store(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_shadow_store: empty input");
    std::istringstream hs(line);
    std::string hash, magic, version;
    hs >> hash >> magic >> version;
    if (hash != "#" || magic != "aiso-shadow-store") throw std::runtime_error("read_shadow_store: not a shadow store");
    if (version != "v1") throw std::runtime_error("read_shadow_store: unsupported version " + version);
    ShadowStore store;
    ShadowStoreHeader &h = store.header;
    std::string tok;
    int seen = 0;
    while (hs >> tok) {
        const size_t eq = tok.find('=');
        if (eq == std::string::npos) throw std::runtime_error("read_shadow_store: bad header token " + tok);
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        try {
            if (key == "n") h.n = std::stoi(val), seen |= 1;
            else if (key == "d") h.depth = std::stoi(val), seen |= 2;
            else if (key == "layout") h.layout = val, seen |= 4;
            else if (key == "t1") h.t1 = std::stoll(val), seen |= 8;
            else if (key == "t2") h.t2 = std::stoll(val), seen |= 16;
            else if (key == "seed") h.seed = std::stoull(val), seen |= 32;
            else if (key == "target") h.target = val == "-" ? "" : val;
        } catch (const std::logic_error &) {
            throw std::runtime_error("read_shadow_store: bad value in " + tok);
        }
    }
    if (seen != 63) throw std::runtime_error("read_shadow_store: header missing a required field");
    if (h.layout != BrickworkLayout::kDescriptor) throw std::runtime_error("read_shadow_store: unknown layout " + h.layout);
    if (h.t1 < 1 || h.t2 < 1) throw std::runtime_error("read_shadow_store: T1, T2 must be >= 1");
    const BrickworkLayout layout(h.n, h.depth);
    const int64_t expected = h.t1 * h.t2;
    store.snapshots.reserve(static_cast<size_t>(expected));
    int64_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const size_t semi = line.find(';');
        if (semi == std::string::npos) throw std::runtime_error("read_shadow_store: line " + std::to_string(lineno) + " has no ';'");
        std::vector<uint16_t> blocks;
        std::istringstream bs(line.substr(0, semi));
        std::string item;
        while (std::getline(bs, item, ',')) {
            unsigned long v;
            try {
                v = std::stoul(item);
            } catch (const std::logic_error &) {
                throw std::runtime_error("read_shadow_store: line " + std::to_string(lineno) + ": bad index");
            }
            if (v >= static_cast<unsigned long>(kNumClifford2)) {
                throw std::runtime_error("read_shadow_store: line " + std::to_string(lineno) + ": index out of range");
            }
            blocks.push_back(static_cast<uint16_t>(v));
        }
        if (static_cast<int>(blocks.size()) != layout.num_blocks()) {
            throw std::runtime_error("read_shadow_store: line " + std::to_string(lineno) + ": wrong block count");
        }
        const std::string bits = line.substr(semi + 1);
        if (static_cast<int>(bits.size()) != h.n) throw std::runtime_error("read_shadow_store: line " + std::to_string(lineno) + ": wrong outcome length");
        Bitstring u;
        try {
            u = Bitstring::parse(bits);
        } catch (const std::invalid_argument &) {
            throw std::runtime_error("read_shadow_store: line " + std::to_string(lineno) + ": bad outcome");
        }
        store.snapshots.push_back(Snapshot{BrickworkCircuit(layout, std::move(blocks)), u});
    }
    if (static_cast<int64_t>(store.snapshots.size()) != expected) {
        throw std::runtime_error("read_shadow_store: expected " + std::to_string(expected) + " records, found " +
                                 std::to_string(store.snapshots.size()));
    }
    return store;
}

void write_shadow_store_file(const std::string &path, const ShadowStore &store) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    write_shadow_store(f, store);
}

ShadowStore read_shadow_store_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_shadow_store(f);
}

ShadowStore generate_shadow_store(const ExperimentConfig &config, int instance, int64_t t1, int64_t t2,
                                  BudgetLedger *ledger) {
    if (t1 < 1 || t2 < 1) throw std::invalid_argument("generate_shadow_store: T1, T2 must be >= 1");
    const CostFunction cost = make_instance_cost(config, instance);
    const InstanceSeeds seeds = instance_seeds(config.master_seed, instance);
    if (ledger != nullptr) ledger->charge_acquisition(t1 * t2);
    const BrickworkLayout layout(cost.num_qubits(), config.shadow_depth);
    ShadowStore store;
    store.header = ShadowStoreHeader{1, layout.num_qubits(), layout.depth(), BrickworkLayout::kDescriptor,
                                     t1, t2, seeds.shadows, target_tag(config, instance)};
    store.snapshots.reserve(static_cast<size_t>(t1 * t2));
    const StatePreparer prep = [&cost] { return cost.target; };
    for (int64_t g = 0; g < t1; ++g) {
        Rng rng = make_rng(seeds.shadows, static_cast<uint64_t>(g));
        for (Snapshot &s : acquire_snapshots(prep, layout, t2, rng)) store.snapshots.push_back(std::move(s));
    }
    return store;
}

ShadowSet shadow_set_from_store(const ShadowStore &store, ShadowBackend backend) {
    const PatternWeightTable table = pattern_weights(BrickworkLayout(store.header.n, store.header.depth));
    return ShadowSet::from_snapshots(table, store.header.t1, store.header.t2, store.snapshots, backend);
}

}  // namespace aiso
