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


#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aiso/experiment.hpp"

namespace py = pybind11;
using namespace aiso;

namespace {

StateVector to_state(const Eigen::VectorXcd &amp) { return StateVector::from_amplitudes(amp, true); }

int qubits_of(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    if ((Eigen::Index{1} << n) != dim) throw std::invalid_argument("dimension is not a power of two");
    return n;
}

DenseOperator to_operator(const Eigen::MatrixXcd &m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("operator must be square");
    return DenseOperator(qubits_of(m.rows()), m);
}

py::dict run_to_dict(const InstanceRun &r) {
    py::dict d;
    d["instance"] = r.instance;
    std::vector<int64_t> index, copies;
    std::vector<double> cost, estimate;
    for (const EvalRow &row : r.rows) {
        index.push_back(row.index);
        cost.push_back(row.cost);
        estimate.push_back(row.estimate);
        copies.push_back(row.copies);
    }
    d["index"] = index;
    d["cost"] = cost;
    d["estimate"] = estimate;
    d["copies"] = copies;
    d["final_params"] = r.final_params;
    d["initial_cost"] = r.initial_cost;
    d["final_cost"] = r.final_cost;
    d["lowest_cost"] = r.lowest_cost;
    d["final_interval_min"] = r.final_interval_min;
    d["total_copies"] = r.copies;
    d["shots_per_evaluation"] = r.shots_per_evaluation;
    d["budget_exhausted"] = r.budget_exhausted;
    return d;
}

}  // namespace

PYBIND11_MODULE(_aiso, m) {
    m.doc() = "AISO workbench core";

    py::register_exception<BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);

    py::enum_<AnsatzFamily>(m, "AnsatzFamily")
        .value("ALA", AnsatzFamily::ALA)
        .value("MERA", AnsatzFamily::MERA)
        .value("HEA", AnsatzFamily::HEA)
        .value("TTN", AnsatzFamily::TTN);
    py::enum_<BlockTemplate>(m, "BlockTemplate").value("Block4", BlockTemplate::Block4).value("Block8", BlockTemplate::Block8);
    py::enum_<Problem>(m, "Problem").value("VQSP", Problem::Vqsp).value("VQCS", Problem::Vqcs);
    py::enum_<Method>(m, "Method").value("AISO", Method::Aiso).value("VQA", Method::Vqa).value("EXACT", Method::Exact);
    py::enum_<OptimizerKind>(m, "Optimizer").value("SPSA", OptimizerKind::Spsa).value("POWELL", OptimizerKind::Powell);
    py::enum_<TargetMode>(m, "TargetMode").value("ANSATZ", TargetMode::Ansatz).value("HAAR", TargetMode::Haar);
    py::enum_<ShadowBackend>(m, "Backend").value("DENSE", ShadowBackend::Dense).value("MPS", ShadowBackend::Mps);
    py::enum_<Design>(m, "Design").value("ONE", Design::OneDesign).value("TWO", Design::TwoDesign);

    // Random states and pattern weights.
    m.def("haar_random_state", [](int n, uint64_t seed) {
        Rng rng(seed);
        return haar_random_state(n, rng).amplitudes();
    }, py::arg("n"), py::arg("seed"));
    m.def("pattern_weights", [](int n, int d) { return pattern_weights(BrickworkLayout(n, d)).weights(); }, py::arg("n"),
          py::arg("d"), "w(s) for every pattern s (bit n-1-q set when qubit q is non-identity).");
    m.def("monte_carlo_weight", [](int n, int d, uint64_t pattern, int64_t samples, uint64_t seed) {
        Rng rng(seed);
        return monte_carlo_weight(BrickworkLayout(n, d), pattern, samples, rng);
    }, py::arg("n"), py::arg("d"), py::arg("pattern"), py::arg("samples"), py::arg("seed"));
    m.def("apply_channel", [](int d, const Eigen::MatrixXcd &op) {
        const DenseOperator o = to_operator(op);
        return apply_channel(pattern_weights(BrickworkLayout(o.num_qubits(), d)), o).matrix();
    }, py::arg("d"), py::arg("operator"));
    m.def("apply_inverse_channel", [](int d, const Eigen::MatrixXcd &op) {
        const DenseOperator o = to_operator(op);
        return apply_inverse_channel(pattern_weights(BrickworkLayout(o.num_qubits(), d)), o).matrix();
    }, py::arg("d"), py::arg("operator"));

    // Planner and bounds.
    m.def("plan_samples", [](double delta, double epsilon, double mm, double c, double norm, Design design) {
        const SamplePlan p = plan_samples(delta, epsilon, mm, c, norm, design);
        return std::pair<int64_t, int64_t>{p.t1, p.t2};
    }, py::arg("delta"), py::arg("epsilon"), py::arg("m"), py::arg("c"), py::arg("frobenius_norm") = 1.0,
          py::arg("design") = Design::OneDesign, "Returns (T1, T2).");
    m.def("locally_scrambled_norm", [](int d, const Eigen::MatrixXcd &op, int64_t samples, uint64_t seed) {
        const DenseOperator o = to_operator(op);
        Rng rng(seed);
        return estimate_locally_scrambled_norm(BrickworkLayout(o.num_qubits(), d), o, samples, rng);
    }, py::arg("d"), py::arg("observable"), py::arg("samples"), py::arg("seed"), "Returns (estimate, stderr).");
    m.def("median_of_means", &median_of_means, py::arg("values"), py::arg("t1"), py::arg("t2"));

    // Ansatz.
    py::class_<AnsatzDescriptor>(m, "Ansatz")
        .def(py::init([](AnsatzFamily f, int n, int layers, BlockTemplate b) { return build_ansatz(f, n, layers, b); }),
             py::arg("family"), py::arg("n"), py::arg("layers"), py::arg("block") = BlockTemplate::Block4)
        .def_readonly("family", &AnsatzDescriptor::family)
        .def_readonly("n", &AnsatzDescriptor::n)
        .def_readonly("layers", &AnsatzDescriptor::layers)
        .def_readonly("num_params", &AnsatzDescriptor::num_params)
        .def_property_readonly("num_gates", [](const AnsatzDescriptor &a) { return a.gates.size(); })
        .def("unitary", [](const AnsatzDescriptor &a, const Eigen::VectorXd &p) { return ansatz_unitary(a, p).matrix(); })
        .def("apply", [](const AnsatzDescriptor &a, const Eigen::VectorXd &p, const Eigen::VectorXcd &psi, bool adjoint) {
            return apply_ansatz(a, p, to_state(psi), adjoint ? Direction::Adjoint : Direction::Forward).amplitudes();
        }, py::arg("params"), py::arg("state"), py::arg("adjoint") = false)
        .def("crossing_metric", &crossing_metric)
        .def("random_parameters", [](const AnsatzDescriptor &a, uint64_t seed) {
            Rng rng(seed);
            return random_parameters(a, rng);
        });

    // Cost functions and shadows.
    py::class_<CostFunction>(m, "CostFunction")
        .def(py::init([](Problem p, const AnsatzDescriptor &a, const Eigen::VectorXcd &target) {
            return make_cost(p, a, to_state(target));
        }), py::arg("problem"), py::arg("ansatz"), py::arg("target"))
        .def_property_readonly("num_qubits", &CostFunction::num_qubits)
        .def("exact", &exact_cost, py::arg("params"))
        .def("shots", [](const CostFunction &c, const Eigen::VectorXd &p, int64_t shots, uint64_t seed) {
            Rng rng(seed);
            return shot_cost(c, p, shots, rng);
        }, py::arg("params"), py::arg("shots"), py::arg("seed"))
        .def("shadow", [](const CostFunction &c, const Eigen::VectorXd &p, const ShadowSet &s) { return shadow_cost(c, p, s); },
             py::arg("params"), py::arg("shadows"));
    m.def("vectorize_unitary", [](const Eigen::MatrixXcd &u) { return vectorize_unitary(to_operator(u)).amplitudes(); });

    py::class_<ShadowSet>(m, "ShadowSet")
        .def_property_readonly("num_qubits", &ShadowSet::num_qubits)
        .def_property_readonly("t1", &ShadowSet::t1)
        .def_property_readonly("t2", &ShadowSet::t2)
        .def_property_readonly("copies", &ShadowSet::copies)
        .def_property_readonly("backend", &ShadowSet::backend)
        .def("estimate", [](const ShadowSet &s, const Eigen::MatrixXcd &o) {
            const DenseOperator op = to_operator(o);
            return estimate_expectation(s, [&op](const DenseOperator &mean) {
                return (op.matrix() * mean.matrix()).trace().real();
            });
        }, py::arg("observable"), "Median of means of tr(O rho_hat); dense backend.");
    m.def("acquire_shadows", [](const Eigen::VectorXcd &state, int d, int64_t t1, int64_t t2, uint64_t seed,
                                ShadowBackend backend) {
        const StateVector psi = to_state(state);
        const PatternWeightTable table = pattern_weights(BrickworkLayout(psi.num_qubits(), d));
        return acquire_shadow_set([&psi] { return psi; }, table, t1, t2, seed, nullptr, backend,
                                  backend == ShadowBackend::Mps);
    }, py::arg("state"), py::arg("d"), py::arg("t1"), py::arg("t2"), py::arg("seed"),
          py::arg("backend") = ShadowBackend::Dense);

    // Optimizers on Python callables.
    m.def("spsa_minimize", [](const std::function<double(const Eigen::VectorXd &)> &f, const Eigen::VectorXd &x0,
                              int64_t iterations, uint64_t seed) {
        SpsaConfig cfg;
        cfg.iterations = iterations;
        cfg.seed = seed;
        const OptResult r = spsa_minimize(f, x0, cfg);
        return std::pair<Eigen::VectorXd, size_t>{r.theta, r.trace.records.size()};
    }, py::arg("f"), py::arg("x0"), py::arg("iterations"), py::arg("seed") = 0, "Returns (theta, evaluations).");
    m.def("powell_minimize", [](const std::function<double(const Eigen::VectorXd &)> &f, const Eigen::VectorXd &x0,
                                int64_t max_evaluations) {
        PowellConfig cfg;
        cfg.max_evaluations = max_evaluations;
        const OptResult r = powell_minimize(f, x0, cfg);
        return std::pair<Eigen::VectorXd, size_t>{r.theta, r.trace.records.size()};
    }, py::arg("f"), py::arg("x0"), py::arg("max_evaluations"), "Returns (theta, evaluations).");

    // Experiments.
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("problem", &ExperimentConfig::problem)
        .def_readwrite("family", &ExperimentConfig::family)
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("layers", &ExperimentConfig::layers)
        .def_readwrite("shadow_depth", &ExperimentConfig::shadow_depth)
        .def_readwrite("method", &ExperimentConfig::method)
        .def_readwrite("budgets", &ExperimentConfig::budgets)
        .def_readwrite("optimizer", &ExperimentConfig::optimizer)
        .def_readwrite("spsa_iterations", &ExperimentConfig::spsa_iterations)
        .def_readwrite("powell_evaluations", &ExperimentConfig::powell_evaluations)
        .def_readwrite("instances", &ExperimentConfig::instances)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("t1", &ExperimentConfig::t1)
        .def_readwrite("target_family", &ExperimentConfig::target_family)
        .def_readwrite("target_layers", &ExperimentConfig::target_layers)
        .def_readwrite("target_mode", &ExperimentConfig::target_mode)
        .def_readwrite("interval", &ExperimentConfig::interval)
        .def_readwrite("backend", &ExperimentConfig::backend)
        .def("validate", &ExperimentConfig::validate)
        .def("evaluations_per_run", &ExperimentConfig::evaluations_per_run);
    m.def("run_instance", [](const ExperimentConfig &c, int instance, int64_t budget) {
        return run_to_dict(run_instance(c, instance, budget));
    }, py::arg("config"), py::arg("instance"), py::arg("budget"));
    m.def("run_instance_with_store", [](const ExperimentConfig &c, int instance, const std::string &path) {
        const ShadowSet set = shadow_set_from_store(read_shadow_store_file(path), c.backend);
        return run_to_dict(run_instance(c, instance, set.copies(), &set));
    }, py::arg("config"), py::arg("instance"), py::arg("store_path"));
    m.def("generate_shadow_store", [](const ExperimentConfig &c, int instance, int64_t t1, int64_t t2,
                                      const std::string &path) {
        write_shadow_store_file(path, generate_shadow_store(c, instance, t1, t2));
    }, py::arg("config"), py::arg("instance"), py::arg("t1"), py::arg("t2"), py::arg("path"));
}
