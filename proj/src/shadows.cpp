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


#include "aiso/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aiso {

std::string to_string(ShadowBackend b) { return b == ShadowBackend::Dense ? "dense" : "mps"; }

ShadowBackend parse_shadow_backend(std::string_view name) {
    if (name == "dense") return ShadowBackend::Dense;
    if (name == "mps") return ShadowBackend::Mps;
    throw std::invalid_argument("unknown shadow backend '" + std::string(name) + "'");
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
    return out;
}

void check_layout(const PatternWeightTable &table, const Snapshot &s, const char *who) {
    if (!(s.circuit.layout() == table.layout())) throw std::invalid_argument(std::string(who) + ": weight table / layout mismatch");
    if (s.outcome.size() != table.num_qubits()) throw std::invalid_argument(std::string(who) + ": outcome length mismatch");
}

// Ceiling that ignores representation error in the last few ulps
// (136 / 0.2^2 evaluates to 3400.0000000000005).
int64_t ceil_count(double v) {
    const double c = std::ceil(v * (1.0 - 1e-12));
    return std::max<int64_t>(1, static_cast<int64_t>(c));
}

// Samples v = tr(O rho_hat) and returns the mean of v^2 with its stderr.
std::pair<double, double> norm_samples(const BrickworkLayout &layout, const Eigen::VectorXd &coeffs,
                                       const StateVector *state, int64_t samples, Rng &rng) {
    if (samples < 2) throw std::invalid_argument("shadow norm: need at least 2 samples");
    const int n = layout.num_qubits();
    if (state != nullptr && state->num_qubits() != n) throw std::invalid_argument("shadow norm: state size mismatch");
    double mean = 0.0;
    double m2 = 0.0;
    Eigen::VectorXcd amp;
    for (int64_t i = 0; i < samples; ++i) {
        Snapshot s{BrickworkCircuit::sample(layout, rng), Bitstring()};
        uint64_t u;
        if (state == nullptr) {
            u = uniform_index(rng, 1ULL << n);
        } else {
            amp = state->amplitudes();
            s.circuit.apply_inplace(amp);
            u = sample_basis_index(amp, rng);
        }
        s.outcome = Bitstring(n, u);
        const double v = snapshot_value(s, coeffs);
        const double x = v * v;
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    const double var = m2 / static_cast<double>(samples - 1);
    return {mean, std::sqrt(var / static_cast<double>(samples))};
}

Eigen::VectorXd traceless_coefficients(const BrickworkLayout &layout, const DenseOperator &observable,
                                       PatternWeightTable &table_out) {
    if (observable.num_qubits() != layout.num_qubits()) throw std::invalid_argument("shadow norm: observable size mismatch");
    const double scale = std::max(1.0, observable.frobenius_norm());
    if (std::abs(observable.trace()) > 1e-9 * scale) {
        throw std::invalid_argument("shadow norm: observable must be traceless (pass the traceless part)");
    }
    table_out = pattern_weights(layout);
    return inverse_channel_coefficients(table_out, observable);
}

}  // namespace

std::vector<Snapshot> acquire_snapshots(const StatePreparer &prepare, const BrickworkLayout &layout, int64_t count,
                                        Rng &rng, BudgetLedger *ledger, const AcquireOptions &options) {
    if (count < 1) throw std::invalid_argument("acquire_snapshots: count must be >= 1");
    if (!options.uniform_outcomes && !prepare) throw std::invalid_argument("acquire_snapshots: no state preparer");
    if (ledger != nullptr) ledger->charge_acquisition(count);
    const int n = layout.num_qubits();
    std::vector<Snapshot> out;
    out.reserve(static_cast<size_t>(count));
    for (int64_t i = 0; i < count; ++i) {
        BrickworkCircuit circuit =
            options.identity_blocks ? BrickworkCircuit::identity(layout) : BrickworkCircuit::sample(layout, rng);
        uint64_t u;
        if (options.uniform_outcomes) {
            u = uniform_index(rng, 1ULL << n);
        } else {
            StateVector psi = prepare();
            if (psi.num_qubits() != n) throw std::invalid_argument("acquire_snapshots: prepared state size mismatch");
            Eigen::VectorXcd &amp = psi.mutable_amplitudes();
            circuit.apply_inplace(amp);
            u = sample_basis_index(amp, rng);
        }
        out.push_back(Snapshot{std::move(circuit), Bitstring(n, u)});
    }
    return out;
}

ShadowAccumulator::ShadowAccumulator(int n) : n_(n) {
    if (n < 1 || n > kMaxDenseShadowQubits) throw std::invalid_argument("ShadowAccumulator: n out of dense range");
    sums_.assign(size_t{1} << (2 * n), 0);
}

void ShadowAccumulator::add(const Snapshot &snapshot) {
    if (snapshot.outcome.size() != n_) throw std::invalid_argument("ShadowAccumulator: outcome length mismatch");
    const std::vector<SignedPauli> gens = stabilizer_generators(snapshot.circuit, snapshot.outcome);
    const int n = n_;
    int64_t *sums = sums_.data();
    for_each_stabilizer(gens.data(), n, [sums, n](uint64_t x, uint64_t z, int sign) { sums[(x << n) | z] += sign; });
    ++count_;
}

DenseOperator ShadowAccumulator::mean(const PatternWeightTable &table) const {
    if (table.num_qubits() != n_) throw std::invalid_argument("ShadowAccumulator::mean: weight table size mismatch");
    if (count_ == 0) throw std::logic_error("ShadowAccumulator::mean: no snapshots");
    const uint64_t dim = 1ULL << n_;
    const double norm = 1.0 / (static_cast<double>(dim) * static_cast<double>(count_));
    Eigen::VectorXd c(static_cast<Eigen::Index>(dim * dim));
    for (uint64_t x = 0; x < dim; ++x) {
        for (uint64_t z = 0; z < dim; ++z) {
            const uint64_t i = (x << n_) | z;
            const int64_t s = sums_[i];
            c[static_cast<Eigen::Index>(i)] = s == 0 ? 0.0 : static_cast<double>(s) * table.inverse_weight(x | z) * norm;
        }
    }
    return DenseOperator(n_, pauli_compose(c, n_));
}

DenseOperator materialize_dense(const Snapshot &snapshot, const PatternWeightTable &table) {
    check_layout(table, snapshot, "materialize_dense");
    ShadowAccumulator acc(table.num_qubits());
    acc.add(snapshot);
    return acc.mean(table);
}

Mps snapshot_state_mps(const Snapshot &snapshot) {
    const BrickworkLayout &layout = snapshot.circuit.layout();
    if (snapshot.outcome.size() != layout.num_qubits()) throw std::invalid_argument("snapshot_state_mps: outcome length mismatch");
    const auto &tables = clifford2_tables();
    Mps psi = Mps::product_state(snapshot.outcome);
    for (int l = layout.depth() - 1; l >= 0; --l) {
        const std::vector<int> &qs = layout.layer(l);
        for (size_t i = 0; i < qs.size(); ++i) {
            const int idx = snapshot.circuit.block(l, static_cast<int>(i));
            if (idx == kIdentityClifford2) continue;
            psi.apply_2q_adjacent(qs[i], tables[static_cast<size_t>(idx)].unitary.adjoint());
        }
    }
    return psi;
}

Mpo materialize_mps(const Snapshot &snapshot, const ChannelMpo &channel) {
    const int n = snapshot.circuit.layout().num_qubits();
    if (channel.num_qubits() != n) throw std::invalid_argument("materialize_mps: channel size mismatch");
    const Mps psi = snapshot_state_mps(snapshot);
    std::vector<std::array<Eigen::MatrixXcd, 4>> sites;
    sites.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const auto &a = psi.site(k);
        const Eigen::MatrixXcd c0 = channel.core(k)[0].cast<cplx>();
        const Eigen::MatrixXcd c1 = channel.core(k)[1].cast<cplx>();
        // Local block of |phi><phi|, then split into identity and traceless parts.
        std::array<Eigen::MatrixXcd, 4> o;
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) o[static_cast<size_t>(2 * x + y)] = kron(a[static_cast<size_t>(x)], a[static_cast<size_t>(y)].conjugate());
        }
        const Eigen::MatrixXcd half_trace = 0.5 * (o[0] + o[3]);
        std::array<Eigen::MatrixXcd, 4> w;
        for (int p = 0; p < 4; ++p) {
            const bool diag = p == 0 || p == 3;
            const Eigen::MatrixXcd p0 = diag ? half_trace : Eigen::MatrixXcd::Zero(o[0].rows(), o[0].cols());
            const Eigen::MatrixXcd p1 = o[static_cast<size_t>(p)] - p0;
            w[static_cast<size_t>(p)] = kron(c0, p0) + kron(c1, p1);
        }
        sites.push_back(std::move(w));
    }
    Mpo out(std::move(sites));
    out.compress();
    return out;
}

Eigen::VectorXd inverse_channel_coefficients(const PatternWeightTable &table, const DenseOperator &observable) {
    const int n = table.num_qubits();
    if (observable.num_qubits() != n) throw std::invalid_argument("inverse_channel_coefficients: size mismatch");
    if (n > kMaxDenseShadowQubits) throw std::invalid_argument("inverse_channel_coefficients: n out of dense range");
    if (!observable.is_hermitian()) throw std::invalid_argument("inverse_channel_coefficients: observable not Hermitian");
    const Eigen::VectorXcd c = pauli_decompose(observable.matrix(), n);
    const uint64_t dim = 1ULL << n;
    Eigen::VectorXd out(c.size());
    for (uint64_t x = 0; x < dim; ++x) {
        for (uint64_t z = 0; z < dim; ++z) {
            const auto i = static_cast<Eigen::Index>((x << n) | z);
            out[i] = c[i].real() * table.inverse_weight(x | z);
        }
    }
    return out;
}

double snapshot_value(const Snapshot &snapshot, const Eigen::VectorXd &coefficients) {
    const int n = snapshot.outcome.size();
    if (coefficients.size() != static_cast<Eigen::Index>(1ULL << (2 * n))) throw std::invalid_argument("snapshot_value: coefficient size mismatch");
    const std::vector<SignedPauli> gens = stabilizer_generators(snapshot.circuit, snapshot.outcome);
    const double *c = coefficients.data();
    double acc = 0.0;
    for_each_stabilizer(gens.data(), n, [&acc, c, n](uint64_t x, uint64_t z, int sign) { acc += sign * c[(x << n) | z]; });
    return acc;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    const size_t k = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
    const double hi = values[k];
    if (values.size() % 2 == 1) return hi;
    const double lo = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k));
    return 0.5 * (lo + hi);
}

double median_of_means(const std::vector<double> &values, int64_t t1, int64_t t2) {
    if (t1 < 1 || t2 < 1) throw std::invalid_argument("median_of_means: T1, T2 must be >= 1");
    if (values.empty() || values.size() != static_cast<size_t>(t1 * t2)) throw std::invalid_argument("median_of_means: expected T1 * T2 values");
    std::vector<double> means(static_cast<size_t>(t1));
    for (int64_t g = 0; g < t1; ++g) {
        double s = 0.0;
        for (int64_t j = 0; j < t2; ++j) s += values[static_cast<size_t>(g * t2 + j)];
        means[static_cast<size_t>(g)] = s / static_cast<double>(t2);
    }
    return median(std::move(means));
}

ShadowSet ShadowSet::from_snapshots(const PatternWeightTable &table, int64_t t1, int64_t t2,
                                    std::vector<Snapshot> snapshots, ShadowBackend backend) {
    if (t1 < 1 || t2 < 1) throw std::invalid_argument("ShadowSet: T1, T2 must be >= 1");
    if (snapshots.size() != static_cast<size_t>(t1 * t2)) throw std::invalid_argument("ShadowSet: expected T1 * T2 snapshots");
    for (const Snapshot &s : snapshots) check_layout(table, s, "ShadowSet");
    ShadowSet set;
    set.layout_ = table.layout();
    set.t1_ = t1;
    set.t2_ = t2;
    set.backend_ = backend;
    if (backend == ShadowBackend::Dense) {
        for (int64_t g = 0; g < t1; ++g) {
            ShadowAccumulator acc(table.num_qubits());
            for (int64_t j = 0; j < t2; ++j) acc.add(snapshots[static_cast<size_t>(g * t2 + j)]);
            set.group_means_.push_back(acc.mean(table));
        }
    } else {
        const ChannelMpo channel = channel_mpo(table);
        set.mpos_.reserve(snapshots.size());
        for (const Snapshot &s : snapshots) set.mpos_.push_back(materialize_mps(s, channel));
    }
    set.snapshots_ = std::move(snapshots);
    return set;
}

ShadowSet ShadowSet::from_group_means(BrickworkLayout layout, int64_t t1, int64_t t2,
                                      std::vector<DenseOperator> group_means) {
    if (t1 < 1 || t2 < 1) throw std::invalid_argument("ShadowSet: T1, T2 must be >= 1");
    if (group_means.size() != static_cast<size_t>(t1)) throw std::invalid_argument("ShadowSet: expected T1 group means");
    for (const auto &g : group_means) {
        if (g.num_qubits() != layout.num_qubits()) throw std::invalid_argument("ShadowSet: group mean size mismatch");
    }
    ShadowSet set;
    set.layout_ = std::move(layout);
    set.t1_ = t1;
    set.t2_ = t2;
    set.group_means_ = std::move(group_means);
    return set;
}

ShadowSet acquire_shadow_set(const StatePreparer &prepare, const PatternWeightTable &table, int64_t t1, int64_t t2,
                             uint64_t seed, BudgetLedger *ledger, ShadowBackend backend, bool keep_snapshots) {
    if (t1 < 1 || t2 < 1) throw std::invalid_argument("acquire_shadow_set: T1, T2 must be >= 1");
    if (ledger != nullptr) ledger->charge_acquisition(t1 * t2);
    const BrickworkLayout &layout = table.layout();
    if (backend == ShadowBackend::Mps || keep_snapshots) {
        std::vector<Snapshot> all;
        all.reserve(static_cast<size_t>(t1 * t2));
        for (int64_t g = 0; g < t1; ++g) {
            Rng rng = make_rng(seed, static_cast<uint64_t>(g));
            for (Snapshot &s : acquire_snapshots(prepare, layout, t2, rng)) all.push_back(std::move(s));
        }
        return ShadowSet::from_snapshots(table, t1, t2, std::move(all), backend);
    }
    // Streaming: snapshots are folded into the group sums and dropped.
    std::vector<DenseOperator> means;
    for (int64_t g = 0; g < t1; ++g) {
        Rng rng = make_rng(seed, static_cast<uint64_t>(g));
        ShadowAccumulator acc(table.num_qubits());
        const int64_t chunk = 4096;
        for (int64_t done = 0; done < t2; done += chunk) {
            for (const Snapshot &s : acquire_snapshots(prepare, layout, std::min(chunk, t2 - done), rng)) acc.add(s);
        }
        means.push_back(acc.mean(table));
    }
    return ShadowSet::from_group_means(layout, t1, t2, std::move(means));
}

double estimate_expectation(const ShadowSet &set, const std::function<double(const DenseOperator &)> &evaluator) {
    if (set.group_means().empty()) throw std::logic_error("estimate_expectation: group means not materialized");
    std::vector<double> v;
    v.reserve(set.group_means().size());
    for (const auto &g : set.group_means()) v.push_back(evaluator(g));
    return median(std::move(v));
}

double estimate_expectation_mps(const ShadowSet &set, const std::function<double(const Mpo &)> &evaluator) {
    if (set.snapshot_mpos().empty()) throw std::logic_error("estimate_expectation_mps: set has no MPS shadows");
    std::vector<double> v;
    v.reserve(set.snapshot_mpos().size());
    for (const auto &m : set.snapshot_mpos()) v.push_back(evaluator(m));
    return median_of_means(v, set.t1(), set.t2());
}

SamplePlan plan_samples(double delta, double epsilon, double m, double c, double frobenius_norm, Design design) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("plan_samples: delta must lie in (0, 1)");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("plan_samples: epsilon must lie in (0, 1)");
    if (!(c >= 1.0)) throw std::invalid_argument("plan_samples: C must be >= 1");
    if (!(frobenius_norm >= 0.0)) throw std::invalid_argument("plan_samples: negative Frobenius norm");
    SamplePlan p{0, 0, delta, epsilon, m, c, frobenius_norm, design};
    const double f2 = frobenius_norm * frobenius_norm;
    if (design == Design::OneDesign) {
        const double denom = m * delta - 1.0;
        if (!(denom > 1e-12)) throw std::invalid_argument("plan_samples: need m > 1/delta for a 1-design");
        p.t1 = ceil_count(2.0 * std::log(2.0 * (m - 1.0) * c / denom));
        p.t2 = ceil_count(136.0 / (epsilon * epsilon) * m * f2);
    } else {
        const double denom = m * m * delta - 1.0;
        if (!(denom > 1e-12)) throw std::invalid_argument("plan_samples: need m > 1/sqrt(delta) for a 2-design");
        p.t1 = ceil_count(2.0 * std::log(2.0 * (m * m - 1.0) * c / denom));
        p.t2 = ceil_count(136.0 / (epsilon * epsilon) * (2.0 * m + 1.0) * f2);
    }
    return p;
}

std::pair<double, double> estimate_locally_scrambled_norm(const BrickworkLayout &layout, const DenseOperator &observable,
                                                          int64_t samples, Rng &rng) {
    return estimate_state_shadow_norm(layout, observable, nullptr, samples, rng);
}

std::pair<double, double> estimate_state_shadow_norm(const BrickworkLayout &layout, const DenseOperator &observable,
                                                     const StateVector *state, int64_t samples, Rng &rng) {
    PatternWeightTable table;
    const Eigen::VectorXd coeffs = traceless_coefficients(layout, observable, table);
    return norm_samples(layout, coeffs, state, samples, rng);
}

VarianceBoundReport verify_variance_bound(const BrickworkLayout &layout, const DenseOperator &observable,
                                          int num_states, int64_t samples_per_state, Rng &rng) {
    if (num_states < 2) throw std::invalid_argument("verify_variance_bound: need at least 2 states");
    VarianceBoundReport r;
    r.num_states = num_states;
    r.samples_per_state = samples_per_state;
    r.frobenius_norm = observable.frobenius_norm();
    PatternWeightTable table;
    const Eigen::VectorXd coeffs = traceless_coefficients(layout, observable.traceless_part(), table);
    std::vector<double> est(static_cast<size_t>(num_states));
    double noise = 0.0;
    for (int i = 0; i < num_states; ++i) {
        const StateVector sigma = haar_random_state(layout.num_qubits(), rng);
        const auto [e, se] = norm_samples(layout, coeffs, &sigma, samples_per_state, rng);
        est[static_cast<size_t>(i)] = e;
        noise += se * se;
    }
    const double n = num_states;
    double mean = 0.0;
    for (double e : est) mean += e;
    mean /= n;
    double m2 = 0.0;
    double m4 = 0.0;
    for (double e : est) {
        const double d2 = (e - mean) * (e - mean);
        m2 += d2;
        m4 += d2 * d2;
    }
    r.mean_norm = mean;
    r.variance = m2 / (n - 1.0);
    r.variance_noise_corrected = r.variance - noise / n;
    // Large-sample stderr of the sample variance.
    const double mu4 = m4 / n;
    const double mu2 = m2 / n;
    r.variance_stderr = std::sqrt(std::max(0.0, mu4 - mu2 * mu2) / n);
    r.ci_upper = r.variance + 1.96 * r.variance_stderr;
    const double f2 = r.frobenius_norm * r.frobenius_norm;
    r.bound = 64.0 * f2 * f2;
    r.bound_alt_exponent = 64.0 * f2;
    r.satisfied = r.ci_upper <= r.bound;
    return r;
}

}  // namespace aiso
