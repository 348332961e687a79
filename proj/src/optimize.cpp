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


#include "aiso/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <utility>

#include "aiso/budget.hpp"

namespace aiso {

namespace {

struct StopSearch {};

// Records every call, enforces the evaluation cap and keeps the best point seen.
class Counter {
  public:
    Counter(const Objective &f, OptTrace &trace, int64_t max_evals, const CopiesProbe &copies)
        : f_(f), trace_(trace), max_(max_evals), copies_(copies) {}

    double operator()(const Eigen::VectorXd &x) {
        if (trace_.evaluations() >= max_) throw StopSearch{};
        double v;
        try {
            v = f_(x);
        } catch (const BudgetExhausted &) {
            trace_.budget_exhausted = true;
            throw StopSearch{};
        }
        trace_.records.push_back(EvalRecord{trace_.evaluations(), hash_params(x), v, copies_ ? copies_() : 0});
        if (best_x_.size() == 0 || v < best_f_) {
            best_f_ = v;
            best_x_ = x;
        }
        return v;
    }

    const Eigen::VectorXd &best_x() const { return best_x_; }

  private:
    const Objective &f_;
    OptTrace &trace_;
    int64_t max_;
    const CopiesProbe &copies_;
    double best_f_ = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x_;
};

constexpr double kGold = 1.618033988749895;
constexpr double kCGold = 0.3819660112501051;

// Bracket a minimum of g starting from (0, g0) and (1, g(1)).
template <typename G>
void bracket(G &g, double &a, double &b, double &c, double &fa, double &fb, double &fc) {
    constexpr double kLimit = 100.0;
    constexpr double kTiny = 1e-20;
    fb = g(b);
    if (fb > fa) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    c = b + kGold * (b - a);
    fc = g(c);
    while (fb > fc) {
        const double r = (b - a) * (fb - fc);
        const double q = (b - c) * (fb - fa);
        const double denom = 2.0 * std::copysign(std::max(std::abs(q - r), kTiny), q - r);
        double u = b - ((b - c) * q - (b - a) * r) / denom;
        const double ulim = b + kLimit * (c - b);
        double fu;
        if ((b - u) * (u - c) > 0.0) {
            fu = g(u);
            if (fu < fc) {
                a = b;
                b = u;
                fa = fb;
                fb = fu;
                return;
            }
            if (fu > fb) {
                c = u;
                fc = fu;
                return;
            }
            u = c + kGold * (c - b);
            fu = g(u);
        } else if ((c - u) * (u - ulim) > 0.0) {
            fu = g(u);
            if (fu < fc) {
                b = c;
                c = u;
                u = c + kGold * (c - b);
                fb = fc;
                fc = fu;
                fu = g(u);
            }
        } else if ((u - ulim) * (ulim - c) >= 0.0) {
            u = ulim;
            fu = g(u);
        } else {
            u = c + kGold * (c - b);
            fu = g(u);
        }
        a = b;
        b = c;
        c = u;
        fa = fb;
        fb = fc;
        fc = fu;
    }
}

// Brent's parabolic / golden-section search inside the bracket (a, b, c).
template <typename G>
std::pair<double, double> brent(G &g, double ax, double bx, double cx, double fbx, double tol) {
    constexpr int kMaxIter = 100;
    constexpr double kZeps = 1e-12;
    double a = std::min(ax, cx);
    double b = std::max(ax, cx);
    double x = bx, w = bx, v = bx;
    double fx = fbx, fw = fbx, fv = fbx;
    double d = 0.0, e = 0.0;
    for (int it = 0; it < kMaxIter; ++it) {
        const double xm = 0.5 * (a + b);
        const double tol1 = tol * std::abs(x) + kZeps;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
        if (std::abs(e) > tol1) {
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double etemp = e;
            e = d;
            if (std::abs(p) >= std::abs(0.5 * q * etemp) || p <= q * (a - x) || p >= q * (b - x)) {
                e = x >= xm ? a - x : b - x;
                d = kCGold * e;
            } else {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
            }
        } else {
            e = x >= xm ? a - x : b - x;
            d = kCGold * e;
        }
        const double u = std::abs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
        const double fu = g(u);
        if (fu <= fx) {
            if (u >= x) {
                a = x;
            } else {
                b = x;
            }
            v = w;
            w = x;
            x = u;
            fv = fw;
            fw = fx;
            fx = fu;
        } else {
            if (u < x) {
                a = u;
            } else {
                b = u;
            }
            if (fu <= fw || w == x) {
                v = w;
                w = u;
                fv = fw;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    return {x, fx};
}

// Minimizes along `dir` from x (value fx); updates x, fx in place.
void line_minimize(Counter &f, Eigen::VectorXd &x, double &fx, const Eigen::VectorXd &dir, double tol) {
    if (dir.squaredNorm() == 0.0) return;
    auto g = [&](double t) { return f(x + t * dir); };
    double a = 0.0, b = 1.0, c = 0.0;
    double fa = fx, fb = 0.0, fc = 0.0;
    bracket(g, a, b, c, fa, fb, fc);
    const auto [t, ft] = brent(g, a, b, c, fb, tol);
    if (ft < fx) {
        x += t * dir;
        fx = ft;
    }
}

}  // namespace

uint64_t hash_params(const Eigen::VectorXd &theta) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        uint64_t bits;
        std::memcpy(&bits, &theta[i], sizeof bits);
        for (int k = 0; k < 8; ++k) {
            h ^= (bits >> (8 * k)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

double spsa_gain_a(const SpsaConfig &config, int64_t r) {
    return config.a_scale * std::pow(static_cast<double>(r), -config.a_exponent);
}

double spsa_gain_c(const SpsaConfig &config, int64_t r) {
    return config.c_scale * std::pow(static_cast<double>(r), -config.c_exponent);
}

OptResult spsa_minimize(const Objective &f, Eigen::VectorXd theta0, const SpsaConfig &config, const CopiesProbe &copies) {
    if (config.iterations < 1) throw std::invalid_argument("spsa_minimize: iterations must be >= 1");
    OptResult out;
    out.theta = std::move(theta0);
    Counter eval(f, out.trace, std::numeric_limits<int64_t>::max(), copies);
    Rng rng = make_rng(config.seed, 0);
    const Eigen::Index dim = out.theta.size();
    Eigen::VectorXd delta(dim);
    try {
        for (int64_t r = 1; r <= config.iterations; ++r) {
            const double a = spsa_gain_a(config, r);
            const double c = spsa_gain_c(config, r);
            for (Eigen::Index i = 0; i < dim; ++i) delta[i] = (rng() & 1) ? 1.0 : -1.0;
            const double fp = eval(out.theta + c * delta);
            const double fm = eval(out.theta - c * delta);
            // 1 / delta_i == delta_i for +-1 entries.
            out.theta -= a * ((fp - fm) / (2.0 * c)) * delta;
        }
    } catch (const StopSearch &) {
    }
    return out;
}

OptResult powell_minimize(const Objective &f, Eigen::VectorXd theta0, const PowellConfig &config,
                          const CopiesProbe &copies) {
    const Eigen::Index n = theta0.size();
    if (n < 1) throw std::invalid_argument("powell_minimize: empty parameter vector");
    if (config.max_evaluations < n + 1) throw std::invalid_argument("powell_minimize: max_evaluations must be >= dimension + 1");
    OptResult out;
    Counter eval(f, out.trace, config.max_evaluations, copies);
    const int period = config.reset_period > 0 ? config.reset_period : static_cast<int>(n);
    Eigen::MatrixXd dirs = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd x = std::move(theta0);
    try {
        double fx = eval(x);
        for (int64_t iter = 1;; ++iter) {
            if (iter > 1 && (iter - 1) % period == 0) dirs.setIdentity();
            const Eigen::VectorXd x0 = x;
            const double f0 = fx;
            double biggest = 0.0;
            Eigen::Index ibig = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double before = fx;
                line_minimize(eval, x, fx, dirs.col(i), config.line_tol);
                if (before - fx > biggest) {
                    biggest = before - fx;
                    ibig = i;
                }
            }
            if (2.0 * (f0 - fx) <= config.ftol * (std::abs(f0) + std::abs(fx)) + 1e-300) {
                if (!config.restart_on_convergence) break;
                dirs.setIdentity();
                continue;
            }
            const Eigen::VectorXd step = x - x0;
            const double fe = eval(x + step);
            if (fe < f0) {
                const double t = 2.0 * (f0 - 2.0 * fx + fe) * std::pow(f0 - fx - biggest, 2) - biggest * std::pow(f0 - fe, 2);
                if (t < 0.0) {
                    line_minimize(eval, x, fx, step, config.line_tol);
                    dirs.col(ibig) = dirs.col(n - 1);
                    dirs.col(n - 1) = step;
                }
            }
        }
    } catch (const StopSearch &) {
    }
    out.theta = eval.best_x().size() ? eval.best_x() : x;
    return out;
}

std::vector<double> interval_min_reduce(const OptTrace &trace, int64_t interval) {
    if (interval < 1) throw std::invalid_argument("interval_min_reduce: interval must be >= 1");
    std::vector<double> out;
    for (size_t i = 0; i < trace.records.size(); ++i) {
        const double v = trace.records[i].cost;
        if (i % static_cast<size_t>(interval) == 0) {
            out.push_back(v);
        } else {
            out.back() = std::min(out.back(), v);
        }
    }
    return out;
}

}  // namespace aiso
