#pragma once

// Maximizes c_total = 2 * sum(c_i) over the layer parameters.
//
// Local method: SQP with a damped BFGS approximation of the Lagrangian
// Hessian, central finite-difference constraint Jacobians, elastic QP
// subproblems and an l1 merit line search. Restarts warm-start from the
// previous result; every restart is verified in extended precision and only
// verified vectors are reported.

#include "posetramsey/layer_model.hpp"
#include "posetramsey/qp_solver.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace posetramsey {

struct OptimizerConfig {
    int restarts = 3;
    double epsilon = 1e-6;
    double tolerance = 1e-9;
    double initial_c = 0.001;
    double initial_h = 0.0001;
    std::uint64_t seed = 0;
    bool use_monotonicity_hints = true;

    double c_upper = 2.0;
    double h_upper = 1.0;
    /// Magnitude of the seeded perturbation applied before restarts 2..R.
    double restart_jitter = 0.0;
    int max_iterations = 400;
    double fd_step = 1e-7;
    /// Constraints are driven to epsilon + guard so the double-precision
    /// solution still clears epsilon after re-evaluation.
    double feasibility_guard = 1e-9;

    void validate() const {
        if (restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
        if (!(epsilon > 0.0)) throw std::invalid_argument("OptimizerConfig: epsilon must be > 0");
        if (!(tolerance > 0.0)) throw std::invalid_argument("OptimizerConfig: tolerance must be > 0");
        if (c_upper < 0.0 || h_upper < 0.0) throw std::invalid_argument("OptimizerConfig: negative upper bound");
    }
};

struct RestartRecord {
    int restart = 0;
    double c_total = 0.0;
    bool verified = false;
    int iterations = 0;
};

struct OptimizeResult {
    double best_c_total = 0.0;
    ParamVector best_params;
    bool verified = false;
    std::vector<RestartRecord> history;
};

/// c = 2 * sum(c_i).
inline double objective(const ParamVector& params) {
    return 2.0 * std::accumulate(params.c.begin(), params.c.end(), 0.0);
}

/// Extended-precision check used for the verdict on every restart.
inline bool verify_params(const LayerSchedule& schedule, const ParamVector& params, double epsilon) {
    if (!params.within_bounds()) return false;
    const auto margins = constraint_margins_as<ExtendedReal>(schedule, params);
    return margins.certifiable(ExtendedReal(epsilon));
}

namespace detail {

using Vector = Eigen::VectorXd;

/// The nonlinear program in flat form: x = [c; h], g(x) >= 0.
class LayerProgram {
public:
    LayerProgram(const LayerSchedule& schedule, const OptimizerConfig& config)
        : schedule_(schedule), config_(config), L_(schedule.size()) {
        for (const Layer& layer : schedule.layers()) {
            red_level_.push_back(to_real<double>(layer.red_level));
            red_climb_.push_back(to_real<double>(layer.red_climb));
            blue_level_.push_back(to_real<double>(layer.blue_level));
            blue_climb_.push_back(to_real<double>(layer.blue_climb));
            bottom_.push_back(to_real<double>(layer.bottom));
            top_.push_back(to_real<double>(layer.top));
        }
    }

    [[nodiscard]] std::size_t variables() const { return 2 * L_; }
    [[nodiscard]] std::size_t constraints() const {
        const std::size_t hints = config_.use_monotonicity_hints && L_ > 1 ? 2 * (L_ - 1) : 0;
        return 4 * L_ + hints;
    }

    /// intersection, probability, room_for_h, subfamily per layer (minus the
    /// target margin), then the optional c-increasing / h-decreasing hints.
    void evaluate(const Vector& x, Vector& g) const {
        g.resize(static_cast<Eigen::Index>(constraints()));
        const double target = config_.epsilon + config_.feasibility_guard;
        double c_sum = 0.0;
        for (std::size_t i = 0; i < L_; ++i) c_sum += x[static_cast<Eigen::Index>(i)];
        const double N = 2.0 + 2.0 * c_sum;
        double c_below = 0.0;
        for (std::size_t i = 0; i < L_; ++i) {
            const double ci = x[static_cast<Eigen::Index>(i)];
            const double hi = x[static_cast<Eigen::Index>(L_ + i)];
            const double s = bottom_[i] + c_below + red_climb_[i];
            const double top = top_[i] + c_below + ci;
            const double room = N - top - 1.0 + blue_level_[i];
            const double width = ci + hi;
            const double kt = entropy_exponent(blue_level_[i], blue_climb_[i]) + entropy_exponent(room, hi);
            const double nt = entropy_exponent(N - s, width);
            const double ks = entropy_exponent(1.0 - red_level_[i], red_climb_[i]);
            const double nsect = entropy_exponent(red_climb_[i], width) +
                                 entropy_exponent(1.0 - red_level_[i] - red_climb_[i], width);
            const auto row = static_cast<Eigen::Index>(4 * i);
            g[row + 0] = red_climb_[i] - red_climb_[i] * red_climb_[i] / (1.0 - red_level_[i]) - width - target;
            g[row + 1] = kt - nt - target;
            g[row + 2] = room - hi - target;
            g[row + 3] = ks - nsect - target;
            c_below += ci;
        }
        if (config_.use_monotonicity_hints && L_ > 1) {
            auto row = static_cast<Eigen::Index>(4 * L_);
            for (std::size_t i = 0; i + 1 < L_; ++i) {
                const auto a = static_cast<Eigen::Index>(i);
                g[row++] = x[a + 1] - x[a];
            }
            for (std::size_t i = 0; i + 1 < L_; ++i) {
                const auto a = static_cast<Eigen::Index>(L_ + i);
                g[row++] = x[a] - x[a + 1];
            }
        }
    }

    /// Central differences, one coordinate at a time; exact zeros are dropped.
    qp::SparseMatrix jacobian(const Vector& x) const {
        const auto n = static_cast<Eigen::Index>(variables());
        const auto m = static_cast<Eigen::Index>(constraints());
        std::vector<Eigen::Triplet<double>> entries;
        Vector xp = x, xm = x, gp, gm;
        const double step = config_.fd_step;
        for (Eigen::Index j = 0; j < n; ++j) {
            xp[j] = x[j] + step;
            xm[j] = x[j] - step;
            evaluate(xp, gp);
            evaluate(xm, gm);
            xp[j] = x[j];
            xm[j] = x[j];
            for (Eigen::Index r = 0; r < m; ++r) {
                const double diff = gp[r] - gm[r];
                if (diff != 0.0) entries.emplace_back(r, j, diff / (2.0 * step));
            }
        }
        qp::SparseMatrix J(m, n);
        J.setFromTriplets(entries.begin(), entries.end());
        return J;
    }

    [[nodiscard]] Vector objective_gradient() const {
        Vector grad = Vector::Zero(static_cast<Eigen::Index>(variables()));
        grad.head(static_cast<Eigen::Index>(L_)).setConstant(-1.0);
        return grad;
    }

    [[nodiscard]] double objective_value(const Vector& x) const {
        return -x.head(static_cast<Eigen::Index>(L_)).sum();
    }

    [[nodiscard]] Vector lower() const { return Vector::Zero(static_cast<Eigen::Index>(variables())); }
    [[nodiscard]] Vector upper() const {
        Vector u(static_cast<Eigen::Index>(variables()));
        u.head(static_cast<Eigen::Index>(L_)).setConstant(config_.c_upper);
        u.tail(static_cast<Eigen::Index>(L_)).setConstant(config_.h_upper);
        return u;
    }

    [[nodiscard]] ParamVector unpack(const Vector& x) const {
        ParamVector p = ParamVector::zeros(L_);
        const Vector lo = lower(), hi = upper();
        for (std::size_t i = 0; i < L_; ++i) {
            const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(L_ + i);
            p.c[i] = std::clamp(x[a], lo[a], hi[a]);
            p.h[i] = std::clamp(x[b], lo[b], hi[b]);
        }
        return p;
    }

    [[nodiscard]] Vector pack(const ParamVector& p) const {
        Vector x(static_cast<Eigen::Index>(variables()));
        for (std::size_t i = 0; i < L_; ++i) {
            x[static_cast<Eigen::Index>(i)] = p.c[i];
            x[static_cast<Eigen::Index>(L_ + i)] = p.h[i];
        }
        return x;
    }

private:
    const LayerSchedule& schedule_;
    const OptimizerConfig& config_;
    std::size_t L_;
    std::vector<double> red_level_, red_climb_, blue_level_, blue_climb_, bottom_, top_;
};

inline double violation(const Vector& g) {
    return (-g).cwiseMax(0.0).sum();
}

struct SqpOutcome {
    Vector x;
    int iterations = 0;
};

/// One SQP run from x0.
inline SqpOutcome run_sqp(const LayerProgram& prog, Vector x, const OptimizerConfig& config,
                          const std::function<void(const std::string&)>& log) {
    const auto n = static_cast<Eigen::Index>(prog.variables());
    const auto m = static_cast<Eigen::Index>(prog.constraints());
    const Vector lo = prog.lower(), hi = prog.upper();
    x = x.cwiseMax(lo).cwiseMin(hi);

    const Vector grad_f = prog.objective_gradient();
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
    double penalty = 10.0;

    Vector g;
    prog.evaluate(x, g);
    qp::SparseMatrix J = prog.jacobian(x);

    SqpOutcome out;
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        out.iterations = iter + 1;

        // Elastic variables for rows that are currently violated keep the
        // linearization feasible.
        std::vector<Eigen::Index> elastic;
        for (Eigen::Index r = 0; r < m; ++r) {
            if (g[r] < 0.0) elastic.push_back(r);
        }
        const auto ne = static_cast<Eigen::Index>(elastic.size());

        qp::Problem sub;
        sub.Q = Eigen::MatrixXd::Zero(n + ne, n + ne);
        sub.Q.topLeftCorner(n, n) = B;
        sub.q.resize(n + ne);
        sub.q.head(n) = grad_f;
        sub.q.tail(ne).setConstant(penalty);
        {
            std::vector<Eigen::Triplet<double>> entries;
            entries.reserve(static_cast<std::size_t>(J.nonZeros() + ne));
            for (Eigen::Index r = 0; r < J.outerSize(); ++r) {
                for (qp::SparseMatrix::InnerIterator it(J, r); it; ++it) entries.emplace_back(r, it.col(), it.value());
            }
            for (Eigen::Index k = 0; k < ne; ++k) entries.emplace_back(elastic[static_cast<std::size_t>(k)], n + k, 1.0);
            sub.A.resize(m, n + ne);
            sub.A.setFromTriplets(entries.begin(), entries.end());
        }
        sub.b = -g;
        sub.lo.resize(n + ne);
        sub.hi.resize(n + ne);
        sub.lo.head(n) = lo - x;
        sub.hi.head(n) = hi - x;
        sub.lo.tail(ne).setZero();
        sub.hi.tail(ne).setConstant(std::numeric_limits<double>::infinity());

        const qp::Solution qs = qp::solve(sub);
        if (qs.status == qp::Status::numerical_failure) {
            log("sqp: QP failure at iteration " + std::to_string(iter) + ", resetting curvature");
            B.setIdentity();
            continue;
        }
        Vector d = qs.z.head(n);
        // Clip back into the box; the interior point solution can overshoot
        // by rounding.
        d = (x + d).cwiseMax(lo).cwiseMin(hi) - x;
        const Vector lambda = qs.lambda;

        const double viol = violation(g);
        const double step_norm = d.lpNorm<Eigen::Infinity>();
        if (step_norm <= config.tolerance && viol <= config.tolerance) {
            break;
        }

        penalty = std::max(penalty, 1.5 * lambda.lpNorm<Eigen::Infinity>() + 1.0);

        // l1 merit line search on the model's predicted reduction.
        const Vector lin = g + J * d;
        const double pred = -(grad_f.dot(d) + 0.5 * d.dot(B * d)) + penalty * (viol - violation(lin));
        const double merit0 = prog.objective_value(x) + penalty * viol;
        double alpha = 1.0;
        Vector x_new, g_new;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            x_new = x + alpha * d;
            prog.evaluate(x_new, g_new);
            const double merit = prog.objective_value(x_new) + penalty * violation(g_new);
            if (merit <= merit0 - 1e-4 * alpha * std::max(pred, 0.0)) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            if (step_norm <= 10 * config.tolerance) break;
            log("sqp: line search failed at iteration " + std::to_string(iter) + ", resetting curvature");
            B.setIdentity();
            continue;
        }

        const qp::SparseMatrix J_new = prog.jacobian(x_new);
        const Vector grad_l_old = grad_f - J.transpose() * lambda;
        const Vector grad_l_new = grad_f - J_new.transpose() * lambda;
        const Vector s = x_new - x;
        const Vector y = grad_l_new - grad_l_old;

        // Powell-damped BFGS keeps B positive definite.
        const Vector Bs = B * s;
        const double sBs = s.dot(Bs);
        const double sy = s.dot(y);
        if (sBs > 1e-300) {
            const double theta = sy >= 0.2 * sBs ? 1.0 : 0.8 * sBs / (sBs - sy);
            const Vector r = theta * y + (1.0 - theta) * Bs;
            const double sr = s.dot(r);
            if (sr > 1e-300) {
                B += r * r.transpose() / sr - Bs * Bs.transpose() / sBs;
            }
        }

        x = x_new;
        g = g_new;
        J = J_new;
        if (alpha * step_norm <= config.tolerance && violation(g) <= config.tolerance) break;
    }
    out.x = x;
    return out;
}

} // namespace detail

/// Maximizes the bound coefficient over the schedule's parameters.
/// Never throws on non-convergence: the all-zero vector is the fallback.
inline OptimizeResult optimize(const LayerSchedule& schedule, const OptimizerConfig& config,
                               const std::function<void(const std::string&)>& log = {}) {
    config.validate();
    if (schedule.size() < 1) throw std::invalid_argument("optimize: empty schedule");
    const auto sink = log ? log : [](const std::string&) {};

    const detail::LayerProgram prog(schedule, config);
    const std::size_t L = schedule.size();
    ParamVector start{std::vector<double>(L, std::min(config.initial_c, config.c_upper)),
                      std::vector<double>(L, std::min(config.initial_h, config.h_upper))};
    detail::Vector guess = prog.pack(start);
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    OptimizeResult result;
    result.best_params = ParamVector::zeros(L);
    result.verified = false;
    result.best_c_total = 0.0;
    bool have_best = false;

    for (int restart = 0; restart < config.restarts; ++restart) {
        if (restart > 0 && config.restart_jitter > 0.0) {
            for (Eigen::Index k = 0; k < guess.size(); ++k) guess[k] += config.restart_jitter * unit(rng);
        }
        const detail::SqpOutcome run = detail::run_sqp(prog, guess, config, sink);
        const ParamVector candidate = prog.unpack(run.x);
        const double c_total = objective(candidate);
        const bool ok = verify_params(schedule, candidate, config.epsilon);
        result.history.push_back({restart, c_total, ok, run.iterations});
        sink("restart " + std::to_string(restart) + ": c_total=" + std::to_string(c_total) +
             (ok ? " verified" : " NOT verified") + " after " + std::to_string(run.iterations) + " iterations");
        if (ok && (!have_best || c_total > result.best_c_total)) {
            result.best_c_total = c_total;
            result.best_params = candidate;
            have_best = true;
        }
        guess = prog.pack(candidate);
    }

    if (!have_best) {
        // The zero vector satisfies every constraint of the schedule, but it
        // was not produced by a verified run.
        result.best_params = ParamVector::zeros(L);
        result.best_c_total = 0.0;
        result.verified = false;
    } else {
        result.verified = true;
    }
    return result;
}

} // namespace posetramsey
