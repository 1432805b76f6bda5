#pragma once

// Convex quadratic programs for the SQP subproblem:
//
//     minimize    1/2 z'Qz + q'z
//     subject to  A z >= b,   lo <= z <= hi
//
// solved with a Mehrotra predictor-corrector primal-dual interior point
// method. Q is dense (a quasi-Newton matrix), A is sparse with a few dense
// rows. Each iteration factors the n x n normal matrix Q + A'DA + bound terms.

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>

namespace posetramsey::qp {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Problem {
    DenseMatrix Q;
    Vector q;
    SparseMatrix A;
    Vector b;
    Vector lo; ///< -infinity for a free side
    Vector hi; ///< +infinity for a free side
};

enum class Status { optimal, max_iterations, numerical_failure };

struct Solution {
    Status status = Status::numerical_failure;
    Vector z;
    Vector lambda; ///< multipliers of A z >= b
    int iterations = 0;
};

struct Options {
    int max_iterations = 200;
    double tolerance = 1e-11;
};

namespace detail {

inline double max_step(const Vector& v, const Vector& dv) {
    double alpha = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
    }
    return alpha;
}

} // namespace detail

inline Solution solve(const Problem& p, const Options& opt = {}) {
    const Eigen::Index n = p.q.size();
    const Eigen::Index m = p.A.rows();
    constexpr double inf = std::numeric_limits<double>::infinity();

    // Bound sides are handled with exact slacks, so the iterate stays inside.
    std::vector<Eigen::Index> lower_idx, upper_idx;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (p.lo[i] > -inf) lower_idx.push_back(i);
        if (p.hi[i] < inf) upper_idx.push_back(i);
    }
    const auto nl = static_cast<Eigen::Index>(lower_idx.size());
    const auto nu = static_cast<Eigen::Index>(upper_idx.size());

    Vector z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lo = p.lo[i], hi = p.hi[i];
        if (lo > -inf && hi < inf) {
            const double width = hi - lo;
            z[i] = std::clamp(0.0, lo + 0.01 * width, hi - 0.01 * width);
            if (width <= 0.0) z[i] = lo;
        } else if (lo > -inf) {
            z[i] = std::max(0.0, lo + 1.0);
        } else if (hi < inf) {
            z[i] = std::min(0.0, hi - 1.0);
        } else {
            z[i] = 0.0;
        }
    }

    Vector w = (p.A * z - p.b).cwiseMax(1.0);
    Vector lam = Vector::Ones(m);
    Vector pl(nl), pil = Vector::Ones(nl);
    Vector pu(nu), piu = Vector::Ones(nu);
    auto refresh_bound_slacks = [&] {
        for (Eigen::Index k = 0; k < nl; ++k) pl[k] = z[lower_idx[k]] - p.lo[lower_idx[k]];
        for (Eigen::Index k = 0; k < nu; ++k) pu[k] = p.hi[upper_idx[k]] - z[upper_idx[k]];
    };
    refresh_bound_slacks();
    // Degenerate boxes (lo == hi) get a tiny positive slack.
    for (Eigen::Index k = 0; k < nl; ++k) pl[k] = std::max(pl[k], 1e-8);
    for (Eigen::Index k = 0; k < nu; ++k) pu[k] = std::max(pu[k], 1e-8);

    const double scale_d = 1.0 + p.q.lpNorm<Eigen::Infinity>();
    const double scale_p = 1.0 + (m > 0 ? p.b.lpNorm<Eigen::Infinity>() : 0.0);
    const auto total_pairs = static_cast<double>(m + nl + nu);

    Solution out;
    out.status = Status::max_iterations;
    Eigen::LLT<DenseMatrix> llt;
    DenseMatrix M(n, n);

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        out.iterations = iter + 1;
        Vector rd = p.Q * z + p.q - p.A.transpose() * lam;
        for (Eigen::Index k = 0; k < nl; ++k) rd[lower_idx[k]] -= pil[k];
        for (Eigen::Index k = 0; k < nu; ++k) rd[upper_idx[k]] += piu[k];
        const Vector rp = p.A * z - p.b - w;

        const double gap = w.dot(lam) + pl.dot(pil) + pu.dot(piu);
        const double mu = total_pairs > 0 ? gap / total_pairs : 0.0;
        if (rd.lpNorm<Eigen::Infinity>() <= opt.tolerance * scale_d &&
            (m == 0 || rp.lpNorm<Eigen::Infinity>() <= opt.tolerance * scale_p) &&
            mu <= opt.tolerance) {
            out.status = Status::optimal;
            break;
        }

        // Normal matrix.
        const Vector dw = lam.cwiseQuotient(w);
        M = p.Q;
        {
            SparseMatrix scaled = dw.asDiagonal() * p.A;
            M += DenseMatrix(p.A.transpose() * scaled);
        }
        for (Eigen::Index k = 0; k < nl; ++k) M(lower_idx[k], lower_idx[k]) += pil[k] / pl[k];
        for (Eigen::Index k = 0; k < nu; ++k) M(upper_idx[k], upper_idx[k]) += piu[k] / pu[k];
        llt.compute(M);
        if (llt.info() != Eigen::Success) {
            const double reg = 1e-10 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
            M.diagonal().array() += reg;
            llt.compute(M);
            if (llt.info() != Eigen::Success) {
                out.status = Status::numerical_failure;
                break;
            }
        }

        // Newton direction for given complementarity targets.
        struct Direction {
            Vector dz, dw, dlam, dpil, dpiu;
        };
        auto direction = [&](const Vector& rc, const Vector& rcl, const Vector& rcu) {
            Vector rhs = -rd + p.A.transpose() * Vector((rc - lam.cwiseProduct(rp)).cwiseQuotient(w));
            for (Eigen::Index k = 0; k < nl; ++k) rhs[lower_idx[k]] += rcl[k] / pl[k];
            for (Eigen::Index k = 0; k < nu; ++k) rhs[upper_idx[k]] -= rcu[k] / pu[k];
            Direction d;
            d.dz = llt.solve(rhs);
            d.dw = p.A * d.dz + rp;
            d.dlam = (rc - lam.cwiseProduct(d.dw)).cwiseQuotient(w);
            d.dpil.resize(nl);
            d.dpiu.resize(nu);
            for (Eigen::Index k = 0; k < nl; ++k) d.dpil[k] = (rcl[k] - pil[k] * d.dz[lower_idx[k]]) / pl[k];
            for (Eigen::Index k = 0; k < nu; ++k) d.dpiu[k] = (rcu[k] + piu[k] * d.dz[upper_idx[k]]) / pu[k];
            return d;
        };
        auto bound_steps = [&](const Direction& d, Vector& dpl, Vector& dpu) {
            dpl.resize(nl);
            dpu.resize(nu);
            for (Eigen::Index k = 0; k < nl; ++k) dpl[k] = d.dz[lower_idx[k]];
            for (Eigen::Index k = 0; k < nu; ++k) dpu[k] = -d.dz[upper_idx[k]];
        };

        // Predictor.
        const Direction aff = direction(-w.cwiseProduct(lam), -pl.cwiseProduct(pil), -pu.cwiseProduct(piu));
        Vector dpl, dpu;
        bound_steps(aff, dpl, dpu);
        const double ap = std::min({detail::max_step(w, aff.dw), detail::max_step(pl, dpl), detail::max_step(pu, dpu)});
        const double ad = std::min({detail::max_step(lam, aff.dlam), detail::max_step(pil, aff.dpil),
                                    detail::max_step(piu, aff.dpiu)});
        const double gap_aff = (w + ap * aff.dw).dot(lam + ad * aff.dlam) +
                               (pl + ap * dpl).dot(pil + ad * aff.dpil) +
                               (pu + ap * dpu).dot(piu + ad * aff.dpiu);
        const double sigma = total_pairs > 0 ? std::pow(std::max(gap_aff, 0.0) / std::max(gap, 1e-300), 3) : 0.0;
        const double target = sigma * mu;

        // Corrector.
        const Vector rc = (-w.cwiseProduct(lam) - aff.dw.cwiseProduct(aff.dlam)).array() + target;
        const Vector rcl = (-pl.cwiseProduct(pil) - dpl.cwiseProduct(aff.dpil)).array() + target;
        const Vector rcu = (-pu.cwiseProduct(piu) - dpu.cwiseProduct(aff.dpiu)).array() + target;
        const Direction d = direction(rc, rcl, rcu);
        bound_steps(d, dpl, dpu);
        constexpr double eta = 0.995;
        const double sp = std::min(1.0, eta * std::min({detail::max_step(w, d.dw), detail::max_step(pl, dpl),
                                                         detail::max_step(pu, dpu)}));
        const double sd = std::min(1.0, eta * std::min({detail::max_step(lam, d.dlam), detail::max_step(pil, d.dpil),
                                                         detail::max_step(piu, d.dpiu)}));
        if (!(sp > 0.0) || !(sd > 0.0) || !d.dz.allFinite()) {
            out.status = Status::numerical_failure;
            break;
        }
        z += sp * d.dz;
        w += sp * d.dw;
        pl += sp * dpl;
        pu += sp * dpu;
        lam += sd * d.dlam;
        pil += sd * d.dpil;
        piu += sd * d.dpiu;
    }
    out.z = z;
    out.lambda = lam;
    return out;
}

} // namespace posetramsey::qp
