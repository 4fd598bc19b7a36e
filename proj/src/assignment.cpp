#include "sewmatch/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sewmatch {

namespace {

double logsumexp(const Eigen::VectorXd& x) {
    const double m = x.maxCoeff();
    return m + std::log((x.array() - m).exp().sum());
}

}  // namespace

Eigen::MatrixXd score_matrix(const Eigen::MatrixXd& embeddings) {
    if (embeddings.rows() < 2) throw Error("score matrix needs at least two edges");
    Eigen::MatrixXd c = embeddings * embeddings.transpose();
    c.diagonal().setConstant(kDiagonalSentinel);
    return c;
}

Eigen::MatrixXd augment_dustbin(const Eigen::MatrixXd& masked_scores, double z) {
    const Eigen::Index m = masked_scores.rows();
    Eigen::MatrixXd c(m + 1, m + 1);
    c.topLeftCorner(m, m) = masked_scores;
    c.row(m).setConstant(z);
    c.col(m).setConstant(z);
    return c;
}

SoftAssignment sinkhorn_log(const Eigen::MatrixXd& extended_cost, const SinkhornConfig& cfg,
                            SinkhornCache* cache) {
    const Eigen::Index n = extended_cost.rows();
    if (n != extended_cost.cols() || n < 2) throw Error("extended cost must be square");
    if (cfg.iterations < 1) throw Error("sinkhorn needs at least one iteration");
    const Eigen::Index m = n - 1;

    Eigen::VectorXd log_a = Eigen::VectorXd::Zero(n);
    log_a(m) = std::log(static_cast<double>(m));

    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);

    if (cache) {
        cache->cost = extended_cost;
        cache->log_a = log_a;
        cache->u_hist.clear();
        cache->v_hist.clear();
        cache->u_hist.reserve(static_cast<size_t>(cfg.iterations));
        cache->v_hist.reserve(static_cast<size_t>(cfg.iterations));
    }

    for (int t = 0; t < cfg.iterations; ++t) {
        for (Eigen::Index i = 0; i < n; ++i)
            u(i) = log_a(i) - logsumexp(extended_cost.row(i).transpose() + v);
        for (Eigen::Index j = 0; j < n; ++j)
            v(j) = log_a(j) - logsumexp(extended_cost.col(j) + u);
        if (!u.allFinite() || !v.allFinite())
            throw NumericalError("sinkhorn potentials diverged at iteration " + std::to_string(t));
        if (cache) {
            cache->u_hist.push_back(u);
            cache->v_hist.push_back(v);
        }
    }

    SoftAssignment out;
    out.log_p = extended_cost;
    out.log_p.colwise() += u;
    out.log_p.rowwise() += v.transpose();
    if (!out.log_p.allFinite()) throw NumericalError("sinkhorn produced non-finite log probabilities");
    return out;
}

Eigen::MatrixXd sinkhorn_backward(const SinkhornCache& cache, const Eigen::MatrixXd& dlog_p) {
    const Eigen::Index n = cache.cost.rows();
    const int iters = static_cast<int>(cache.u_hist.size());

    Eigen::MatrixXd dc = dlog_p;
    Eigen::VectorXd du = dlog_p.rowwise().sum();
    Eigen::VectorXd dv = dlog_p.colwise().sum().transpose();

    for (int t = iters - 1; t >= 0; --t) {
        const Eigen::VectorXd& ut = cache.u_hist[static_cast<size_t>(t)];
        const Eigen::VectorXd& vt = cache.v_hist[static_cast<size_t>(t)];
        const Eigen::VectorXd& vprev =
            t > 0 ? cache.v_hist[static_cast<size_t>(t - 1)] : Eigen::VectorXd::Zero(n).eval();

        // v_t(j) = log_a(j) - LSE_i(C(i,j) + u_t(i)); the denominator equals
        // log_a(j) - v_t(j), so the softmax weights are exp(C + u + v - log_a).
        Eigen::MatrixXd s = cache.cost;
        s.colwise() += ut;
        s.rowwise() += (vt - cache.log_a).transpose();
        s = s.array().exp().matrix();
        dc.noalias() -= s * dv.asDiagonal();
        du.noalias() -= s * dv;

        // u_t(i) = log_a(i) - LSE_j(C(i,j) + vprev(j)).
        Eigen::MatrixXd r = cache.cost;
        r.rowwise() += vprev.transpose();
        r.colwise() += (ut - cache.log_a);
        r = r.array().exp().matrix();
        dc.noalias() -= du.asDiagonal() * r;
        dv.noalias() = -(r.transpose() * du);
        du.setZero();
    }
    return dc;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& p) {
    return 0.5 * (p + p.transpose());
}

HardAssignment hard_assign(const Eigen::MatrixXd& p_sym, const SinkhornConfig& cfg) {
    const Eigen::Index n = p_sym.rows();
    const Eigen::Index m = n - 1;

    std::set<NodePair> pairs;
    for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::Index best = -1;
        double best_p = -1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            if (p_sym(i, j) > best_p) {
                best_p = p_sym(i, j);
                best = j;
            }
        }
        if (best == m) continue;  // dustbin wins: row contributes no pairs
        pairs.insert(NodePair::canonical(static_cast<int>(i), static_cast<int>(best)));
        for (Eigen::Index j = 0; j < m; ++j) {
            if (j == i || j == best) continue;
            if (p_sym(i, j) >= cfg.tau_multi)
                pairs.insert(NodePair::canonical(static_cast<int>(i), static_cast<int>(j)));
        }
    }

    HardAssignment out;
    out.pairs.assign(pairs.begin(), pairs.end());
    std::vector<bool> used(static_cast<size_t>(m), false);
    for (const NodePair& pr : out.pairs) {
        used[static_cast<size_t>(pr.a)] = true;
        used[static_cast<size_t>(pr.b)] = true;
    }
    for (Eigen::Index i = 0; i < m; ++i)
        if (!used[static_cast<size_t>(i)]) out.unstitched.push_back(static_cast<int>(i));
    return out;
}

ExtendedCostGrads split_extended_grad(const Eigen::MatrixXd& dcost_extended) {
    const Eigen::Index m = dcost_extended.rows() - 1;
    ExtendedCostGrads out;
    out.dscores = dcost_extended.topLeftCorner(m, m);
    out.dscores.diagonal().setZero();
    out.dz = dcost_extended.row(m).sum() + dcost_extended.col(m).sum() -
             dcost_extended(m, m);
    return out;
}

Eigen::MatrixXd score_backward(const Eigen::MatrixXd& dscores, const Eigen::MatrixXd& embeddings) {
    return (dscores + dscores.transpose()) * embeddings;
}

}  // namespace sewmatch
