#pragma once

#include <vector>

#include <Eigen/Core>

#include "sewmatch/errors.hpp"

namespace sewmatch {

// Finite stand-in for -inf on the diagonal; keeps logsumexp well defined
// while making self-match probability vanish.
inline constexpr double kDiagonalSentinel = -1e9;

struct SinkhornConfig {
    int iterations = 100;
    double tau_multi = 0.4;
};

// C[i][j] = <f_i, f_j> for i != j, sentinel on the diagonal. Symmetric.
Eigen::MatrixXd score_matrix(const Eigen::MatrixXd& embeddings);

// Appends the dustbin row and column, every new entry equal to z.
Eigen::MatrixXd augment_dustbin(const Eigen::MatrixXd& masked_scores, double z);

struct SoftAssignment {
    Eigen::MatrixXd log_p;  // (M+1) x (M+1) log-probabilities

    Eigen::MatrixXd p() const { return log_p.array().exp().matrix(); }
};

// Dual potentials of every iteration; enough to replay the exact softmax
// weights during the unrolled backward pass.
struct SinkhornCache {
    Eigen::MatrixXd cost;
    Eigen::VectorXd log_a;  // row marginals in log space; columns identical
    std::vector<Eigen::VectorXd> u_hist;
    std::vector<Eigen::VectorXd> v_hist;
};

// Log-domain Sinkhorn on the extended cost treated as logits (epsilon = 1).
// Marginals are 1 per real edge and M for the dustbin on both sides.
// Throws NumericalError if an intermediate goes non-finite.
SoftAssignment sinkhorn_log(const Eigen::MatrixXd& extended_cost, const SinkhornConfig& cfg,
                            SinkhornCache* cache = nullptr);

// Exact gradient wrt the extended cost, differentiating through all T
// unrolled iterations.
Eigen::MatrixXd sinkhorn_backward(const SinkhornCache& cache, const Eigen::MatrixXd& dlog_p);

// P' = (P + P^T) / 2.
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& p);

struct NodePair {
    int a = 0;
    int b = 0;

    auto operator<=>(const NodePair&) const = default;

    static NodePair canonical(int x, int y) { return y < x ? NodePair{y, x} : NodePair{x, y}; }
};

struct HardAssignment {
    std::vector<NodePair> pairs;     // sorted, unique, undirected
    std::vector<int> unstitched;     // nodes participating in no pair
};

// Per real row: keep the argmax column (dustbin wins mean unstitched) plus
// every other real column at probability >= tau_multi; ties break to the
// lowest column index. The pair set is the union over rows.
HardAssignment hard_assign(const Eigen::MatrixXd& p_sym, const SinkhornConfig& cfg);

// Splits a gradient wrt the extended cost into the interior score part
// (diagonal zeroed, it is a constant sentinel) and the dustbin scalar.
struct ExtendedCostGrads {
    Eigen::MatrixXd dscores;
    double dz = 0.0;
};
ExtendedCostGrads split_extended_grad(const Eigen::MatrixXd& dcost_extended);

// Gradient wrt embeddings through C = F F^T (diagonal excluded).
Eigen::MatrixXd score_backward(const Eigen::MatrixXd& dscores, const Eigen::MatrixXd& embeddings);

}  // namespace sewmatch
