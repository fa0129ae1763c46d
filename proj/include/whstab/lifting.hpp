#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "whstab/graph.hpp"
#include "whstab/state_space.hpp"

namespace whstab {

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Largest singular value, via the symmetric eigenproblem of m^T m.
inline double spectral_norm(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    const Eigen::MatrixXd gram = m.transpose() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw NonSquare("spectral radius requires a square matrix");
    if (m.size() == 0) return 0.0;
    return m.eigenvalues().cwiseAbs().maxCoeff();
}

/// The switching system restricted to feasible sequences: one lifted
/// matrix P_c = F_c (x) A_c per outcome, where F_c is the graph's
/// transition matrix. A product P_alpha is zero exactly when the
/// sequence alpha is infeasible.
struct LiftedSystem {
    Strategy strategy = Strategy::Kill;
    int nodes = 0;     ///< graph node count
    int block_dim = 0; ///< closed-loop dimension
    std::array<Eigen::MatrixXd, kOutcomeCount> matrices;

    int dimension() const { return nodes * block_dim; }

    const Eigen::MatrixXd& matrix(Outcome o) const {
        const Eigen::MatrixXd& m = matrices[static_cast<std::size_t>(o)];
        if (m.size() == 0)
            throw AlphabetMismatch(std::string("outcome '") + to_char(o) +
                                   "' has no lifted matrix under strategy " + to_string(strategy));
        return m;
    }

    bool has(Outcome o) const { return matrices[static_cast<std::size_t>(o)].size() != 0; }
};

inline LiftedSystem lift(const ConstraintGraph& g, const ClosedLoopSet& cl) {
    if (g.strategy != cl.strategy)
        throw AlphabetMismatch("graph and closed-loop set were built for different strategies");
    LiftedSystem sys;
    sys.strategy = g.strategy;
    sys.nodes = g.node_count();
    sys.block_dim = cl.dimension();
    for (Outcome o : alphabet(g.strategy))
        sys.matrices[static_cast<std::size_t>(o)] = kron(transition_matrix(g, o), cl.matrix(o));
    return sys;
}

/// Product matrix P_{alpha_L} ... P_{alpha_1} (right-to-left application
/// order, matching state evolution).
inline Eigen::MatrixXd lifted_product_matrix(const LiftedSystem& sys, const OutcomeString& seq) {
    const int d = sys.dimension();
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(d, d);
    for (Outcome o : seq) p = sys.matrix(o) * p;
    return p;
}

/// Lifted state after applying `seq` to xi0; at most one nonzero
/// block_dim-sized block remains when seq is feasible, the zero vector
/// otherwise.
inline Eigen::VectorXd lifted_product(const LiftedSystem& sys, const OutcomeString& seq,
                                      const Eigen::VectorXd& xi0) {
    if (xi0.size() != sys.dimension())
        throw DimensionMismatch("lifted state has length " + std::to_string(xi0.size()) +
                                " but the lifted system has dimension " + std::to_string(sys.dimension()));
    Eigen::VectorXd xi = xi0;
    for (Outcome o : seq) xi = sys.matrix(o) * xi;
    return xi;
}

/// max_j sum_i ||M_ij||_2 over the partition of a square matrix into
/// block x block sub-blocks; submultiplicative, and tight on the lifted
/// sparsity pattern (each block-column holds at most one nonzero block).
inline double block_column_norm(const Eigen::MatrixXd& m, int block) {
    if (block < 1 || m.rows() != m.cols() || m.rows() % block != 0)
        throw DimensionMismatch("matrix size must be a square multiple of the block size");
    const int nodes = static_cast<int>(m.rows()) / block;
    double best = 0.0;
    for (int j = 0; j < nodes; ++j) {
        double col = 0.0;
        for (int i = 0; i < nodes; ++i)
            col += spectral_norm(m.block(static_cast<Eigen::Index>(i) * block,
                                         static_cast<Eigen::Index>(j) * block, block, block));
        best = std::max(best, col);
    }
    return best;
}

} // namespace whstab
