#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wpbayes/hyperparams.hpp"
#include "wpbayes/logspace.hpp"
#include "wpbayes/signal.hpp"
#include "wpbayes/tree.hpp"
#include "wpbayes/walsh.hpp"

// Dense, exhaustive reference implementations. Everything here goes through
// the filter definition and explicit sums over the model family, never
// through the butterfly planes or the posterior recursion, so tests can pit
// the two routes against each other. Sizes are deliberately capped.

namespace wpbayes::oracle {

inline constexpr int kMaxDenseSide = 16;

// The L^2 x L^2 basis matrix of a tree: rows are basis elements flattened
// in raster order, leaves visited depth-first in canonical child order and
// shifts (k0, k1) raster within a leaf.
struct DenseBasisMatrix {
    int side = 0;
    std::size_t dim = 0;                 // side^2
    std::vector<double> rows;            // row-major, dim x dim
    std::vector<NodeId> row_node;        // owning leaf of each row

    double at(std::size_t r, std::size_t c) const { return rows[r * dim + c]; }
};

namespace detail {

inline void collect_leaves_preorder(const QuadTreeModel& m, NodeId s,
                                    std::vector<NodeId>& out) {
    if (m.is_inner(s)) {
        for (const NodeId& c : children(s)) collect_leaves_preorder(m, c, out);
    } else {
        out.push_back(s);
    }
}

}  // namespace detail

inline std::vector<NodeId> leaves_in_row_order(const QuadTreeModel& m) {
    std::vector<NodeId> out;
    detail::collect_leaves_preorder(m, kRootNode, out);
    return out;
}

inline DenseBasisMatrix dense_basis_matrix(const QuadTreeModel& m, int side) {
    const int d = depth_for_side(side);
    if (side > kMaxDenseSide)
        throw std::domain_error("dense basis matrix capped at side " +
                                std::to_string(kMaxDenseSide));
    if (m.max_depth() > d)
        throw std::domain_error("tree deeper than the signal allows");
    DenseBasisMatrix W;
    W.side = side;
    W.dim = static_cast<std::size_t>(side) * side;
    W.rows.assign(W.dim * W.dim, 0.0);
    W.row_node.reserve(W.dim);
    std::size_t row = 0;
    for (const NodeId& s : leaves_in_row_order(m)) {
        const int shifts = side >> s.depth;
        for (int k0 = 0; k0 < shifts; ++k0) {
            for (int k1 = 0; k1 < shifts; ++k1) {
                const Signal2D v = basis_vector(side, s, k0, k1);
                for (std::size_t p = 0; p < W.dim; ++p)
                    W.rows[row * W.dim + p] = v.data()[p];
                W.row_node.push_back(s);
                ++row;
            }
        }
    }
    return W;
}

// Dense route for (W^m)^T mu^m: coefficients taken from the mu table at the
// leaves, expanded against explicit basis rows.
inline Signal2D dense_tree_mean(const QuadTreeModel& m, const PacketTable& mu,
                                int side) {
    const DenseBasisMatrix W = dense_basis_matrix(m, side);
    std::vector<double> theta(W.dim, 0.0);
    std::size_t row = 0;
    for (const NodeId& s : leaves_in_row_order(m)) {
        const ConstBlockView b = mu.block(s);
        for (int k0 = 0; k0 < b.side; ++k0)
            for (int k1 = 0; k1 < b.side; ++k1) theta[row++] = b.at(k0, k1);
    }
    Signal2D out(side);
    for (std::size_t p = 0; p < W.dim; ++p) {
        double acc = 0.0;
        for (std::size_t r = 0; r < W.dim; ++r) acc += theta[r] * W.at(r, p);
        out.data()[p] = acc;
    }
    return out;
}

inline void require_oracle_scale(int d_max, bool allow_depth3) {
    const int cap = allow_depth3 ? 3 : 2;
    if (d_max > cap)
        throw std::domain_error("oracle computations are capped at depth " +
                                std::to_string(cap));
}

// Exact log evidence ln Normal(y | (W^m)^T mu^m, (sigma^2+noise_sigma2) I).
inline double brute_force_evidence(const Signal2D& y, const QuadTreeModel& m,
                                   const HyperParams& hp) {
    if (y.side() != hp.side())
        throw std::domain_error("observation side mismatch");
    const Signal2D mean = dense_tree_mean(m, hp.mu, y.side());
    const double total_var = hp.sigma2 + hp.noise_sigma2;
    double ss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = y.data()[i] - mean.data()[i];
        ss += d * d;
    }
    const double n = static_cast<double>(y.size());
    return -0.5 * n * std::log(2.0 * std::numbers::pi * total_var) -
           ss / (2.0 * total_var);
}

// Posterior over an explicit model list, as normalized evidence x prior.
inline std::vector<double> brute_force_posterior(const Signal2D& y,
                                                 const HyperParams& hp,
                                                 const std::vector<QuadTreeModel>& models) {
    std::vector<double> logw(models.size());
    double lse = kNegInf;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const double lp = log_prior_probability(models[i], hp.g);
        logw[i] = lp == kNegInf
                      ? kNegInf
                      : lp + brute_force_evidence(y, models[i], hp);
        lse = log_add_exp(lse, logw[i]);
    }
    std::vector<double> post(models.size());
    for (std::size_t i = 0; i < models.size(); ++i)
        post[i] = logw[i] == kNegInf ? 0.0 : std::exp(logw[i] - lse);
    return post;
}

// Exhaustive mixture of fixed-tree posterior means, the straight reading of
// the optimal rule before any recursion.
inline Signal2D brute_force_denoise(const Signal2D& y, const HyperParams& hp,
                                    bool allow_depth3 = false) {
    require_oracle_scale(hp.d_max(), allow_depth3);
    if (y.side() != hp.side())
        throw std::domain_error("observation side mismatch");
    const std::vector<QuadTreeModel> models = enumerate_models(hp.d_max());
    const std::vector<double> post = brute_force_posterior(y, hp, models);
    const double a = hp.shrinkage();
    Signal2D out(y.side());
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (post[i] == 0.0) continue;
        const Signal2D mean = dense_tree_mean(models[i], hp.mu, y.side());
        for (std::size_t p = 0; p < y.size(); ++p)
            out.data()[p] += post[i] * (a * y.data()[p] + (1.0 - a) * mean.data()[p]);
    }
    return out;
}

}  // namespace wpbayes::oracle
