#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpbayes/hyperparams.hpp"
#include "wpbayes/logspace.hpp"
#include "wpbayes/node.hpp"
#include "wpbayes/packet_table.hpp"
#include "wpbayes/signal.hpp"
#include "wpbayes/transform.hpp"
#include "wpbayes/tree.hpp"

namespace wpbayes {

// Everything the posterior over trees needs, computed once per observation:
// per-node log likelihood factors ln_psi, their subtree aggregates
// ln_psi_tilde, and the posterior branch probabilities g_tilde. All vectors
// are in node_index order over the complete tree.
struct PosteriorState {
    int d_max = -1;
    double shrinkage = 0.0;           // sigma^2 / (sigma^2 + noise_sigma2)
    double posterior_variance = 0.0;  // sigma^2 * noise_sigma2 / (sigma^2 + noise_sigma2)
    std::vector<double> ln_psi;
    std::vector<double> ln_psi_tilde;
    std::vector<double> g_tilde;

    double ln_psi_at(NodeId s) const { return ln_psi[node_index(s)]; }
    double ln_psi_tilde_at(NodeId s) const { return ln_psi_tilde[node_index(s)]; }
    double g_tilde_at(NodeId s) const { return g_tilde[node_index(s)]; }
};

// Bottom-up posterior recursion. The per-node factor is
//   ln_psi(s) = (<c_s, mu_s> - |mu_s|^2 / 2) / (sigma^2 + noise_sigma2)
// with c_s the observation's coefficient block at s, and the aggregates are
//   ln_psi_tilde(s) = logaddexp(ln(1-g_s) + ln_psi(s),
//                               ln(g_s) + sum_children ln_psi_tilde)
//   g_tilde(s)      = exp(ln(g_s) + sum_children ln_psi_tilde - ln_psi_tilde(s)).
// psi itself can overflow at realistic magnitudes, so nothing ever leaves
// the log domain unnormalized; g_s of exactly 0 or 1 short-circuits.
inline PosteriorState compute_posterior_state(const Signal2D& y,
                                              const HyperParams& hp) {
    const int d_max = hp.d_max();
    if (y.side() != hp.side())
        throw std::domain_error("observation side " + std::to_string(y.side()) +
                                " does not match hyperparameter depth " +
                                std::to_string(d_max));
    const double total_var = hp.sigma2 + hp.noise_sigma2;

    PosteriorState st;
    st.d_max = d_max;
    st.shrinkage = hp.shrinkage();
    st.posterior_variance = hp.posterior_variance();
    const std::size_t n = node_count(d_max);
    st.ln_psi.assign(n, 0.0);
    st.ln_psi_tilde.assign(n, 0.0);
    st.g_tilde.assign(n, 0.0);

    const PacketTable coeffs = analyze_full(y);
    for_each_node(d_max, [&](NodeId s) {
        const ConstBlockView mu = hp.mu.block(s);
        st.ln_psi[node_index(s)] =
            (dot(coeffs.block(s), mu) - 0.5 * squared_norm(mu)) / total_var;
    });

    for_each_node_at_depth(d_max, [&](NodeId s) {
        const std::size_t i = node_index(s);
        st.ln_psi_tilde[i] = st.ln_psi[i];
        st.g_tilde[i] = 0.0;
    });
    for (int depth = d_max - 1; depth >= 0; --depth) {
        for_each_node_at_depth(depth, [&](NodeId s) {
            const std::size_t i = node_index(s);
            double child_sum = 0.0;
            for (const NodeId& c : children(s))
                child_sum += st.ln_psi_tilde[node_index(c)];
            const double g = hp.g(s);
            if (g <= 0.0) {
                st.ln_psi_tilde[i] = st.ln_psi[i];
                st.g_tilde[i] = 0.0;
            } else if (g >= 1.0) {
                st.ln_psi_tilde[i] = child_sum;
                st.g_tilde[i] = 1.0;
            } else {
                const double branch = std::log(g) + child_sum;
                const double stay = std::log1p(-g) + st.ln_psi[i];
                st.ln_psi_tilde[i] = log_add_exp(stay, branch);
                st.g_tilde[i] =
                    std::clamp(std::exp(branch - st.ln_psi_tilde[i]), 0.0, 1.0);
            }
        });
    }
    return st;
}

inline void require_compatible(const QuadTreeModel& m, const PosteriorState& st) {
    if (m.max_depth() > st.d_max)
        throw std::domain_error("tree depth " + std::to_string(m.max_depth()) +
                                " exceeds posterior state depth " +
                                std::to_string(st.d_max));
}

inline double log_posterior_tree_probability(const QuadTreeModel& m,
                                             const PosteriorState& st) {
    require_compatible(m, st);
    double acc = 0.0;
    for (const NodeId& s : m.leaves()) acc += std::log1p(-st.g_tilde_at(s));
    for (const NodeId& s : m.inner_nodes()) acc += std::log(st.g_tilde_at(s));
    return acc;
}

inline double posterior_tree_probability(const QuadTreeModel& m,
                                         const PosteriorState& st) {
    return std::exp(log_posterior_tree_probability(m, st));
}

// Total posterior mass of the trees having s as a leaf:
// (1 - g_tilde(s)) * prod over ancestors of g_tilde.
inline double leaf_marginal(NodeId s, const PosteriorState& st) {
    require_valid_node(s, st.d_max);
    double p = 1.0 - st.g_tilde_at(s);
    for (const NodeId& a : ancestors(s)) p *= st.g_tilde_at(a);
    return p;
}

}  // namespace wpbayes
