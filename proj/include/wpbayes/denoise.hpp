#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpbayes/hyperparams.hpp"
#include "wpbayes/posterior.hpp"
#include "wpbayes/rng.hpp"
#include "wpbayes/signal.hpp"
#include "wpbayes/transform.hpp"
#include "wpbayes/tree.hpp"

namespace wpbayes {

// Draws the leaf coefficients theta_s ~ Normal(mu_s, sigma^2 I) of m and
// returns the synthesized signal. Leaves are filled in sorted node order,
// each block row-major, so a seeded generator reproduces the draw.
inline Signal2D sample_theta_and_signal(const QuadTreeModel& m,
                                        const HyperParams& hp, Rng& rng) {
    if (m.max_depth() > hp.d_max())
        throw std::domain_error("tree deeper than the hyperparameter tables");
    PacketTable theta = PacketTable::zeros(hp.d_max());
    const double sd = std::sqrt(hp.sigma2);
    for (const NodeId& s : m.leaves()) {
        BlockView b = theta.block(s);
        fill_gaussian(b, 0.0, sd, rng);
        const ConstBlockView mu = hp.mu.block(s);
        for (int k0 = 0; k0 < b.side; ++k0)
            for (int k1 = 0; k1 < b.side; ++k1) b.at(k0, k1) += mu.at(k0, k1);
    }
    return synthesize_tree(m, theta);
}

inline Signal2D add_noise(const Signal2D& x, double noise_sigma2, Rng& rng) {
    if (!(std::isfinite(noise_sigma2) && noise_sigma2 >= 0.0))
        throw std::domain_error("noise variance must be finite and >= 0");
    Signal2D y = x;
    if (noise_sigma2 == 0.0) return y;
    std::normal_distribution<double> n(0.0, std::sqrt(noise_sigma2));
    for (double& v : y.values()) v += n(rng);
    return y;
}

// Posterior mean of the signal under a fixed tree:
//   a*y + (1-a)*synthesize(m, mu),  a = sigma^2 / (sigma^2 + noise_sigma2).
inline Signal2D posterior_mean_given_tree(const Signal2D& y, const QuadTreeModel& m,
                                          const HyperParams& hp) {
    if (y.side() != hp.side())
        throw std::domain_error("observation side mismatch");
    const double a = hp.shrinkage();
    Signal2D prior_mean = synthesize_tree(m, hp.mu);
    Signal2D out(y.side());
    for (std::size_t i = 0; i < out.size(); ++i)
        out.values()[i] = a * y.values()[i] + (1.0 - a) * prior_mean.values()[i];
    return out;
}

// The fixed-tree baseline denoiser is exactly the posterior mean given that
// tree; two names for the same map.
inline Signal2D fixed_tree_denoise(const Signal2D& y, const QuadTreeModel& m,
                                   const HyperParams& hp) {
    return posterior_mean_given_tree(y, m, hp);
}

namespace detail {

// Bottom-up accumulator of the posterior-weighted prior mean. r at node s
// is kept as its coefficient block in s's own basis (it lies in that
// subspace), so one level costs a butterfly merge instead of an L^2 vector
// sum; the root block is the signal-domain mix over all trees.
inline Signal2D posterior_mean_mix(const PosteriorState& st, const HyperParams& hp) {
    const int d_max = hp.d_max();
    const int side = hp.side();
    const std::size_t n = static_cast<std::size_t>(side) * side;
    std::vector<double> cur(n, 0.0), next(n, 0.0);

    auto plane_block = [&](std::vector<double>& plane, NodeId s, int block) {
        return BlockView{plane.data() + static_cast<std::size_t>(s.j0) * block * side +
                             static_cast<std::size_t>(s.j1) * block,
                         side, block};
    };

    const int deepest_block = side >> d_max;
    for_each_node_at_depth(d_max, [&](NodeId s) {
        const double w = 1.0 - st.g_tilde_at(s);
        const ConstBlockView mu = hp.mu.block(s);
        BlockView dst = plane_block(cur, s, deepest_block);
        for (int k0 = 0; k0 < dst.side; ++k0)
            for (int k1 = 0; k1 < dst.side; ++k1) dst.at(k0, k1) = w * mu.at(k0, k1);
    });

    for (int depth = d_max - 1; depth >= 0; --depth) {
        const int block = side >> depth;
        const int h = block / 2;
        for_each_node_at_depth(depth, [&](NodeId s) {
            const double gt = st.g_tilde_at(s);
            const double w = 1.0 - gt;
            const ConstBlockView mu = hp.mu.block(s);
            BlockView dst = plane_block(next, s, block);
            const auto ch = children(s);
            ConstBlockView c00 = plane_block(cur, ch[0], h);
            ConstBlockView c01 = plane_block(cur, ch[1], h);
            ConstBlockView c10 = plane_block(cur, ch[2], h);
            ConstBlockView c11 = plane_block(cur, ch[3], h);
            merge_block(c00, c01, c10, c11, dst);
            for (int k0 = 0; k0 < block; ++k0)
                for (int k1 = 0; k1 < block; ++k1)
                    dst.at(k0, k1) = w * mu.at(k0, k1) + gt * dst.at(k0, k1);
        });
        cur.swap(next);
    }

    Signal2D out(side);
    out.values() = cur;
    return out;
}

}  // namespace detail

// Minimum-mean-square denoiser over the whole tree family:
//   a*y + (1-a) * sum over trees of p(m|y) * prior mean of m,
// with the sum folded into one bottom-up pass (posterior_mean_mix).
inline Signal2D bayes_denoise(const Signal2D& y, const HyperParams& hp,
                              const PosteriorState& st) {
    if (y.side() != hp.side() || st.d_max != hp.d_max())
        throw std::domain_error("observation / state / hyperparameter mismatch");
    const double a = st.shrinkage;
    Signal2D mix = detail::posterior_mean_mix(st, hp);
    Signal2D out(y.side());
    for (std::size_t i = 0; i < out.size(); ++i)
        out.values()[i] = a * y.values()[i] + (1.0 - a) * mix.values()[i];
    return out;
}

inline Signal2D bayes_denoise(const Signal2D& y, const HyperParams& hp) {
    return bayes_denoise(y, hp, compute_posterior_state(y, hp));
}

}  // namespace wpbayes
