#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wpbayes/node.hpp"
#include "wpbayes/packet_table.hpp"

namespace wpbayes {

// Per-node branch probabilities g_s, the prior chance that a node expands.
// Nodes at the maximum depth never expand; their g is pinned to zero.
class BranchProbabilities {
public:
    BranchProbabilities(int d_max, double scalar) : d_max_(check_depth(d_max)) {
        check_value(scalar, "g");
        scalar_ = scalar;
    }

    // Flat per-node values in node_index order over the complete tree.
    BranchProbabilities(int d_max, std::vector<double> per_node)
        : d_max_(check_depth(d_max)), per_node_(std::move(per_node)) {
        if (per_node_.size() != node_count(d_max_))
            throw std::domain_error("expected " + std::to_string(node_count(d_max_)) +
                                    " per-node g values, got " +
                                    std::to_string(per_node_.size()));
        for_each_node(d_max_, [&](NodeId s) {
            const double g = per_node_[node_index(s)];
            check_value(g, "g[" + to_string(s) + "]");
            if (s.depth == d_max_ && g != 0.0)
                throw std::domain_error("g[" + to_string(s) +
                                        "] must be 0 at the maximum depth");
        });
    }

    int d_max() const { return d_max_; }

    double operator()(NodeId s) const {
        require_valid_node(s, d_max_);
        if (s.depth == d_max_) return 0.0;
        return per_node_.empty() ? scalar_ : per_node_[node_index(s)];
    }

    void set(NodeId s, double g) {
        require_valid_node(s, d_max_);
        check_value(g, "g[" + to_string(s) + "]");
        if (s.depth == d_max_) {
            if (g != 0.0)
                throw std::domain_error("g[" + to_string(s) +
                                        "] must be 0 at the maximum depth");
            return;
        }
        if (per_node_.empty()) {
            per_node_.assign(node_count(d_max_), scalar_);
            for_each_node_at_depth(d_max_, [&](NodeId leaf) {
                per_node_[node_index(leaf)] = 0.0;
            });
        }
        per_node_[node_index(s)] = g;
    }

private:
    static int check_depth(int d_max) {
        if (d_max < 0 || d_max > kMaxDepth)
            throw std::domain_error("unsupported depth " + std::to_string(d_max));
        return d_max;
    }

    static void check_value(double g, const std::string& what) {
        if (!(g >= 0.0 && g <= 1.0))
            throw std::domain_error(what + " must lie in [0,1], got " +
                                    std::to_string(g));
    }

    int d_max_;
    double scalar_ = 0.0;
    std::vector<double> per_node_;
};

// Known model hyperparameters: branch probabilities, per-node prior mean
// blocks, the coefficient prior variance and the observation noise variance.
struct HyperParams {
    BranchProbabilities g;
    PacketTable mu;
    double sigma2;
    double noise_sigma2;

    HyperParams(BranchProbabilities g_in, PacketTable mu_in, double sigma2_in,
                double noise_sigma2_in)
        : g(std::move(g_in)),
          mu(std::move(mu_in)),
          sigma2(sigma2_in),
          noise_sigma2(noise_sigma2_in) {
        if (!(std::isfinite(sigma2) && sigma2 > 0.0))
            throw std::domain_error("sigma2 must be finite and > 0");
        if (!(std::isfinite(noise_sigma2) && noise_sigma2 >= 0.0))
            throw std::domain_error("noise_sigma2 must be finite and >= 0");
        if (mu.empty()) mu = PacketTable::zeros(g.d_max());
        if (mu.d_max() != g.d_max())
            throw std::domain_error("mu table depth " + std::to_string(mu.d_max()) +
                                    " does not match g depth " +
                                    std::to_string(g.d_max()));
    }

    HyperParams(BranchProbabilities g_in, double sigma2_in, double noise_sigma2_in)
        : HyperParams(std::move(g_in), PacketTable(), sigma2_in, noise_sigma2_in) {}

    int d_max() const { return g.d_max(); }
    int side() const { return 1 << g.d_max(); }

    // Weight on the observation in every posterior mean.
    double shrinkage() const { return sigma2 / (sigma2 + noise_sigma2); }
    // Per-coordinate posterior variance of the signal given the tree.
    double posterior_variance() const {
        return sigma2 * noise_sigma2 / (sigma2 + noise_sigma2);
    }
};

// Constant per-node mean blocks whose magnitude halves with each depth
// level. Not derived from any corpus; a convenient identifiable default
// for synthetic experiments.
inline PacketTable depth_decaying_mu(int d_max, double scale) {
    if (!std::isfinite(scale))
        throw std::domain_error("mu scale must be finite");
    PacketTable mu = PacketTable::zeros(d_max);
    for_each_node(d_max, [&](NodeId s) {
        fill(mu.block(s), scale * std::ldexp(1.0, -s.depth));
    });
    return mu;
}

}  // namespace wpbayes
