#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "wpbayes/packet_table.hpp"
#include "wpbayes/signal.hpp"
#include "wpbayes/tree.hpp"
#include "wpbayes/walsh.hpp"

namespace wpbayes {

// The filter recursion h_{2j}(n) = (h_j(n) + h_j(n - 2^i))/sqrt(2),
// h_{2j+1}(n) = (h_j(n) - h_j(n - 2^i))/sqrt(2) substituted into the inner
// products c[k] = <x, h(. - 2^{i+1} k)> turns one analysis level into a
// pairwise butterfly on the parent coefficients:
//   low[k]  = (parent[2k] + parent[2k+1]) / sqrt(2)
//   high[k] = (parent[2k] - parent[2k+1]) / sqrt(2)
// applied separably, rows driven by b0 and columns by b1. Natural (Paley)
// subband order is kept; there is no Gray-code reordering. The combined
// 2x2 kernel is an involution, so synthesis reuses the same weights.

namespace detail {

// Splits one parent block into its four child blocks (child (b0,b1) is a
// quadrant-sized block; dst views may alias the canonical plane layout).
inline void split_block(ConstBlockView parent, BlockView c00, BlockView c01,
                        BlockView c10, BlockView c11) {
    const int h = parent.side / 2;
    for (int k0 = 0; k0 < h; ++k0) {
        for (int k1 = 0; k1 < h; ++k1) {
            const double a = parent.at(2 * k0, 2 * k1);
            const double b = parent.at(2 * k0, 2 * k1 + 1);
            const double c = parent.at(2 * k0 + 1, 2 * k1);
            const double d = parent.at(2 * k0 + 1, 2 * k1 + 1);
            c00.at(k0, k1) = 0.5 * (a + b + c + d);
            c01.at(k0, k1) = 0.5 * (a - b + c - d);
            c10.at(k0, k1) = 0.5 * (a + b - c - d);
            c11.at(k0, k1) = 0.5 * (a - b - c + d);
        }
    }
}

inline void merge_block(ConstBlockView c00, ConstBlockView c01, ConstBlockView c10,
                        ConstBlockView c11, BlockView parent) {
    const int h = c00.side;
    for (int k0 = 0; k0 < h; ++k0) {
        for (int k1 = 0; k1 < h; ++k1) {
            const double s00 = c00.at(k0, k1);
            const double s01 = c01.at(k0, k1);
            const double s10 = c10.at(k0, k1);
            const double s11 = c11.at(k0, k1);
            parent.at(2 * k0, 2 * k1) = 0.5 * (s00 + s01 + s10 + s11);
            parent.at(2 * k0, 2 * k1 + 1) = 0.5 * (s00 - s01 + s10 - s11);
            parent.at(2 * k0 + 1, 2 * k1) = 0.5 * (s00 + s01 - s10 - s11);
            parent.at(2 * k0 + 1, 2 * k1 + 1) = 0.5 * (s00 - s01 - s10 + s11);
        }
    }
}

}  // namespace detail

// One analysis split of a standalone block into its four children, canonical
// order (0,0),(0,1),(1,0),(1,1).
inline std::array<Signal2D, 4> split_one_level(const Signal2D& parent) {
    if (parent.side() < 2)
        throw std::domain_error("cannot split a block of side " +
                                std::to_string(parent.side()));
    const int h = parent.side() / 2;
    std::array<Signal2D, 4> out{Signal2D(h), Signal2D(h), Signal2D(h), Signal2D(h)};
    detail::split_block(as_block(parent),
                        BlockView{out[0].data(), h, h}, BlockView{out[1].data(), h, h},
                        BlockView{out[2].data(), h, h}, BlockView{out[3].data(), h, h});
    return out;
}

// Exact inverse of split_one_level on four equal square blocks.
inline Signal2D synthesize_one_level(const std::array<Signal2D, 4>& child_blocks) {
    const int h = child_blocks[0].side();
    for (const Signal2D& c : child_blocks)
        if (c.side() != h)
            throw std::domain_error("child block shape mismatch: " +
                                    std::to_string(c.side()) + " vs " +
                                    std::to_string(h));
    Signal2D parent(2 * h);
    detail::merge_block(as_block(child_blocks[0]), as_block(child_blocks[1]),
                        as_block(child_blocks[2]), as_block(child_blocks[3]),
                        BlockView{parent.data(), parent.side(), parent.side()});
    return parent;
}

// Full packet analysis: root block is the signal itself, every deeper plane
// is one butterfly level of its parent. O(L^2 * d_max) total.
inline PacketTable analyze_full(const Signal2D& x) {
    const int d_max = depth_for_side(x.side());
    PacketTable t = PacketTable::zeros(d_max);
    t.plane(0) = x.values();
    for (int depth = 0; depth < d_max; ++depth) {
        for_each_node_at_depth(depth, [&](NodeId s) {
            const auto ch = children(s);
            detail::split_block(t.block(s), t.block(ch[0]), t.block(ch[1]),
                                t.block(ch[2]), t.block(ch[3]));
        });
    }
    return t;
}

namespace detail {

inline void synthesize_into(const QuadTreeModel& m, const PacketTable& coeffs,
                            NodeId s, BlockView dst) {
    if (m.is_inner(s)) {
        const auto ch = children(s);
        const int h = dst.side / 2;
        Signal2D buf(dst.side);
        std::array<BlockView, 4> tmp{
            BlockView{buf.data(), dst.side, h},
            BlockView{buf.data() + h, dst.side, h},
            BlockView{buf.data() + static_cast<std::size_t>(h) * dst.side, dst.side, h},
            BlockView{buf.data() + static_cast<std::size_t>(h) * dst.side + h,
                      dst.side, h}};
        for (int c = 0; c < 4; ++c) synthesize_into(m, coeffs, ch[c], tmp[c]);
        merge_block(tmp[0], tmp[1], tmp[2], tmp[3], dst);
    } else {
        copy(coeffs.block(s), dst);
    }
}

}  // namespace detail

// Reconstructs the signal spanned by the leaf blocks of m; blocks of nodes
// outside the leaf set are ignored.
inline Signal2D synthesize_tree(const QuadTreeModel& m, const PacketTable& coeffs) {
    if (coeffs.empty()) throw std::domain_error("packet table is empty");
    if (m.max_depth() > coeffs.d_max())
        throw std::domain_error(
            "tree has leaves at depth " + std::to_string(m.max_depth()) +
            " but the table only holds blocks down to depth " +
            std::to_string(coeffs.d_max()));
    Signal2D out(coeffs.side());
    detail::synthesize_into(m, coeffs, kRootNode,
                            BlockView{out.data(), out.side(), out.side()});
    return out;
}

}  // namespace wpbayes
