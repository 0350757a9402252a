#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpbayes {

// Deepest tree the library will allocate coefficient tables for; depth d
// means signals of side 2^d, so 10 already corresponds to 1024x1024.
inline constexpr int kMaxDepth = 10;

// One subspace node of the complete quadtree: depth and the per-axis
// subband indices (j0 along rows, j1 along columns), each in [0, 2^depth).
struct NodeId {
    int depth = 0;
    int j0 = 0;
    int j1 = 0;

    friend bool operator==(const NodeId&, const NodeId&) = default;
    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline constexpr NodeId kRootNode{0, 0, 0};

inline std::string to_string(NodeId s) {
    return std::to_string(s.depth) + "/" + std::to_string(s.j0) + "/" +
           std::to_string(s.j1);
}

inline bool is_valid_node(NodeId s, int d_max) {
    return s.depth >= 0 && s.depth <= d_max && s.j0 >= 0 && s.j1 >= 0 &&
           s.j0 < (1 << s.depth) && s.j1 < (1 << s.depth);
}

inline void require_valid_node(NodeId s, int d_max) {
    if (!is_valid_node(s, d_max))
        throw std::domain_error("node " + to_string(s) +
                                " out of range for depth " + std::to_string(d_max));
}

inline NodeId child_node(NodeId s, int b0, int b1) {
    return NodeId{s.depth + 1, 2 * s.j0 + b0, 2 * s.j1 + b1};
}

// Children in canonical order (b0,b1) = (0,0),(0,1),(1,0),(1,1).
inline std::array<NodeId, 4> children(NodeId s) {
    return {child_node(s, 0, 0), child_node(s, 0, 1), child_node(s, 1, 0),
            child_node(s, 1, 1)};
}

inline NodeId parent(NodeId s) {
    if (s.depth == 0) throw std::domain_error("root node has no parent");
    return NodeId{s.depth - 1, s.j0 / 2, s.j1 / 2};
}

// Proper ancestors, nearest first (parent, ..., root).
inline std::vector<NodeId> ancestors(NodeId s) {
    std::vector<NodeId> out;
    out.reserve(static_cast<std::size_t>(s.depth));
    while (s.depth > 0) {
        s = parent(s);
        out.push_back(s);
    }
    return out;
}

// Flat node numbering over the complete tree: depth-major, then row-major
// in (j0, j1). Index of the first node at a given depth.
inline std::size_t node_offset(int depth) {
    return ((std::size_t{1} << (2 * depth)) - 1) / 3;
}

inline std::size_t node_count(int d_max) { return node_offset(d_max + 1); }

inline std::size_t node_index(NodeId s) {
    return node_offset(s.depth) + (static_cast<std::size_t>(s.j0) << s.depth) +
           static_cast<std::size_t>(s.j1);
}

template <typename F>
void for_each_node_at_depth(int depth, F&& f) {
    const int n = 1 << depth;
    for (int j0 = 0; j0 < n; ++j0)
        for (int j1 = 0; j1 < n; ++j1) f(NodeId{depth, j0, j1});
}

// Visits every node of the complete tree in flat-index order.
template <typename F>
void for_each_node(int d_max, F&& f) {
    for (int depth = 0; depth <= d_max; ++depth) for_each_node_at_depth(depth, f);
}

}  // namespace wpbayes
