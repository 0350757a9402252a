#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpbayes/node.hpp"

namespace wpbayes {

// A full quadtree: every node has exactly four children or none. Identified
// by its inner-node set; the leaf set is derived. A tree always contains the
// root (the root-only tree has an empty inner set).
class QuadTreeModel {
public:
    QuadTreeModel() { leaves_.push_back(kRootNode); }

    explicit QuadTreeModel(std::vector<NodeId> inner_nodes) {
        std::sort(inner_nodes.begin(), inner_nodes.end());
        inner_nodes.erase(std::unique(inner_nodes.begin(), inner_nodes.end()),
                          inner_nodes.end());
        inner_ = std::move(inner_nodes);
        validate_and_derive_leaves();
    }

    static QuadTreeModel root_only() { return QuadTreeModel(); }

    // Complete tree of the given depth: every node above it is inner.
    static QuadTreeModel perfect_tree(int depth) {
        if (depth < 0 || depth > kMaxDepth)
            throw std::domain_error("perfect tree depth " + std::to_string(depth) +
                                    " out of range");
        std::vector<NodeId> inner;
        for (int i = 0; i < depth; ++i)
            for_each_node_at_depth(i, [&](NodeId s) { inner.push_back(s); });
        return QuadTreeModel(std::move(inner));
    }

    // Parses the preorder bit-string written by serialize().
    static QuadTreeModel parse(const std::string& bits) {
        std::vector<NodeId> inner;
        std::size_t pos = 0;
        parse_subtree(bits, pos, kRootNode, inner);
        if (pos != bits.size())
            throw std::domain_error("trailing characters in tree string \"" + bits +
                                    "\"");
        return QuadTreeModel(std::move(inner));
    }

    const std::vector<NodeId>& leaves() const { return leaves_; }
    const std::vector<NodeId>& inner_nodes() const { return inner_; }

    bool is_inner(NodeId s) const {
        return std::binary_search(inner_.begin(), inner_.end(), s);
    }
    bool is_leaf(NodeId s) const {
        return std::binary_search(leaves_.begin(), leaves_.end(), s);
    }

    int max_depth() const {
        int d = 0;
        for (const NodeId& s : leaves_) d = std::max(d, s.depth);
        return d;
    }

    std::size_t leaf_count() const { return leaves_.size(); }

    // Preorder over the complete-tree child order, '1' = inner, '0' = leaf.
    // Root-only is "0"; the depth-1 complete tree is "10000".
    std::string serialize() const {
        std::string out;
        out.reserve(inner_.size() * 4 + 1);
        serialize_subtree(kRootNode, out);
        return out;
    }

    friend bool operator==(const QuadTreeModel& a, const QuadTreeModel& b) {
        return a.inner_ == b.inner_;
    }

private:
    void validate_and_derive_leaves() {
        for (const NodeId& s : inner_) {
            if (s.depth < 0 || s.depth >= kMaxDepth || s.j0 < 0 || s.j1 < 0 ||
                s.j0 >= (1 << s.depth) || s.j1 >= (1 << s.depth))
                throw std::domain_error("inner node " + to_string(s) +
                                        " out of range");
            if (s.depth > 0 && !is_inner(parent(s)))
                throw std::domain_error("inner node " + to_string(s) +
                                        " lacks an inner parent (not a tree)");
        }
        leaves_.clear();
        if (inner_.empty()) {
            leaves_.push_back(kRootNode);
            return;
        }
        if (!is_inner(kRootNode))
            throw std::domain_error("inner set does not contain the root");
        for (const NodeId& s : inner_)
            for (const NodeId& c : children(s))
                if (!is_inner(c)) leaves_.push_back(c);
        std::sort(leaves_.begin(), leaves_.end());
    }

    static void parse_subtree(const std::string& bits, std::size_t& pos, NodeId s,
                              std::vector<NodeId>& inner) {
        if (pos >= bits.size())
            throw std::domain_error("tree string \"" + bits +
                                    "\" ends before the tree is complete");
        const char c = bits[pos++];
        if (c == '0') return;
        if (c != '1')
            throw std::domain_error(std::string("invalid character '") + c +
                                    "' in tree string");
        inner.push_back(s);
        for (const NodeId& ch : children(s)) parse_subtree(bits, pos, ch, inner);
    }

    void serialize_subtree(NodeId s, std::string& out) const {
        if (!is_inner(s)) {
            out.push_back('0');
            return;
        }
        out.push_back('1');
        for (const NodeId& c : children(s)) serialize_subtree(c, out);
    }

    std::vector<NodeId> inner_;
    std::vector<NodeId> leaves_;
};

inline double average_depth(const QuadTreeModel& m) {
    double acc = 0.0;
    for (const NodeId& s : m.leaves()) acc += s.depth;
    return acc / static_cast<double>(m.leaf_count());
}

namespace detail {

inline void enumerate_subtrees(NodeId s, int d_max,
                               std::vector<std::vector<NodeId>>& out) {
    out.clear();
    out.push_back({});  // s stays a leaf
    if (s.depth >= d_max) return;
    std::array<std::vector<std::vector<NodeId>>, 4> per_child;
    const auto ch = children(s);
    for (int c = 0; c < 4; ++c) enumerate_subtrees(ch[c], d_max, per_child[c]);
    // Odometer over the four children, last child varying fastest.
    std::array<std::size_t, 4> pick{0, 0, 0, 0};
    for (;;) {
        std::vector<NodeId> inner;
        inner.push_back(s);
        for (int c = 0; c < 4; ++c)
            inner.insert(inner.end(), per_child[c][pick[c]].begin(),
                         per_child[c][pick[c]].end());
        out.push_back(std::move(inner));
        int c = 3;
        while (c >= 0 && ++pick[c] == per_child[c].size()) pick[c--] = 0;
        if (c < 0) break;
    }
}

}  // namespace detail

// All full quadtrees of depth <= d_max in a fixed order: the leaf option
// first, then expansions with the last child's choice varying fastest.
// Counts follow T(d) = 1 + T(d-1)^4, so d_max = 3 already gives 83522.
inline std::vector<QuadTreeModel> enumerate_models(int d_max) {
    if (d_max < 0) throw std::domain_error("negative depth");
    if (d_max > 3)
        throw std::domain_error("model enumeration is limited to depth <= 3 "
                                "(the count is 1 + T(d-1)^4)");
    std::vector<std::vector<NodeId>> inner_sets;
    detail::enumerate_subtrees(kRootNode, d_max, inner_sets);
    std::vector<QuadTreeModel> out;
    out.reserve(inner_sets.size());
    for (auto& inner : inner_sets) out.emplace_back(std::move(inner));
    return out;
}

}  // namespace wpbayes
