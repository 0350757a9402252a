#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpbayes/node.hpp"
#include "wpbayes/signal.hpp"

namespace wpbayes {

// Borrowed view of one node's coefficient block inside a depth plane.
// Valid only while the owning table is alive and unmodified structurally.
struct BlockView {
    double* origin = nullptr;
    int stride = 0;
    int side = 0;

    double& at(int k0, int k1) const {
        return origin[static_cast<std::size_t>(k0) * stride + k1];
    }
};

struct ConstBlockView {
    const double* origin = nullptr;
    int stride = 0;
    int side = 0;

    ConstBlockView() = default;
    ConstBlockView(const double* o, int st, int si) : origin(o), stride(st), side(si) {}
    ConstBlockView(BlockView b) : origin(b.origin), stride(b.stride), side(b.side) {}

    double at(int k0, int k1) const {
        return origin[static_cast<std::size_t>(k0) * stride + k1];
    }
};

// Full packet decomposition: for every node (i, j0, j1) a coefficient block
// of side L/2^i. Depth i blocks tile one L x L plane, block (i, j0, j1)
// sitting at rows [j0*B, (j0+1)*B), cols [j1*B, (j1+1)*B) with B = L/2^i.
class PacketTable {
public:
    PacketTable() = default;

    static PacketTable zeros(int d_max) {
        if (d_max < 0 || d_max > kMaxDepth)
            throw std::domain_error("unsupported depth " + std::to_string(d_max));
        PacketTable t;
        t.d_max_ = d_max;
        t.side_ = 1 << d_max;
        const std::size_t n = static_cast<std::size_t>(t.side_) * t.side_;
        t.planes_.assign(static_cast<std::size_t>(d_max) + 1,
                         std::vector<double>(n, 0.0));
        return t;
    }

    bool empty() const { return d_max_ < 0; }
    int d_max() const { return d_max_; }
    int side() const { return side_; }
    int block_side(int depth) const { return side_ >> depth; }

    std::vector<double>& plane(int depth) { return planes_[depth]; }
    const std::vector<double>& plane(int depth) const { return planes_[depth]; }

    BlockView block(NodeId s) {
        check_node(s);
        const int b = block_side(s.depth);
        return BlockView{planes_[s.depth].data() +
                             static_cast<std::size_t>(s.j0) * b * side_ +
                             static_cast<std::size_t>(s.j1) * b,
                         side_, b};
    }

    ConstBlockView block(NodeId s) const {
        check_node(s);
        const int b = block_side(s.depth);
        return ConstBlockView{planes_[s.depth].data() +
                                  static_cast<std::size_t>(s.j0) * b * side_ +
                                  static_cast<std::size_t>(s.j1) * b,
                              side_, b};
    }

private:
    void check_node(NodeId s) const {
        if (empty()) throw std::domain_error("packet table is empty");
        require_valid_node(s, d_max_);
    }

    int d_max_ = -1;
    int side_ = 0;
    std::vector<std::vector<double>> planes_;
};

inline void require_same_side(ConstBlockView a, ConstBlockView b) {
    if (a.side != b.side)
        throw std::domain_error("block shape mismatch: " + std::to_string(a.side) +
                                " vs " + std::to_string(b.side));
}

inline double dot(ConstBlockView a, ConstBlockView b) {
    require_same_side(a, b);
    double acc = 0.0;
    for (int k0 = 0; k0 < a.side; ++k0)
        for (int k1 = 0; k1 < a.side; ++k1) acc += a.at(k0, k1) * b.at(k0, k1);
    return acc;
}

inline double squared_norm(ConstBlockView a) {
    double acc = 0.0;
    for (int k0 = 0; k0 < a.side; ++k0)
        for (int k1 = 0; k1 < a.side; ++k1) {
            const double v = a.at(k0, k1);
            acc += v * v;
        }
    return acc;
}

inline double sum(ConstBlockView a) {
    double acc = 0.0;
    for (int k0 = 0; k0 < a.side; ++k0)
        for (int k1 = 0; k1 < a.side; ++k1) acc += a.at(k0, k1);
    return acc;
}

inline void fill(BlockView b, double value) {
    for (int k0 = 0; k0 < b.side; ++k0)
        for (int k1 = 0; k1 < b.side; ++k1) b.at(k0, k1) = value;
}

inline void copy(ConstBlockView src, BlockView dst) {
    require_same_side(src, ConstBlockView(dst));
    for (int k0 = 0; k0 < src.side; ++k0)
        for (int k1 = 0; k1 < src.side; ++k1) dst.at(k0, k1) = src.at(k0, k1);
}

inline Signal2D block_to_signal(ConstBlockView src) {
    Signal2D out(src.side);
    for (int k0 = 0; k0 < src.side; ++k0)
        for (int k1 = 0; k1 < src.side; ++k1) out(k0, k1) = src.at(k0, k1);
    return out;
}

inline void set_block(BlockView dst, const Signal2D& src) {
    if (dst.side != src.side())
        throw std::domain_error("block shape mismatch: " + std::to_string(dst.side) +
                                " vs " + std::to_string(src.side()));
    for (int k0 = 0; k0 < dst.side; ++k0)
        for (int k1 = 0; k1 < dst.side; ++k1) dst.at(k0, k1) = src(k0, k1);
}

inline ConstBlockView as_block(const Signal2D& x) {
    return ConstBlockView{x.data(), x.side(), x.side()};
}

}  // namespace wpbayes
