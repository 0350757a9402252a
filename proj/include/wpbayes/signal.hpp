#pragma once

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpbayes/node.hpp"

namespace wpbayes {

inline bool is_power_of_two(int v) {
    return v > 0 && std::has_single_bit(static_cast<unsigned>(v));
}

// log2 of a power-of-two side length; the tree depth that side supports.
inline int depth_for_side(int side) {
    if (!is_power_of_two(side))
        throw std::domain_error("side must be a power of two (got " +
                                std::to_string(side) + ")");
    const int d = std::countr_zero(static_cast<unsigned>(side));
    if (d > kMaxDepth)
        throw std::domain_error("side " + std::to_string(side) +
                                " exceeds supported maximum 2^" +
                                std::to_string(kMaxDepth));
    return d;
}

// Square 2D signal with power-of-two side, stored row-major.
class Signal2D {
public:
    Signal2D() = default;
    explicit Signal2D(int side, double value = 0.0)
        : side_(side), v_(check_side(side), value) {}

    int side() const { return side_; }
    std::size_t size() const { return v_.size(); }

    double& operator()(int r, int c) {
        return v_[static_cast<std::size_t>(r) * side_ + c];
    }
    double operator()(int r, int c) const {
        return v_[static_cast<std::size_t>(r) * side_ + c];
    }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }

    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

    friend bool operator==(const Signal2D&, const Signal2D&) = default;

private:
    static std::size_t check_side(int side) {
        (void)depth_for_side(side);
        return static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
    }

    int side_ = 0;
    std::vector<double> v_;
};

inline void require_same_shape(const Signal2D& a, const Signal2D& b) {
    if (a.side() != b.side())
        throw std::domain_error("signal shape mismatch: " +
                                std::to_string(a.side()) + " vs " +
                                std::to_string(b.side()));
}

}  // namespace wpbayes
