#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wpbayes/node.hpp"
#include "wpbayes/signal.hpp"

namespace wpbayes {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

// Walsh filter w_{i,j}(n) in natural (Paley) order: w_{0,0} is the unit
// impulse, and each level splits into a sum and a difference branch,
//   w_{i+1,2j}(n)   = (w_{i,j}(n) + w_{i,j}(n - 2^i)) / sqrt(2)
//   w_{i+1,2j+1}(n) = (w_{i,j}(n) - w_{i,j}(n - 2^i)) / sqrt(2).
// Support is {0, ..., 2^i - 1}.
inline double walsh_filter_value(int i, int j, std::int64_t n) {
    if (i < 0 || i > kMaxDepth || j < 0 || j >= (1 << i))
        throw std::domain_error("walsh filter index (" + std::to_string(i) + "," +
                                std::to_string(j) + ") out of range");
    if (i == 0) return n == 0 ? 1.0 : 0.0;
    const std::int64_t half = std::int64_t{1} << (i - 1);
    const double a = walsh_filter_value(i - 1, j / 2, n);
    const double b = walsh_filter_value(i - 1, j / 2, n - half);
    return (j % 2 == 0) ? kInvSqrt2 * (a + b) : kInvSqrt2 * (a - b);
}

// Separable 2D filter w_{i,j0,j1}(n0,n1) = w_{i,j0}(n0) * w_{i,j1}(n1).
inline double walsh_filter_value_2d(int i, int j0, int j1, std::int64_t n0,
                                    std::int64_t n1) {
    return walsh_filter_value(i, j0, n0) * walsh_filter_value(i, j1, n1);
}

// The basis element of node s at shift (k0, k1) as an L x L matrix:
// entry (n0, n1) = w_{i,j0,j1}(n0 - 2^i k0, n1 - 2^i k1). Intended for
// tests and the dense oracle; the fast transforms never materialize it.
inline Signal2D basis_vector(int side, NodeId s, int k0, int k1) {
    const int d = depth_for_side(side);
    require_valid_node(s, d);
    const int shifts = side >> s.depth;
    if (k0 < 0 || k0 >= shifts || k1 < 0 || k1 >= shifts)
        throw std::domain_error("shift (" + std::to_string(k0) + "," +
                                std::to_string(k1) + ") out of range for node " +
                                to_string(s));
    const std::int64_t step = std::int64_t{1} << s.depth;
    Signal2D out(side);
    for (int n0 = 0; n0 < side; ++n0)
        for (int n1 = 0; n1 < side; ++n1)
            out(n0, n1) = walsh_filter_value_2d(s.depth, s.j0, s.j1,
                                                n0 - step * k0, n1 - step * k1);
    return out;
}

}  // namespace wpbayes
