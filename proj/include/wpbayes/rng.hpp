#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "wpbayes/packet_table.hpp"
#include "wpbayes/signal.hpp"

namespace wpbayes {

using Rng = std::mt19937_64;

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Independent, reproducible stream for (seed, stream tags). Used to give
// every trial of an experiment its own generator so trial order and
// parallel schedules cannot change the draws.
inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
    std::uint64_t h = detail::mix64(seed);
    for (std::uint64_t v : stream) h = detail::mix64(h ^ v);
    return Rng(h);
}

inline double standard_normal(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return n(rng);
}

// Row-major fill; one normal draw per entry.
inline void fill_gaussian(BlockView b, double mean, double stddev, Rng& rng) {
    std::normal_distribution<double> n(mean, stddev);
    for (int k0 = 0; k0 < b.side; ++k0)
        for (int k1 = 0; k1 < b.side; ++k1) b.at(k0, k1) = n(rng);
}

}  // namespace wpbayes
