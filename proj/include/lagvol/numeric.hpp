#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace lagvol {

/// Sum with a fixed-order pairwise reduction. The result depends only on the
/// input order, never on threading or chunking.
double pairwise_sum(std::span<const double> values);

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` points on [-1, 1].
GaussRule gauss_legendre(int order);

/// Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int order, double a, double b);

/// Uniform double in [0, 1) from the top 53 bits of one draw. Unlike
/// std::uniform_real_distribution the mapping is identical across standard
/// libraries, so seeded runs reproduce bit for bit.
inline double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

} // namespace lagvol
