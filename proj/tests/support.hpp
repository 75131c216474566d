#pragma once

// Shared fixtures: the seeded random suite and sup-distance helpers.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "alist/circle.hpp"
#include "alist/lattice.hpp"

namespace alist::testing {

inline constexpr int kSuiteSize = 20;
inline constexpr int kSuiteSites = 32;
inline constexpr int kSuiteMin = -16;
inline constexpr double kSuiteRadius = 0.3;
inline constexpr std::uint64_t kSuiteSeed = 20240101;

/// k-th member: 32 sites on [-16, 15], entries uniform in |q| < 0.3.
inline Potential suite_member(int k)
{
    return random_potential(kSuiteMin, kSuiteSites, kSuiteRadius, kSuiteSeed + static_cast<std::uint64_t>(k));
}

inline double sup_diff(const CircleFunction& a, const CircleFunction& b)
{
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

inline double sup_diff(const CircleFunction& a, const std::function<cplx(cplx)>& f)
{
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        m = std::max(m, std::abs(a[j] - f(a.grid().node(j))));
    return m;
}

inline CircleFunction random_function(const GridPtr& grid, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    std::vector<cplx> v(grid->size());
    for (auto& x : v)
        x = {g(rng), g(rng)};
    return CircleFunction(grid, std::move(v));
}

} // namespace alist::testing
