#include "alist/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "alist/errors.hpp"

namespace alist {

Potential::Potential(int n_min, std::vector<cplx> values) : n_min_(n_min), values_(std::move(values))
{
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double m = std::abs(values_[k]);
        if (!std::isfinite(m) || m >= 1.0)
            throw InvariantViolation("potential requires |q_n| < 1; site " +
                                     std::to_string(n_min_ + static_cast<int>(k)) + " has |q| = " +
                                     std::to_string(m));
    }
}

Potential random_potential(int n_min, int sites, double radius, std::uint64_t seed)
{
    if (sites < 0)
        throw InvalidArgument("random_potential: negative site count");
    if (!(radius >= 0.0 && radius < 1.0))
        throw InvalidArgument("random_potential: radius must lie in [0, 1)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<cplx> v(static_cast<std::size_t>(sites));
    for (cplx& x : v) {
        const double rad = radius * std::sqrt(unit(rng));
        x = std::polar(rad, 2.0 * std::numbers::pi * unit(rng));
    }
    return Potential(n_min, std::move(v));
}

Potential Potential::window(int lo, int hi) const
{
    if (hi < lo)
        return Potential(lo, {});
    std::vector<cplx> v(static_cast<std::size_t>(hi - lo + 1));
    for (int n = lo; n <= hi; ++n)
        v[static_cast<std::size_t>(n - lo)] = (*this)(n);
    return Potential(lo, std::move(v));
}

double l2k_norm(const Potential& q, int k)
{
    if (k < 0)
        throw InvalidArgument("weight index must be nonnegative");
    double s = 0.0;
    for (int n = q.n_min(); n <= q.n_max(); ++n)
        s += std::pow(1.0 + static_cast<double>(n) * n, k) * std::norm(q(n));
    return std::sqrt(s);
}

double sup_norm(std::span<const cplx> values)
{
    double m = 0.0;
    for (const auto& v : values)
        m = std::max(m, std::abs(v));
    return m;
}

double sup_norm(const Potential& q) { return sup_norm(q.values()); }

double log_c_total(std::span<const cplx> values)
{
    double s = 0.0;
    for (const auto& v : values)
        s += std::log1p(-std::norm(v));
    return s;
}

double c_partial(const Potential& q, int n)
{
    double p = 1.0;
    for (int k = std::max(n, q.n_min()); k <= q.n_max(); ++k)
        p *= 1.0 - std::norm(q(k));
    return p;
}

double c_total(const Potential& q) { return c_partial(q, q.n_min()); }

namespace {

template <class Combine>
double fold_difference(const Potential& a, const Potential& b, Combine combine)
{
    double acc = 0.0;
    if (a.empty() && b.empty())
        return acc;
    const int lo = a.empty() ? b.n_min() : (b.empty() ? a.n_min() : std::min(a.n_min(), b.n_min()));
    const int hi = a.empty() ? b.n_max() : (b.empty() ? a.n_max() : std::max(a.n_max(), b.n_max()));
    for (int n = lo; n <= hi; ++n)
        acc = combine(acc, std::abs(a(n) - b(n)));
    return acc;
}

} // namespace

double sup_distance(const Potential& a, const Potential& b)
{
    return fold_difference(a, b, [](double acc, double d) { return std::max(acc, d); });
}

double l2_distance(const Potential& a, const Potential& b)
{
    return std::sqrt(fold_difference(a, b, [](double acc, double d) { return acc + d * d; }));
}

double l2_norm(const Potential& q) { return l2k_norm(q, 0); }

void al_rhs_window(std::span<const cplx> q, std::span<cplx> out, Boundary boundary)
{
    const std::size_t n = q.size();
    if (out.size() != n)
        throw InvalidArgument("al_rhs_window: output size mismatch");
    const cplx minus_i(0.0, -1.0);
    for (std::size_t k = 0; k < n; ++k) {
        cplx left{}, right{};
        if (boundary == Boundary::periodic) {
            left = q[(k + n - 1) % n];
            right = q[(k + 1) % n];
        } else {
            if (k > 0)
                left = q[k - 1];
            if (k + 1 < n)
                right = q[k + 1];
        }
        out[k] = minus_i * (right - 2.0 * q[k] + left - std::norm(q[k]) * (right + left));
    }
}

LatticeField al_rhs(const Potential& q)
{
    LatticeField f;
    if (q.empty())
        return f;
    f.n_min = q.n_min() - 1;
    std::vector<cplx> padded(q.size() + 2);
    std::copy(q.values().begin(), q.values().end(), padded.begin() + 1);
    f.values.resize(padded.size());
    al_rhs_window(padded, f.values, Boundary::zero_padded);
    return f;
}

int default_buffer(double t) { return t <= 0.0 ? 0 : static_cast<int>(std::ceil(64.0 * t)); }

OracleResult rk4_evolve(const Potential& q0, double t, double dt, int buffer, Boundary boundary)
{
    if (!(dt > 0.0))
        throw InvalidArgument("rk4_evolve: dt must be positive");
    if (!(t >= 0.0))
        throw InvalidArgument("rk4_evolve: t must be nonnegative");
    if (buffer < 0)
        throw InvalidArgument("rk4_evolve: buffer must be nonnegative");

    OracleResult result;
    if (q0.empty()) {
        result.q = q0;
        return result;
    }
    const int pad = boundary == Boundary::periodic ? 0 : buffer;
    const int lo = q0.n_min() - pad;
    std::vector<cplx> y(q0.size() + 2 * static_cast<std::size_t>(pad));
    std::copy(q0.values().begin(), q0.values().end(), y.begin() + pad);
    const double log_c0 = log_c_total(y);
    const double edge0 = std::max(std::abs(y.front()), std::abs(y.back()));

    const auto steps = static_cast<std::size_t>(std::ceil(t / dt - 1e-9));
    const double h = steps > 0 ? t / static_cast<double>(steps) : 0.0;
    const std::size_t n = y.size();
    std::vector<cplx> k1(n), k2(n), k3(n), k4(n), tmp(n);

    for (std::size_t s = 0; s < steps; ++s) {
        al_rhs_window(y, k1, boundary);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + 0.5 * h * k1[i];
        al_rhs_window(tmp, k2, boundary);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + 0.5 * h * k2[i];
        al_rhs_window(tmp, k3, boundary);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * k3[i];
        al_rhs_window(tmp, k4, boundary);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        const double m = sup_norm(y);
        if (!std::isfinite(m) || m >= 1.0)
            throw InvariantViolation("rk4_evolve: sup|q| reached " + std::to_string(m) + " at step " +
                                     std::to_string(s + 1));
    }

    result.steps = steps;
    result.edge_amplitude = std::max(std::abs(y.front()), std::abs(y.back()));
    result.edge_growth = result.edge_amplitude - edge0;
    result.log_c_drift = std::abs(log_c_total(y) - log_c0);
    result.q = Potential(lo, std::move(y));
    return result;
}

} // namespace alist
