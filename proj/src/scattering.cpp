#include "alist/scattering.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/LU>

#include "alist/errors.hpp"

namespace alist {

namespace {

constexpr double unit_tolerance = 1e-12;

Mat2 z_power_sigma3(cplx z, int p)
{
    Mat2 m = Mat2::Zero();
    m(0, 0) = std::pow(z, p);
    m(1, 1) = std::pow(z, -p);
    return m;
}

void require_unit(cplx z)
{
    if (std::abs(std::abs(z) - 1.0) > unit_tolerance)
        throw InvalidArgument("spectral parameter must lie on the unit circle");
}

} // namespace

TransferMatrix transfer_matrix(cplx z, cplx q)
{
    require_unit(z);
    if (!(std::abs(q) < 1.0))
        throw InvariantViolation("transfer matrix requires |q| < 1");
    TransferMatrix t;
    t.entries << z, q, std::conj(q), 1.0 / z;
    return t;
}

Mat2 scattering_matrix_at(const Potential& q, cplx z)
{
    require_unit(z);
    if (q.empty())
        return Mat2::Identity();
    Mat2 s = z_power_sigma3(z, q.n_min());
    for (int n = q.n_min(); n <= q.n_max(); ++n)
        s = transfer_matrix(z, q(n)).entries * s;
    return z_power_sigma3(z, -(q.n_max() + 1)) * s;
}

std::vector<Mat2> scattering_matrices(const Potential& q, const CircleGrid& grid)
{
    std::vector<Mat2> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        out[j] = scattering_matrix_at(q, grid.node(j));
    return out;
}

ScatteringData compute_scattering(const Potential& q, const GridPtr& grid)
{
    const std::size_t n = grid->size();
    std::vector<cplx> a(n), b(n), r(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Mat2 s = scattering_matrix_at(q, grid->node(j));
        a[j] = s(0, 0);
        b[j] = s(1, 0);
        if (std::abs(a[j]) < 1e-14)
            throw InvariantViolation("a(z) vanishes at node " + std::to_string(j));
        r[j] = b[j] / a[j];
    }
    ScatteringData out;
    out.grid = grid;
    out.a = CircleFunction(grid, std::move(a));
    out.b = CircleFunction(grid, std::move(b));
    out.r = CircleFunction(grid, std::move(r));
    out.c_inf = c_total(q);
    return out;
}

JostProfile jost_modified(const Potential& q, cplx z, JostSide side)
{
    require_unit(z);
    JostProfile p;
    if (q.empty()) {
        p.y.push_back(Mat2::Identity());
        return p;
    }
    const int lo = q.n_min();
    const int hi = q.n_max() + 1;
    p.n_min = lo;
    p.y.resize(static_cast<std::size_t>(hi - lo + 1));

    // Recurse on X, then strip z^{n sigma3}; |z| = 1 keeps every factor bounded.
    if (side == JostSide::minus) {
        Mat2 x = z_power_sigma3(z, lo);
        p.y.front() = Mat2::Identity();
        for (int n = lo; n < hi; ++n) {
            x = transfer_matrix(z, q(n)).entries * x;
            p.y[static_cast<std::size_t>(n + 1 - lo)] = z_power_sigma3(z, -(n + 1)) * x;
        }
    } else {
        Mat2 x = z_power_sigma3(z, hi);
        p.y.back() = Mat2::Identity();
        for (int n = hi - 1; n >= lo; --n) {
            x = transfer_matrix(z, q(n)).entries.inverse() * x;
            p.y[static_cast<std::size_t>(n - lo)] = z_power_sigma3(z, -n) * x;
        }
    }
    return p;
}

DeterminantForms determinant_forms(const Potential& q, cplx z, int n)
{
    const auto ym = jost_modified(q, z, JostSide::minus);
    const auto yp = jost_modified(q, z, JostSide::plus);
    if (n < ym.n_min || n > ym.n_max())
        throw InvalidArgument("determinant_forms: site outside [L, R+1]");
    const Mat2& m = ym.at(n);
    const Mat2& p = yp.at(n);
    const double cn = c_partial(q, n);
    Mat2 ma, mb;
    ma.col(0) = m.col(0);
    ma.col(1) = p.col(1);
    mb.col(0) = p.col(0);
    mb.col(1) = m.col(0);
    return {cn * ma.determinant(), cn * mb.determinant()};
}

int winding_number(const CircleFunction& f)
{
    const std::size_t n = f.size();
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx u = f[j];
        const cplx v = f[(j + 1) % n];
        if (u == 0.0 || v == 0.0)
            throw InvariantViolation("winding number: curve passes through 0");
        total += std::arg(v / u);
    }
    const double w = total / (2.0 * std::numbers::pi);
    const double rounded = std::round(w);
    if (std::abs(w - rounded) > 1e-6)
        throw InvariantViolation("winding number not integral: " + std::to_string(w));
    return static_cast<int>(rounded);
}

CircleFunction continuous_log(const CircleFunction& f)
{
    const std::size_t n = f.size();
    std::vector<cplx> out(n);
    const std::size_t anchor = n / 2;
    out[anchor] = std::log(f[anchor]);
    double phase = out[anchor].imag();
    for (std::size_t step = 1; step < n; ++step) {
        const std::size_t j = (anchor + step) % n;
        const std::size_t prev = (anchor + step - 1) % n;
        phase += std::arg(f[j] / f[prev]);
        out[j] = cplx(std::log(std::abs(f[j])), phase);
    }
    return CircleFunction(f.grid_ptr(), std::move(out));
}

} // namespace alist
