#include <doctest.h>

#include <cmath>

#include "alist/errors.hpp"
#include "alist/scattering.hpp"
#include "support.hpp"

using namespace alist;
using alist::testing::sup_diff;

namespace {

const cplx I{0.0, 1.0};

// Smooth enough that 256 samples resolve r to machine precision.
Potential short_potential()
{
    return Potential(-2, {0.1, 0.2 * I, -0.15, 0.05 + 0.1 * I, 0.2});
}

} // namespace

TEST_CASE("transfer matrix")
{
    CHECK(transfer_matrix(1.0, 0.0).entries.isApprox(Mat2::Identity()));
    const TransferMatrix t = transfer_matrix(I, 0.5);
    Mat2 expect;
    expect << I, 0.5, 0.5, -I;
    CHECK((t.entries - expect).norm() < 1e-15);
    CHECK(std::abs(t.determinant() - 0.75) < 1e-15);
    const cplx q = 0.3 - 0.4 * I;
    CHECK(std::abs(transfer_matrix(std::exp(0.3 * I), q).determinant() - (1 - std::norm(q))) < 1e-15);
    CHECK_THROWS_AS(transfer_matrix(1.0, 1.0), InvariantViolation);
    CHECK_THROWS_AS(transfer_matrix(1.1, 0.1), InvalidArgument);
}

TEST_CASE("closed-form scattering matrices")
{
    const cplx z = std::exp(0.7 * I);
    CHECK(scattering_matrix_at(Potential{}, z).isApprox(Mat2::Identity()));

    const Mat2 s1 = scattering_matrix_at(Potential::single_site(0, 0.5), z);
    CHECK(std::abs(s1(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(s1(0, 1) - 0.5 / z) < 1e-15);
    CHECK(std::abs(s1(1, 0) - 0.5 * z) < 1e-15);
    CHECK(std::abs(s1(1, 1) - 1.0) < 1e-15);

    const GridPtr g = make_grid(512);
    const ScatteringData two = compute_scattering(Potential(0, {0.5, 0.5}), g);
    CHECK(sup_diff(two.a, [](cplx z) { return 1.0 + 0.25 / (z * z); }) <= 1e-13);
    CHECK(sup_diff(two.b, [](cplx z) { return 0.5 * (z * z * z + z); }) <= 1e-13);
    double det = 0;
    for (std::size_t j = 0; j < g->size(); ++j)
        det = std::max(det, std::abs(std::norm(two.a[j]) - std::norm(two.b[j]) - 0.5625));
    CHECK(det <= 1e-13);
}

TEST_CASE("compute_scattering basic cases")
{
    const GridPtr g = make_grid(128);
    const ScatteringData zero = compute_scattering(Potential{}, g);
    CHECK(sup_norm(zero.r) == 0.0);
    CHECK(sup_diff(zero.a, CircleFunction::constant(g, 1.0)) == 0.0);
    CHECK(zero.c_inf == 1.0);

    const ScatteringData one = compute_scattering(Potential::single_site(0, 0.5), g);
    CHECK(sup_diff(one.r, [](cplx z) { return 0.5 * z; }) < 1e-15);
    CHECK(one.c_inf == doctest::Approx(0.75));
}

TEST_CASE("Schwarz symmetry and reflection bound")
{
    const GridPtr g = make_grid(256);
    const Potential q = alist::testing::suite_member(0);
    const std::vector<Mat2> s = scattering_matrices(q, *g);
    const ScatteringData d = compute_scattering(q, g);
    double sym = 0, refl = 0;
    for (std::size_t j = 0; j < g->size(); ++j) {
        // on |z| = 1 the point conj(z)^{-1} is z itself
        sym = std::max({sym, std::abs(s[j](1, 1) - std::conj(s[j](0, 0))),
                        std::abs(s[j](0, 1) - std::conj(s[j](1, 0)))});
        refl = std::max(refl, std::abs(1 - std::norm(d.r[j]) - d.c_inf / std::norm(d.a[j])));
    }
    CHECK(sym <= 1e-12);
    CHECK(refl <= 1e-12);
    CHECK(sup_norm(d.r) < 1.0);
}

TEST_CASE("a is analytic outside the disk and normalized at infinity")
{
    const GridPtr g = make_grid(256);
    const ScatteringData d = compute_scattering(short_potential(), g);
    const FourierSeries la = analyze(continuous_log(d.a));
    double leak = 0;
    for (int l = 0; l <= la.max_mode(); ++l)
        leak = std::max(leak, std::abs(la[l]));
    CHECK(leak <= 1e-10);
    CHECK(std::abs(la[0]) <= 1e-10);
    CHECK(winding_number(d.a) == 0);
}

TEST_CASE("winding number counts phase turns")
{
    const GridPtr g = make_grid(64);
    CHECK(winding_number(CircleFunction::from_nodes(g, [](cplx z) { return z * z; })) == 2);
    CHECK(winding_number(CircleFunction::from_nodes(g, [](cplx z) { return 1.0 / z; })) == -1);
    CHECK(winding_number(CircleFunction::constant(g, 2.0)) == 0);
    CHECK_THROWS_AS(winding_number(CircleFunction::constant(g, 0.0)), InvariantViolation);
}

TEST_CASE("modified Jost solutions")
{
    const cplx z = std::exp(0.4 * I);
    const JostProfile y0 = jost_modified(Potential{}, z, JostSide::minus);
    CHECK(y0.y.size() == 1);
    CHECK(y0.y[0].isApprox(Mat2::Identity()));

    const Potential one = Potential::single_site(0, 0.5);
    const JostProfile ym = jost_modified(one, z, JostSide::minus);
    CHECK(ym.n_min == 0);
    Mat2 expect;
    expect << 1.0, 0.5 / z, 0.5 * z, 1.0;
    CHECK((ym.at(1) - expect).norm() < 1e-15);

    const DeterminantForms f = determinant_forms(one, z, 1);
    CHECK(std::abs(f.a - 1.0) < 1e-15);
    CHECK(std::abs(f.b - 0.5 * z) < 1e-15);
}

TEST_CASE("determinant forms agree with the scattering matrix at every site")
{
    const Potential q = short_potential();
    for (double th : {-2.9, -1.0, 0.0, 0.5, 2.2}) {
        const cplx z = std::exp(I * th);
        const Mat2 s = scattering_matrix_at(q, z);
        for (int n = q.n_min(); n <= q.n_max() + 1; ++n) {
            const DeterminantForms f = determinant_forms(q, z, n);
            CHECK(std::abs(f.a - s(0, 0)) <= 1e-12);
            CHECK(std::abs(f.b - s(1, 0)) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(determinant_forms(q, 1.0, q.n_max() + 2), InvalidArgument);
}

TEST_CASE("reflection Sobolev norms are grid converged")
{
    const Potential q = short_potential();
    const FourierSeries r1 = analyze(compute_scattering(q, make_grid(256)).r);
    const FourierSeries r2 = analyze(compute_scattering(q, make_grid(512)).r);
    for (int k = 1; k <= 3; ++k) {
        const double a = hk_norm(r1, k), b = hk_norm(r2, k);
        CHECK(std::isfinite(a));
        CHECK(std::abs(a - b) / b < 1e-2);
    }
}
