#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "alist/circle.hpp"
#include "alist/errors.hpp"
#include "support.hpp"

using namespace alist;
using alist::testing::random_function;
using alist::testing::sup_diff;
using std::numbers::pi;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("grid nodes")
{
    const GridPtr g4 = make_grid(4);
    CHECK(g4->theta(0) == doctest::Approx(-pi));
    CHECK(g4->theta(1) == doctest::Approx(-pi / 2));
    CHECK(g4->theta(2) == 0.0);
    CHECK(g4->theta(3) == doctest::Approx(pi / 2));
    CHECK(g4->node(0) == cplx(-1, 0));
    CHECK(g4->node(1) == cplx(0, -1));
    CHECK(g4->node(2) == cplx(1, 0));
    CHECK(g4->node(3) == cplx(0, 1));

    const GridPtr g8 = make_grid(8);
    CHECK(g8->size() == 8);
    CHECK(g8->node(4) == cplx(1, 0));

    CHECK_THROWS_AS(make_grid(2), InvalidArgument);
    CHECK_THROWS_AS(make_grid(7), InvalidArgument);

    const GridPtr g = make_grid(512);
    for (std::size_t j = 0; j < g->size(); ++j) {
        CHECK(std::abs(std::abs(g->node(j)) - 1.0) < 1e-15);
        if (j > 0)
            CHECK(g->theta(j) > g->theta(j - 1));
    }
}

TEST_CASE("analysis of single modes")
{
    const GridPtr g = make_grid(64);
    const FourierSeries e1 = analyze(CircleFunction::from_angles(g, [](double t) { return std::exp(I * t); }));
    for (int l = e1.min_mode(); l <= e1.max_mode(); ++l)
        CHECK(std::abs(e1[l] - (l == 1 ? 1.0 : 0.0)) < 1e-15);

    const FourierSeries one = analyze(CircleFunction::constant(g, 1.0));
    CHECK(std::abs(one[0] - 1.0) < 1e-15);

    const FourierSeries phi = analyze(CircleFunction::from_angles(g, [](double t) { return std::cos(2 * t) - 1; }));
    CHECK(std::abs(phi[0] + 1.0) < 1e-15);
    CHECK(std::abs(phi[2] - 0.5) < 1e-15);
    CHECK(std::abs(phi[-2] - 0.5) < 1e-15);
    CHECK(phi.at(1000) == cplx{});
}

TEST_CASE("synthesis inverts analysis and Parseval holds")
{
    std::mt19937_64 rng(7);
    const GridPtr g = make_grid(256);
    for (int k = 0; k < 20; ++k) {
        const CircleFunction f = random_function(g, rng);
        const FourierSeries s = analyze(f);
        CHECK(sup_diff(synthesize(s, g), f) < 1e-13);
        const double n2 = l2_norm(f);
        CHECK(std::abs(std::sqrt(s.energy()) - n2) / n2 < 1e-13);
    }
}

TEST_CASE("Cauchy projectors on monomials")
{
    const GridPtr g = make_grid(32);
    auto mono = [&](int l) { return CircleFunction::from_angles(g, [l](double t) { return std::exp(I * (l * t)); }); };

    CHECK(sup_diff(cauchy_plus(mono(-1)), mono(-1)) < 1e-15);
    CHECK(sup_norm(cauchy_plus(mono(1))) < 1e-15);
    CHECK(sup_diff(cauchy_minus(mono(0)), CircleFunction::constant(g, -1.0)) < 1e-15);
    CHECK(sup_norm(cauchy_plus(mono(0))) < 1e-15);

    const CircleFunction f = 3.0 * mono(-2) + mono(0) + mono(5);
    CHECK(sup_diff(cauchy_plus(f) - cauchy_minus(f), f) < 1e-14);
}

TEST_CASE("projector algebra on random vectors")
{
    std::mt19937_64 rng(11);
    const GridPtr g = make_grid(128);
    for (int k = 0; k < 50; ++k) {
        const CircleFunction f = random_function(g, rng);
        const double nf = l2_norm(f);
        const CircleFunction p = cauchy_plus(f);
        const CircleFunction m = cauchy_minus(f);
        CHECK(sup_diff(cauchy_plus(p), p) < 1e-13);
        CHECK(sup_diff(cauchy_minus(m), -m) < 1e-13);
        CHECK(sup_norm(cauchy_plus(m)) < 1e-13);
        CHECK(sup_norm(cauchy_minus(p)) < 1e-13);
        CHECK(sup_diff(p - m, f) < 1e-13);
        CHECK(l2_norm(p) <= nf * (1 + 1e-14));
        CHECK(l2_norm(m) <= nf * (1 + 1e-14));
    }
}

TEST_CASE("clockwise contour integral")
{
    const GridPtr g = make_grid(64);
    CHECK(std::abs(contour_integral(CircleFunction::from_nodes(g, [](cplx z) { return 1.0 / z; })) + 1.0) < 1e-15);
    CHECK(std::abs(contour_integral(CircleFunction::constant(g, 1.0))) < 1e-15);
    CHECK(std::abs(contour_integral(CircleFunction::from_nodes(g, [](cplx z) { return 1.0 / z + 5.0 * z * z; })) +
                   1.0) < 1e-14);
}

TEST_CASE("Sobolev norms")
{
    const GridPtr g = make_grid(64);
    CHECK(hk_norm(CircleFunction::zeros(g), 1) == 0.0);
    const CircleFunction phi = CircleFunction::from_angles(g, [](double t) { return std::cos(2 * t) - 1; });
    CHECK(hk_norm(phi, 1) == doctest::Approx(std::sqrt(3.5)).epsilon(1e-14));
    for (int k = 0; k <= 3; ++k)
        CHECK(hk_norm(phi, k) * hk_norm(phi, k) == doctest::Approx(1 + std::pow(5.0, k) / 2).epsilon(1e-13));
    const CircleFunction r = CircleFunction::from_angles(g, [](double t) { return 0.5 * std::exp(I * t); });
    CHECK(hk_norm(r, 1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("times_power and grid mismatch")
{
    const GridPtr g = make_grid(16);
    const CircleFunction one = CircleFunction::constant(g, 1.0);
    CHECK(sup_diff(times_power(one, -3), [](cplx z) { return std::pow(z, -3); }) < 1e-14);
    CHECK_THROWS_AS(one + CircleFunction::constant(make_grid(32), 1.0), InvalidArgument);
}
