#include <doctest.h>

#include <cmath>

#include "alist/evolution.hpp"
#include "alist/scattering.hpp"
#include "support.hpp"

using namespace alist;
using alist::testing::sup_diff;

namespace {

const cplx I{0.0, 1.0};
const SiteWindow kWide{-64, 64};

} // namespace

TEST_CASE("phase law")
{
    const GridPtr g = make_grid(128);
    const CircleFunction r0 = CircleFunction::from_nodes(g, [](cplx z) { return 0.5 * z; });
    CHECK(sup_diff(evolve_reflection(r0, 0.0), r0) == 0.0);
    for (double t : {0.5, 1.0, -2.0, 7.3}) {
        const CircleFunction r = evolve_reflection(r0, t);
        for (std::size_t j = 0; j < g->size(); ++j) {
            const double th = g->theta(j);
            CHECK(std::abs(r[j] - 0.5 * std::exp(I * th) * std::exp(2.0 * I * (std::cos(2 * th) - 1) * t)) < 1e-14);
            CHECK(std::abs(std::abs(r[j]) - 0.5) < 1e-15);
        }
        CHECK(r[g->size() / 2] == r0[g->size() / 2]);
    }
}

TEST_CASE("modulus invariance and Sobolev persistence")
{
    const Potential q = Potential(-1, {0.2, 0.3 * I, -0.1});
    const ScatteringData s = compute_scattering(q, make_grid(256));
    const ReflectionData d0 = prepare_reflection(s.r);
    for (double t : {0.5, 1.0, 2.0}) {
        const CircleFunction rt = evolve_reflection(s.r, t);
        const ReflectionData dt = prepare_reflection(rt);
        CHECK(std::abs(dt.c_inf - d0.c_inf) <= 1e-12);
        const CircleFunction rt2 = evolve_reflection(compute_scattering(q, make_grid(512)).r, t);
        for (int k = 1; k <= 3; ++k) {
            const double h = hk_norm(rt, k);
            CHECK(std::isfinite(h));
            CHECK(std::abs(h - hk_norm(rt2, k)) / h < 1e-2);
            CHECK(h <= std::exp(2 * t * (1 + std::pow(5.0, k) / 2)) * hk_norm(s.r, k));
        }
    }
}

TEST_CASE("scattering transform evolution")
{
    CHECK(sup_norm(ist_evolve(Potential{}, 1.0, {-8, 8}, 256).q) == 0.0);

    const Potential q(-2, {0.1, 0.2 * I, -0.15, 0.05 + 0.1 * I, 0.2});
    CHECK(sup_distance(ist_evolve(q, 0.0, {-8, 8}, 512).q, q) <= 1e-8);

    const Potential one = Potential::single_site(0, 0.3);
    const IstResult a = ist_evolve(one, 1.0, kWide, 1024);
    CHECK(a.warnings.empty());
    CHECK(std::abs(c_total(a.q) - c_total(one)) <= 1e-9);

    SUBCASE("group property")
    {
        const IstResult half = ist_evolve(one, 0.4, kWide, 1024);
        const IstResult two = ist_evolve(half.q, 0.6, kWide, 1024);
        CHECK(sup_distance(two.q, a.q) <= 1e-7);
    }
    SUBCASE("time reversal")
    {
        const IstResult back = ist_evolve(a.q, -1.0, kWide, 1024);
        CHECK(sup_distance(back.q, one) <= 1e-7);
    }
    SUBCASE("edge warning")
    {
        const IstResult small = ist_evolve(one, 3.0, {-3, 3}, 256);
        CHECK(small.edge_amplitude > kEdgeMassThreshold);
        CHECK(small.warnings.size() == 1);
    }
}

TEST_CASE("oracle comparison")
{
    const EvolutionReport z = oracle_compare(Potential{}, 1.0, 1e-3, {-8, 8}, 256);
    CHECK(*z.sup_error == 0.0);
    CHECK(*z.l2_error == 0.0);
    CHECK(*z.c_inf_drift == 0.0);

    const EvolutionReport r = oracle_compare(Potential::single_site(0, 0.3), 1.0, 1e-3, kWide, 1024);
    CHECK(*r.sup_error <= 1e-5);
    CHECK(*r.c_inf_drift <= 1e-9);
    CHECK(!r.oracle_window_breach);
    CHECK(r.q_rk4->n_min() == -64);
}

TEST_CASE("default window")
{
    const SiteWindow w = default_window(Potential(-2, {0.1, 0.1, 0.1}), 2.5);
    CHECK(w.lo == -2 - 42);
    CHECK(w.hi == 0 + 42);
}
