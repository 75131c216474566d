#include "alist/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "alist/scattering.hpp"

namespace alist {

namespace {

double edge_amplitude(const Potential& q)
{
    const auto v = q.values();
    const std::size_t n = v.size();
    double m = 0.0;
    for (std::size_t k = 0; k < std::min<std::size_t>(2, n); ++k)
        m = std::max({m, std::abs(v[k]), std::abs(v[n - 1 - k])});
    return m;
}

} // namespace

CircleFunction evolve_reflection(const CircleFunction& r0, double t)
{
    CircleFunction r = r0;
    const CircleGrid& grid = r0.grid();
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double phase = 2.0 * (std::cos(2.0 * grid.theta(j)) - 1.0) * t;
        r[j] *= std::polar(1.0, phase);
    }
    return r;
}

SiteWindow default_window(const Potential& q, double t)
{
    const int pad = static_cast<int>(std::ceil(4.0 * std::abs(t))) + 32;
    if (q.empty())
        return {-pad, pad};
    return {q.n_min() - pad, q.n_max() + pad};
}

IstResult ist_evolve(const Potential& q0, double t, SiteWindow window, std::size_t grid_n,
                     const SolverOptions& options)
{
    const GridPtr grid = make_grid(grid_n);
    const ScatteringData s = compute_scattering(q0, grid);
    const ReflectionData rd = prepare_reflection(evolve_reflection(s.r, t));
    WindowReconstruction w = reconstruct_window(rd, window.lo, window.hi, options);

    IstResult out;
    out.edge_amplitude = edge_amplitude(w.q);
    if (out.edge_amplitude > kEdgeMassThreshold) {
        std::ostringstream msg;
        msg << "reconstructed amplitude " << out.edge_amplitude << " near the window edges [" << window.lo << ", "
            << window.hi << "] exceeds " << kEdgeMassThreshold << "; window may be too small";
        out.warnings.push_back(msg.str());
    }
    out.q = std::move(w.q);
    out.sites = std::move(w.sites);
    return out;
}

EvolutionReport oracle_compare(const Potential& q0, double t, double dt, SiteWindow window, std::size_t grid_n,
                               const SolverOptions& options, int buffer)
{
    EvolutionReport rep;
    rep.t = t;

    IstResult ist = ist_evolve(q0, t, window, grid_n, options);
    rep.c_inf_drift = std::abs(c_total(ist.q) - c_total(q0));
    rep.ist_edge_amplitude = ist.edge_amplitude;
    rep.warnings = std::move(ist.warnings);
    rep.q_ist = std::move(ist.q);

    OracleResult rk = rk4_evolve(q0, t, dt, buffer < 0 ? default_buffer(t) : buffer);
    rep.rk4_log_c_drift = rk.log_c_drift;
    rep.rk4_edge_amplitude = rk.edge_amplitude;
    if (rk.edge_growth > kEdgeMassThreshold) {
        rep.oracle_window_breach = true;
        std::ostringstream msg;
        msg << "oracle edge amplitude grew by " << rk.edge_growth << ", more than " << kEdgeMassThreshold;
        rep.warnings.push_back(msg.str());
    }
    rep.q_rk4 = std::move(rk.q);

    rep.sup_error = sup_distance(*rep.q_ist, *rep.q_rk4);
    rep.l2_error = l2_distance(*rep.q_ist, *rep.q_rk4);
    return rep;
}

} // namespace alist
