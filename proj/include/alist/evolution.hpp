#pragma once

// Time evolution by the scattering transform: r(theta, t) = r(theta, 0)
// exp(2i (cos 2theta - 1) t), followed by reconstruction, and a side-by-side
// comparison with the Runge-Kutta oracle.

#include <optional>
#include <string>
#include <vector>

#include "alist/circle.hpp"
#include "alist/inverse.hpp"
#include "alist/lattice.hpp"

namespace alist {

/// Pointwise phase factor; |r| is untouched.
CircleFunction evolve_reflection(const CircleFunction& r0, double t);

/// Sites [lo, hi] to reconstruct on.
struct SiteWindow {
    int lo = 0;
    int hi = 0;
};

/// Window covering the support of q plus ceil(4|t|) + 32 sites per side.
SiteWindow default_window(const Potential& q, double t);

struct IstResult {
    Potential q;
    std::vector<SiteReconstruction> sites;
    double edge_amplitude = 0; ///< max |q_n| on the two outermost sites per side
    std::vector<std::string> warnings;
};

/// Edge amplitude above this triggers a window warning.
inline constexpr double kEdgeMassThreshold = 1e-6;

IstResult ist_evolve(const Potential& q0, double t, SiteWindow window, std::size_t grid_n,
                     const SolverOptions& options = {});

struct EvolutionReport {
    double t = 0;
    std::optional<Potential> q_ist;
    std::optional<Potential> q_rk4;
    std::optional<double> sup_error;
    std::optional<double> l2_error;
    std::optional<double> c_inf_drift;      ///< |c_total(q_ist) - c_total(q0)|
    std::optional<double> rk4_log_c_drift;  ///< drift of sum ln(1-|q|^2) along RK4
    std::optional<double> ist_edge_amplitude;
    std::optional<double> rk4_edge_amplitude;
    bool oracle_window_breach = false;      ///< RK4 edge amplitude grew past the threshold
    std::vector<std::string> warnings;
};

/// Runs the IST pipeline and RK4 (zero padded by `buffer` sites, negative
/// means default_buffer(t)) and compares them over the union of windows.
EvolutionReport oracle_compare(const Potential& q0, double t, double dt, SiteWindow window, std::size_t grid_n,
                               const SolverOptions& options = {}, int buffer = -1);

} // namespace alist
