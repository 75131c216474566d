#pragma once

// Lattice potentials q = {q_n}, their weighted norms, the conserved product
// c_{-inf} = prod (1 - |q_n|^2), and a Runge-Kutta integrator for the
// defocusing Ablowitz-Ladik flow
//     i dq_n/dt = q_{n+1} - 2 q_n + q_{n-1} - |q_n|^2 (q_{n+1} + q_{n-1}).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace alist {

using cplx = std::complex<double>;

/// A complex sequence stored on [n_min, n_min + size). No invariants.
struct LatticeField {
    int n_min = 0;
    std::vector<cplx> values;

    int n_max() const noexcept { return n_min + static_cast<int>(values.size()) - 1; }
    cplx operator()(int n) const noexcept
    {
        const int k = n - n_min;
        return (k >= 0 && k < static_cast<int>(values.size())) ? values[static_cast<std::size_t>(k)] : cplx{};
    }
};

/// Finitely supported potential with sup |q_n| < 1; zero outside the window.
class Potential {
public:
    Potential() = default;
    /// Throws InvariantViolation if some |q_n| >= 1 or is not finite.
    Potential(int n_min, std::vector<cplx> values);

    static Potential single_site(int n, cplx value) { return Potential(n, {value}); }

    int n_min() const noexcept { return n_min_; }
    int n_max() const noexcept { return n_min_ + static_cast<int>(values_.size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    std::span<const cplx> values() const noexcept { return values_; }
    cplx operator()(int n) const noexcept
    {
        const int k = n - n_min_;
        return (k >= 0 && k < static_cast<int>(values_.size())) ? values_[static_cast<std::size_t>(k)] : cplx{};
    }

    /// Same sites; restricted or zero-extended to [lo, hi].
    Potential window(int lo, int hi) const;

    bool operator==(const Potential&) const = default;

private:
    int n_min_ = 0;
    std::vector<cplx> values_;
};

/// `sites` iid entries uniform in the disk |q| < radius, starting at n_min.
/// mt19937_64 seeded with `seed`; radius must lie in [0, 1).
Potential random_potential(int n_min, int sites, double radius, std::uint64_t seed);

/// (sum_n (1+n^2)^k |q_n|^2)^{1/2}
double l2k_norm(const Potential& q, int k);

double sup_norm(std::span<const cplx> values);
double sup_norm(const Potential& q);

/// prod_{k >= n} (1 - |q_k|^2)
double c_partial(const Potential& q, int n);
/// prod_n (1 - |q_n|^2)
double c_total(const Potential& q);
/// sum_n ln(1 - |q_n|^2), accurate for small |q_n|.
double log_c_total(std::span<const cplx> values);

/// Max and l2 distances between two potentials over the union of windows.
double sup_distance(const Potential& a, const Potential& b);
double l2_distance(const Potential& a, const Potential& b);
double l2_norm(const Potential& q);

/// dq_n/dt on [n_min - 1, n_max + 1].
LatticeField al_rhs(const Potential& q);

enum class Boundary { zero_padded, periodic };

/// Right-hand side on a finite window: zero outside (zero_padded) or wrapped.
void al_rhs_window(std::span<const cplx> q, std::span<cplx> out, Boundary boundary);

/// Default zero-padding margin for an oracle run to time t.
int default_buffer(double t);

struct OracleResult {
    Potential q;              ///< state on the extended window
    double edge_amplitude = 0; ///< max |q_n| on the two outermost sites
    double edge_growth = 0;    ///< edge_amplitude minus its value at t = 0
    std::size_t steps = 0;
    double log_c_drift = 0;   ///< |sum ln(1-|q|^2)(t) - same at t=0|
};

/// Classical RK4 on the support extended by `buffer` sites on each side
/// (periodic: the stored window wraps, buffer is ignored). The step is
/// shrunk so that an integer number of steps lands on t.
/// Throws InvariantViolation if sup |q| reaches 1.
OracleResult rk4_evolve(const Potential& q0, double t, double dt, int buffer,
                        Boundary boundary = Boundary::zero_padded);

} // namespace alist
