#pragma once

// Inverse scattering on the unit circle through the Beals-Coifman integral
// equation mu = I + C_w mu, C_w f = C+(f w-) + C-(f w+).
//
// Sites n >= -1 use the jump factors built from r directly; sites n <= -2
// use the delta-conjugated factors built from r_tilde. Either way
//     q_n = (1/2 pi i) \oint z^{-2} (mu w)_{12}(z, n+1) dz   (clockwise).

#include <cstddef>
#include <string>
#include <vector>

#include "alist/circle.hpp"
#include "alist/errors.hpp"
#include "alist/lattice.hpp"

namespace alist {

/// Reflection coefficient with everything derived from it.
///
///   rho          = ln(1 - |r|^2)
///   c_inf        = exp(rho^(0))
///   delta_plus   = exp(P_{>=0} rho)      (delta_plus / delta_minus = 1 - |r|^2)
///   delta_minus  = exp(-P_{<0} rho)      (|delta_plus delta_minus| = c_inf)
///   r_tilde      = r delta_plus delta_minus / c_inf   (|r_tilde| = |r|)
struct ReflectionData {
    GridPtr grid;
    CircleFunction r;
    double c_inf = 1.0;
    double sup_r = 0.0;
    CircleFunction rho;
    CircleFunction delta_plus;
    CircleFunction delta_minus;
    CircleFunction r_tilde;
};

/// Throws InvariantViolation when sup|r| >= 1 - 1e-10.
ReflectionData prepare_reflection(const CircleFunction& r);

/// a(z) = exp(-sum_{l<0} rho^(l) z^l) for |z| >= 1.
cplx trace_a(const ReflectionData& data, cplx z);
/// Boundary values of trace_a on the grid.
CircleFunction trace_a_on_grid(const ReflectionData& data);

enum class JumpBranch { standard, tilde };

/// standard for n >= -1, tilde for n <= -2.
constexpr JumpBranch branch_for_site(int n) noexcept
{
    return n >= -1 ? JumpBranch::standard : JumpBranch::tilde;
}

const char* to_string(JumpBranch b) noexcept;

/// standard: w- = [[0, -conj(r) z^{2n}], [0, 0]], w+ = [[0, 0], [r z^{-2n}, 0]]
/// tilde:    w- = [[0, 0], [rt z^{-2n}, 0]],    w+ = [[0, -conj(rt) z^{2n}], [0, 0]]
struct JumpFactors {
    int n = 0;
    JumpBranch branch = JumpBranch::standard;
    MatrixCircleFunction w_plus;
    MatrixCircleFunction w_minus;
};

JumpFactors build_jump_factors(const ReflectionData& data, int n, JumpBranch branch);
JumpFactors build_jump_factors(const ReflectionData& data, int n);

/// (I - w-)^{-1} (I + w+) at one node.
Mat2 jump_matrix(const JumpFactors& jump, std::size_t node);

/// C+(f w-) + C-(f w+)
MatrixCircleFunction apply_bc_operator(const MatrixCircleFunction& f, const JumpFactors& jump);

enum class SolverMethod { neumann, conjugate_gradient };

const char* to_string(SolverMethod m) noexcept;

struct SolverOptions {
    SolverMethod method = SolverMethod::conjugate_gradient;
    double tol = 1e-12;
    int max_iter = 200;
};

/// Norms here are relative to ||I||_2, so the Neumann update after m
/// steps is at most sup|r|^m.
struct BealsCoifmanSolution {
    MatrixCircleFunction mu;
    int iterations = 0;
    double residual = 0.0; ///< ||mu - I - C_w mu||_2 / ||I||_2
};

/// Neumann series mu = sum_m C_w^m I, stopped once the update is <= tol.
/// Throws ConvergenceFailure after max_iter steps.
BealsCoifmanSolution solve_beals_coifman(const JumpFactors& jump, double tol, int max_iter);

/// Conjugate gradient on the row-reduced equation. Each row (u_A, u_B) of
/// mu satisfies u_B = e_B + C+(u_A alpha), u_A = g + K u_A with
/// K = P_{>=0} conj(alpha) P_{<0} alpha; on the range of P_{>=0} the
/// operator I - K is Hermitian with spectrum in [1 - sup|r|^2, 1].
BealsCoifmanSolution solve_beals_coifman_cg(const JumpFactors& jump, double tol, int max_iter);

BealsCoifmanSolution solve(const JumpFactors& jump, const SolverOptions& options);

/// (mu w)_{12}
CircleFunction mu_w_12(const MatrixCircleFunction& mu, const JumpFactors& jump);

/// [M(0)]_{12} from the Cauchy representation M = I + C(mu w).
cplx m12_at_origin(const BealsCoifmanSolution& solution, const JumpFactors& jump);

struct SiteReconstruction {
    int n = 0;
    cplx q;
    double residual = 0.0;
    int iterations = 0;
    JumpBranch branch = JumpBranch::standard;
    bool converged = true;
    std::string message;
};

/// Throws ConvergenceFailure when the solver does not converge.
SiteReconstruction reconstruct_site(const ReflectionData& data, int n, const SolverOptions& options = {});

/// First-order term (mu = I) of the site formula.
cplx born_term(const ReflectionData& data, int n);

struct WindowReconstruction {
    Potential q;
    std::vector<SiteReconstruction> sites;
};

class ReconstructionError : public ConvergenceFailure {
public:
    ReconstructionError(std::vector<SiteReconstruction> sites, std::vector<int> failed);

    const std::vector<SiteReconstruction>& sites() const noexcept { return sites_; }
    const std::vector<int>& failed_sites() const noexcept { return failed_; }

private:
    std::vector<SiteReconstruction> sites_;
    std::vector<int> failed_;
};

/// Worker count for site-parallel work: ALIST_THREADS if set and positive,
/// otherwise the hardware concurrency.
unsigned site_parallelism();

/// Independent solves for n = n_lo..n_hi. `threads == 0` picks
/// site_parallelism(). Throws ReconstructionError listing failed sites.
WindowReconstruction reconstruct_window(const ReflectionData& data, int n_lo, int n_hi,
                                        const SolverOptions& options = {}, unsigned threads = 0);

} // namespace alist
