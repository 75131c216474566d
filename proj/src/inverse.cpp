#include "alist/inverse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <Eigen/LU>

namespace alist {

namespace {

constexpr double kMaxReflection = 1.0 - 1e-10;
const double kIdentityNorm = std::numbers::sqrt2;

bool is_zero(const CircleFunction& f)
{
    return std::all_of(f.samples().begin(), f.samples().end(), [](cplx v) { return v == cplx{}; });
}

cplx inner(const CircleFunction& a, const CircleFunction& b)
{
    cplx s{};
    for (std::size_t j = 0; j < a.size(); ++j)
        s += std::conj(a[j]) * b[j];
    return s / static_cast<double>(a.size());
}

void axpy(cplx s, const CircleFunction& x, CircleFunction& y)
{
    for (std::size_t j = 0; j < y.size(); ++j)
        y[j] += s * x[j];
}

// The nonzero entry of a strictly triangular factor.
struct OffDiagonal {
    int row;
    int col;
    const CircleFunction* f;
};

OffDiagonal off_diagonal(const MatrixCircleFunction& w, JumpBranch branch, bool minus)
{
    const bool upper = (branch == JumpBranch::standard) == minus;
    return upper ? OffDiagonal{0, 1, &w.entry(0, 1)} : OffDiagonal{1, 0, &w.entry(1, 0)};
}

struct RowSolution {
    CircleFunction a;  // entry in column A
    CircleFunction b;  // entry in column B
    int iterations = 0;
    double residual = 0.0;
};

// Row `row` of mu on the reduced system. alpha = (w-)_{AB}, beta = (w+)_{BA}
// = -conj(alpha):
//     u_B = e_B + C+(u_A alpha),   u_A = e_A + C-(u_B beta).
RowSolution solve_row(const JumpFactors& jump, int row, double tol, int max_iter)
{
    const OffDiagonal wm = off_diagonal(jump.w_minus, jump.branch, true);
    const int col_a = wm.row;
    const int col_b = wm.col;
    const CircleFunction& alpha = *wm.f;
    const CircleFunction& beta = jump.w_plus.entry(col_b, col_a);
    const GridPtr& grid = alpha.grid_ptr();
    const cplx e_a = row == col_a ? 1.0 : 0.0;
    const cplx e_b = row == col_b ? 1.0 : 0.0;
    const CircleFunction alpha_bar = alpha.conj();

    // g = e_A + C-(e_B beta)
    CircleFunction g = CircleFunction::constant(grid, e_a);
    if (e_b != cplx{})
        g += cauchy_minus(beta * e_b);
    const CircleFunction g_neg = project_negative(g);

    auto k_op = [&](const CircleFunction& v) {
        return project_nonnegative(alpha_bar * project_negative(alpha * v));
    };

    const CircleFunction rhs = project_nonnegative(g) + k_op(g_neg);

    // The recursive residual drifts from the true one when 1 - sup|r|^2 is
    // small, so CG restarts from the true residual until that meets tol.
    CircleFunction v = CircleFunction::zeros(grid);
    CircleFunction res = rhs;
    int it = 0;
    for (;;) {
        CircleFunction p = res;
        cplx rr = inner(res, res);
        while (std::sqrt(std::abs(rr)) > tol && it < max_iter) {
            CircleFunction ap = p - k_op(p);
            const cplx step = rr / inner(p, ap);
            axpy(step, p, v);
            axpy(-step, ap, res);
            const cplx rr_next = inner(res, res);
            const cplx ratio = rr_next / rr;
            for (std::size_t j = 0; j < p.size(); ++j)
                p[j] = res[j] + ratio * p[j];
            rr = rr_next;
            ++it;
        }
        res = rhs - (v - k_op(v));
        const double true_res = l2_norm(res);
        if (true_res <= tol)
            break;
        if (it >= max_iter) {
            std::ostringstream msg;
            msg << "conjugate gradient: no convergence after " << max_iter << " iterations at site parameter "
                << jump.n << " (residual " << true_res << ")";
            throw ConvergenceFailure(msg.str());
        }
    }

    RowSolution out;
    out.a = v + g_neg;
    out.b = CircleFunction::constant(grid, e_b) + cauchy_plus(out.a * alpha);
    out.iterations = it;

    const CircleFunction ra = out.a - CircleFunction::constant(grid, e_a) - cauchy_minus(out.b * beta);
    out.residual = l2_norm(ra);
    return out;
}

BealsCoifmanSolution finish(MatrixCircleFunction mu, int iterations, const JumpFactors& jump)
{
    const GridPtr grid = mu.grid_ptr();
    const MatrixCircleFunction r = mu - MatrixCircleFunction::identity(grid) - apply_bc_operator(mu, jump);
    BealsCoifmanSolution s;
    s.residual = l2_norm(r) / kIdentityNorm;
    s.mu = std::move(mu);
    s.iterations = iterations;
    return s;
}

void require_solver_args(double tol, int max_iter)
{
    if (!(tol > 0.0))
        throw InvalidArgument("solver tolerance must be positive");
    if (max_iter < 1)
        throw InvalidArgument("max_iter must be at least 1");
}

} // namespace

ReflectionData prepare_reflection(const CircleFunction& r)
{
    if (!r.grid_ptr())
        throw InvalidArgument("prepare_reflection: reflection coefficient has no grid");
    const double sup = sup_norm(r);
    if (!(sup < kMaxReflection)) {
        std::ostringstream msg;
        msg << "prepare_reflection: sup|r| = " << sup << " is not below 1 - 1e-10";
        throw InvariantViolation(msg.str());
    }

    ReflectionData d;
    d.grid = r.grid_ptr();
    d.r = r;
    d.sup_r = sup;
    d.rho = r.map([](cplx v) { return cplx{std::log1p(-std::norm(v)), 0.0}; });
    d.c_inf = std::exp(analyze(d.rho)[0].real());
    d.delta_plus = project_nonnegative(d.rho).map([](cplx v) { return std::exp(v); });
    d.delta_minus = project_negative(d.rho).map([](cplx v) { return std::exp(-v); });
    d.r_tilde = r * d.delta_plus * d.delta_minus * (1.0 / d.c_inf);
    return d;
}

cplx trace_a(const ReflectionData& data, cplx z)
{
    if (std::abs(z) < 1.0 - 1e-12)
        throw InvalidArgument("trace_a: |z| must be at least 1");
    const FourierSeries rho = analyze(data.rho);
    cplx s{};
    const cplx zi = 1.0 / z;
    cplx pw = zi;
    for (int l = -1; l >= rho.min_mode(); --l) {
        s += rho[l] * pw;
        pw *= zi;
    }
    return std::exp(-s);
}

CircleFunction trace_a_on_grid(const ReflectionData& data)
{
    return project_negative(data.rho).map([](cplx v) { return std::exp(-v); });
}

const char* to_string(JumpBranch b) noexcept
{
    return b == JumpBranch::standard ? "standard" : "tilde";
}

const char* to_string(SolverMethod m) noexcept
{
    return m == SolverMethod::neumann ? "neumann" : "cg";
}

JumpFactors build_jump_factors(const ReflectionData& data, int n, JumpBranch branch)
{
    JumpFactors j;
    j.n = n;
    j.branch = branch;
    j.w_plus = MatrixCircleFunction(data.grid);
    j.w_minus = MatrixCircleFunction(data.grid);
    if (branch == JumpBranch::standard) {
        j.w_minus.entry(0, 1) = -times_power(data.r.conj(), 2 * n);
        j.w_plus.entry(1, 0) = times_power(data.r, -2 * n);
    } else {
        j.w_minus.entry(1, 0) = times_power(data.r_tilde, -2 * n);
        j.w_plus.entry(0, 1) = -times_power(data.r_tilde.conj(), 2 * n);
    }
    return j;
}

JumpFactors build_jump_factors(const ReflectionData& data, int n)
{
    return build_jump_factors(data, n, branch_for_site(n));
}

Mat2 jump_matrix(const JumpFactors& jump, std::size_t node)
{
    const Mat2 id = Mat2::Identity();
    return (id - jump.w_minus.at(node)).inverse() * (id + jump.w_plus.at(node));
}

MatrixCircleFunction apply_bc_operator(const MatrixCircleFunction& f, const JumpFactors& jump)
{
    const MatrixCircleFunction fm = f * jump.w_minus;
    const MatrixCircleFunction fp = f * jump.w_plus;
    MatrixCircleFunction out(f.grid_ptr());
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) {
            CircleFunction e = CircleFunction::zeros(f.grid_ptr());
            if (!is_zero(fm.entry(i, k)))
                e += cauchy_plus(fm.entry(i, k));
            if (!is_zero(fp.entry(i, k)))
                e += cauchy_minus(fp.entry(i, k));
            out.entry(i, k) = std::move(e);
        }
    }
    return out;
}

BealsCoifmanSolution solve_beals_coifman(const JumpFactors& jump, double tol, int max_iter)
{
    require_solver_args(tol, max_iter);
    const GridPtr grid = jump.w_plus.grid_ptr();
    const MatrixCircleFunction id = MatrixCircleFunction::identity(grid);
    MatrixCircleFunction mu = id;
    double update = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        MatrixCircleFunction next = id + apply_bc_operator(mu, jump);
        update = l2_norm(next - mu) / kIdentityNorm;
        mu = std::move(next);
        if (update <= tol)
            return finish(std::move(mu), it, jump);
    }
    std::ostringstream msg;
    msg << "Neumann iteration: no convergence after " << max_iter << " iterations at site parameter " << jump.n
        << " (last update " << update << ")";
    throw ConvergenceFailure(msg.str());
}

BealsCoifmanSolution solve_beals_coifman_cg(const JumpFactors& jump, double tol, int max_iter)
{
    require_solver_args(tol, max_iter);
    MatrixCircleFunction mu(jump.w_plus.grid_ptr());
    const OffDiagonal wm = off_diagonal(jump.w_minus, jump.branch, true);
    int iterations = 0;
    for (int row = 0; row < 2; ++row) {
        RowSolution s = solve_row(jump, row, tol, max_iter);
        mu.entry(row, wm.row) = std::move(s.a);
        mu.entry(row, wm.col) = std::move(s.b);
        iterations = std::max(iterations, s.iterations);
    }
    return finish(std::move(mu), iterations, jump);
}

BealsCoifmanSolution solve(const JumpFactors& jump, const SolverOptions& options)
{
    return options.method == SolverMethod::neumann
               ? solve_beals_coifman(jump, options.tol, options.max_iter)
               : solve_beals_coifman_cg(jump, options.tol, options.max_iter);
}

CircleFunction mu_w_12(const MatrixCircleFunction& mu, const JumpFactors& jump)
{
    const MatrixCircleFunction w = jump.w_plus + jump.w_minus;
    return mu.entry(0, 0) * w.entry(0, 1) + mu.entry(0, 1) * w.entry(1, 1);
}

cplx m12_at_origin(const BealsCoifmanSolution& solution, const JumpFactors& jump)
{
    return contour_integral(times_power(mu_w_12(solution.mu, jump), -1));
}

SiteReconstruction reconstruct_site(const ReflectionData& data, int n, const SolverOptions& options)
{
    SiteReconstruction s;
    s.n = n;
    s.branch = branch_for_site(n);
    const JumpFactors jump = build_jump_factors(data, n + 1, s.branch);

    if (options.method == SolverMethod::neumann) {
        const BealsCoifmanSolution sol = solve_beals_coifman(jump, options.tol, options.max_iter);
        s.q = contour_integral(times_power(mu_w_12(sol.mu, jump), -2));
        s.residual = sol.residual;
        s.iterations = sol.iterations;
        return s;
    }

    // Only the first row of mu enters (mu w)_{12}.
    require_solver_args(options.tol, options.max_iter);
    const RowSolution row = solve_row(jump, 0, options.tol, options.max_iter);
    const OffDiagonal wm = off_diagonal(jump.w_minus, jump.branch, true);
    const CircleFunction& mu11 = wm.row == 0 ? row.a : row.b;
    const MatrixCircleFunction w = jump.w_plus + jump.w_minus;
    s.q = contour_integral(times_power(mu11 * w.entry(0, 1), -2));
    // Column B satisfies its equation by construction; the row has ||e|| = 1.
    s.residual = row.residual;
    s.iterations = std::max(row.iterations, 1);
    return s;
}

cplx born_term(const ReflectionData& data, int n)
{
    const JumpFactors jump = build_jump_factors(data, n + 1, branch_for_site(n));
    const MatrixCircleFunction w = jump.w_plus + jump.w_minus;
    return contour_integral(times_power(w.entry(0, 1), -2));
}

namespace {

std::string describe_failures(const std::vector<SiteReconstruction>& sites, const std::vector<int>& failed)
{
    std::ostringstream msg;
    msg << "reconstruction failed at " << failed.size() << " site(s):";
    for (int n : failed)
        msg << ' ' << n;
    for (const auto& s : sites)
        if (!s.converged) {
            msg << "\n  " << s.message;
            break;
        }
    return msg.str();
}

} // namespace

ReconstructionError::ReconstructionError(std::vector<SiteReconstruction> sites, std::vector<int> failed)
    : ConvergenceFailure(describe_failures(sites, failed)), sites_(std::move(sites)), failed_(std::move(failed))
{
}

unsigned site_parallelism()
{
    if (const char* env = std::getenv("ALIST_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

WindowReconstruction reconstruct_window(const ReflectionData& data, int n_lo, int n_hi,
                                        const SolverOptions& options, unsigned threads)
{
    if (n_lo > n_hi)
        throw InvalidArgument("reconstruct_window: empty window");
    const auto count = static_cast<std::size_t>(n_hi - n_lo + 1);
    std::vector<SiteReconstruction> sites(count);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < count; k = next++) {
            const int n = n_lo + static_cast<int>(k);
            try {
                sites[k] = reconstruct_site(data, n, options);
            } catch (const ConvergenceFailure& e) {
                SiteReconstruction& s = sites[k];
                s.n = n;
                s.branch = branch_for_site(n);
                s.q = cplx{std::nan(""), std::nan("")};
                s.residual = std::nan("");
                s.iterations = options.max_iter;
                s.converged = false;
                s.message = e.what();
            }
        }
    };

    const unsigned workers = std::min<std::size_t>(threads ? threads : site_parallelism(), count);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i)
            pool.emplace_back(worker);
    }

    std::vector<int> failed;
    std::vector<cplx> values(count);
    for (std::size_t k = 0; k < count; ++k) {
        if (!sites[k].converged)
            failed.push_back(sites[k].n);
        values[k] = sites[k].q;
    }
    if (!failed.empty())
        throw ReconstructionError(std::move(sites), std::move(failed));
    return {Potential(n_lo, std::move(values)), std::move(sites)};
}

} // namespace alist
