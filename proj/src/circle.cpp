#include "alist/circle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "alist/errors.hpp"

namespace alist {

namespace {

// fftw planning is not thread-safe; execution on caller-owned buffers is.
class PlanCache {
public:
    struct Plans {
        fftw_plan forward;
        fftw_plan backward;
    };

    static PlanCache& instance()
    {
        static PlanCache cache;
        return cache;
    }

    const Plans& get(std::size_t n)
    {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end())
            return it->second;
        std::vector<cplx> in(n), out(n);
        auto* pin = reinterpret_cast<fftw_complex*>(in.data());
        auto* pout = reinterpret_cast<fftw_complex*>(out.data());
        const int len = static_cast<int>(n);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        Plans p{fftw_plan_dft_1d(len, pin, pout, FFTW_FORWARD, flags),
                fftw_plan_dft_1d(len, pin, pout, FFTW_BACKWARD, flags)};
        return plans_.emplace(n, p).first->second;
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

private:
    PlanCache() = default;
    ~PlanCache()
    {
        for (auto& [n, p] : plans_) {
            fftw_destroy_plan(p.forward);
            fftw_destroy_plan(p.backward);
        }
    }

    std::mutex mutex_;
    std::map<std::size_t, Plans> plans_;
};

void execute(fftw_plan plan, const std::vector<cplx>& in, std::vector<cplx>& out)
{
    // Out-of-place c2c transforms leave the input intact.
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

double parity(int l) { return (l % 2 == 0) ? 1.0 : -1.0; }

std::size_t wrap(int l, std::size_t n)
{
    const int m = static_cast<int>(n);
    return static_cast<std::size_t>(((l % m) + m) % m);
}

CircleFunction project(const CircleFunction& f, bool keep_negative)
{
    FourierSeries s = analyze(f);
    for (int l = s.min_mode(); l <= s.max_mode(); ++l)
        if ((l < 0) != keep_negative)
            s[l] = 0.0;
    return synthesize(s, f.grid_ptr());
}

} // namespace

CircleGrid::CircleGrid(std::size_t n)
{
    if (n < 4 || n % 2 != 0)
        throw InvalidArgument("circle grid size must be even and >= 4, got " + std::to_string(n));
    theta_.resize(n);
    z_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        theta_[j] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        z_[j] = std::polar(1.0, theta_[j]);
    }
    // Exact values at the four axis points keep the symmetric node set exact.
    z_[0] = -1.0;
    z_[n / 2] = 1.0;
    if (n % 4 == 0) {
        z_[n / 4] = cplx(0.0, -1.0);
        z_[3 * n / 4] = cplx(0.0, 1.0);
    }
}

GridPtr make_grid(std::size_t n) { return std::make_shared<const CircleGrid>(n); }

// ---------------------------------------------------------------------------

CircleFunction::CircleFunction(GridPtr grid, std::vector<cplx> samples)
    : grid_(std::move(grid)), samples_(std::move(samples))
{
    if (!grid_)
        throw InvalidArgument("circle function needs a grid");
    if (samples_.size() != grid_->size())
        throw InvalidArgument("sample count " + std::to_string(samples_.size()) +
                              " does not match grid size " + std::to_string(grid_->size()));
}

CircleFunction CircleFunction::zeros(GridPtr grid)
{
    const std::size_t n = grid->size();
    return CircleFunction(std::move(grid), std::vector<cplx>(n));
}

CircleFunction CircleFunction::constant(GridPtr grid, cplx value)
{
    const std::size_t n = grid->size();
    return CircleFunction(std::move(grid), std::vector<cplx>(n, value));
}

CircleFunction CircleFunction::from_nodes(GridPtr grid, const std::function<cplx(cplx)>& f)
{
    std::vector<cplx> s(grid->size());
    for (std::size_t j = 0; j < s.size(); ++j)
        s[j] = f(grid->node(j));
    return CircleFunction(std::move(grid), std::move(s));
}

CircleFunction CircleFunction::from_angles(GridPtr grid, const std::function<cplx(double)>& f)
{
    std::vector<cplx> s(grid->size());
    for (std::size_t j = 0; j < s.size(); ++j)
        s[j] = f(grid->theta(j));
    return CircleFunction(std::move(grid), std::move(s));
}

CircleFunction CircleFunction::conj() const
{
    return map([](cplx v) { return std::conj(v); });
}

CircleFunction CircleFunction::map(const std::function<cplx(cplx)>& f) const
{
    std::vector<cplx> s(samples_.size());
    std::transform(samples_.begin(), samples_.end(), s.begin(), f);
    return CircleFunction(grid_, std::move(s));
}

void CircleFunction::require_same_grid(const CircleFunction& other) const
{
    if (grid_ != other.grid_ && (!grid_ || !other.grid_ || grid_->size() != other.grid_->size()))
        throw InvalidArgument("circle functions live on different grids");
}

CircleFunction& CircleFunction::operator+=(const CircleFunction& other)
{
    require_same_grid(other);
    for (std::size_t j = 0; j < samples_.size(); ++j)
        samples_[j] += other.samples_[j];
    return *this;
}

CircleFunction& CircleFunction::operator-=(const CircleFunction& other)
{
    require_same_grid(other);
    for (std::size_t j = 0; j < samples_.size(); ++j)
        samples_[j] -= other.samples_[j];
    return *this;
}

CircleFunction& CircleFunction::operator*=(const CircleFunction& other)
{
    require_same_grid(other);
    for (std::size_t j = 0; j < samples_.size(); ++j)
        samples_[j] *= other.samples_[j];
    return *this;
}

CircleFunction& CircleFunction::operator*=(cplx s)
{
    for (auto& v : samples_)
        v *= s;
    return *this;
}

CircleFunction operator+(CircleFunction a, const CircleFunction& b) { return a += b; }
CircleFunction operator-(CircleFunction a, const CircleFunction& b) { return a -= b; }
CircleFunction operator*(CircleFunction a, const CircleFunction& b) { return a *= b; }
CircleFunction operator*(CircleFunction a, cplx s) { return a *= s; }
CircleFunction operator*(cplx s, CircleFunction a) { return a *= s; }
CircleFunction operator-(CircleFunction a) { return a *= -1.0; }

// ---------------------------------------------------------------------------

FourierSeries::FourierSeries(std::size_t n) : coeffs_(n)
{
    if (n < 4 || n % 2 != 0)
        throw InvalidArgument("Fourier band size must be even and >= 4");
}

double FourierSeries::energy() const
{
    double e = 0.0;
    for (const auto& c : coeffs_)
        e += std::norm(c);
    return e;
}

FourierSeries analyze(const CircleFunction& f)
{
    const std::size_t n = f.size();
    const auto& plans = PlanCache::instance().get(n);
    std::vector<cplx> in(f.samples().begin(), f.samples().end());
    std::vector<cplx> out(n);
    execute(plans.forward, in, out);
    // theta_j = -pi + 2 pi j/N contributes the factor (-1)^l.
    FourierSeries s(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (int l = s.min_mode(); l <= s.max_mode(); ++l)
        s[l] = out[wrap(l, n)] * (parity(l) * scale);
    return s;
}

CircleFunction synthesize(const FourierSeries& series, GridPtr grid)
{
    const std::size_t n = series.size();
    if (!grid || grid->size() != n)
        throw InvalidArgument("Fourier series band does not match grid size");
    const auto& plans = PlanCache::instance().get(n);
    std::vector<cplx> in(n), out(n);
    for (int l = series.min_mode(); l <= series.max_mode(); ++l)
        in[wrap(l, n)] = series[l] * parity(l);
    execute(plans.backward, in, out);
    return CircleFunction(std::move(grid), std::move(out));
}

CircleFunction project_negative(const CircleFunction& f) { return project(f, true); }
CircleFunction project_nonnegative(const CircleFunction& f) { return project(f, false); }

CircleFunction cauchy_plus(const CircleFunction& f) { return project_negative(f); }
CircleFunction cauchy_minus(const CircleFunction& f) { return -project_nonnegative(f); }

cplx contour_integral(const CircleFunction& f) { return -analyze(f)[-1]; }

double l2_norm(const CircleFunction& f)
{
    double s = 0.0;
    for (const auto& v : f.samples())
        s += std::norm(v);
    return std::sqrt(s / static_cast<double>(f.size()));
}

double sup_norm(const CircleFunction& f)
{
    double m = 0.0;
    for (const auto& v : f.samples())
        m = std::max(m, std::abs(v));
    return m;
}

double hk_norm(const FourierSeries& series, int k)
{
    if (k < 0)
        throw InvalidArgument("Sobolev index must be nonnegative");
    double s = 0.0;
    for (int l = series.min_mode(); l <= series.max_mode(); ++l)
        s += std::pow(1.0 + static_cast<double>(l) * l, k) * std::norm(series[l]);
    return std::sqrt(s);
}

double hk_norm(const CircleFunction& f, int k) { return hk_norm(analyze(f), k); }

CircleFunction times_power(const CircleFunction& f, int p)
{
    const auto& g = f.grid();
    std::vector<cplx> s(f.size());
    for (std::size_t j = 0; j < s.size(); ++j)
        s[j] = f[j] * std::polar(1.0, p * g.theta(j));
    return CircleFunction(f.grid_ptr(), std::move(s));
}

// ---------------------------------------------------------------------------

MatrixCircleFunction::MatrixCircleFunction(GridPtr grid) : grid_(std::move(grid))
{
    for (auto& e : entries_)
        e = CircleFunction::zeros(grid_);
}

MatrixCircleFunction MatrixCircleFunction::identity(GridPtr grid)
{
    MatrixCircleFunction m(grid);
    m.entry(0, 0) = CircleFunction::constant(grid, 1.0);
    m.entry(1, 1) = CircleFunction::constant(grid, 1.0);
    return m;
}

Mat2 MatrixCircleFunction::at(std::size_t node) const
{
    Mat2 m;
    m << entries_[0][node], entries_[1][node], entries_[2][node], entries_[3][node];
    return m;
}

void MatrixCircleFunction::set(std::size_t node, const Mat2& m)
{
    entries_[0][node] = m(0, 0);
    entries_[1][node] = m(0, 1);
    entries_[2][node] = m(1, 0);
    entries_[3][node] = m(1, 1);
}

MatrixCircleFunction& MatrixCircleFunction::operator+=(const MatrixCircleFunction& other)
{
    for (int e = 0; e < 4; ++e)
        entries_[e] += other.entries_[e];
    return *this;
}

MatrixCircleFunction& MatrixCircleFunction::operator-=(const MatrixCircleFunction& other)
{
    for (int e = 0; e < 4; ++e)
        entries_[e] -= other.entries_[e];
    return *this;
}

MatrixCircleFunction MatrixCircleFunction::apply(
    const std::function<CircleFunction(const CircleFunction&)>& op) const
{
    MatrixCircleFunction out(grid_);
    for (int e = 0; e < 4; ++e)
        out.entries_[e] = op(entries_[e]);
    return out;
}

MatrixCircleFunction operator+(MatrixCircleFunction a, const MatrixCircleFunction& b) { return a += b; }
MatrixCircleFunction operator-(MatrixCircleFunction a, const MatrixCircleFunction& b) { return a -= b; }

MatrixCircleFunction operator*(const MatrixCircleFunction& a, const MatrixCircleFunction& b)
{
    MatrixCircleFunction out(a.grid_ptr());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.entry(i, j) = a.entry(i, 0) * b.entry(0, j) + a.entry(i, 1) * b.entry(1, j);
    return out;
}

double l2_norm(const MatrixCircleFunction& f)
{
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double e = l2_norm(f.entry(i, j));
            s += e * e;
        }
    return std::sqrt(s);
}

} // namespace alist
