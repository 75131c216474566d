#pragma once

// Function spaces on the unit circle: uniform grids, discrete Fourier
// analysis, Cauchy boundary projectors, contour integrals and H^k norms.
//
// Conventions used throughout the library:
//   theta_j = -pi + 2 pi j / N,  z_j = exp(i theta_j),  j = 0..N-1
//   f^(l)   = (1/N) sum_j f(theta_j) exp(-i l theta_j),  l in [-N/2, N/2)
//   contour integrals run CLOCKWISE, so (1/2 pi i) \oint z^l dz = -delta_{l,-1}
//   C+ (boundary value from |z| > 1) keeps modes l < 0,
//   C- (boundary value from |z| < 1) is minus the l >= 0 part.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace alist {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

class CircleGrid {
public:
    /// N must be even and at least 4.
    explicit CircleGrid(std::size_t n);

    std::size_t size() const noexcept { return theta_.size(); }
    double theta(std::size_t j) const { return theta_[j]; }
    cplx node(std::size_t j) const { return z_[j]; }
    std::span<const double> angles() const noexcept { return theta_; }
    std::span<const cplx> nodes() const noexcept { return z_; }

    int min_mode() const noexcept { return -static_cast<int>(size() / 2); }
    int max_mode() const noexcept { return static_cast<int>(size() / 2) - 1; }

    /// Index of the node at angle -theta_j (theta = -pi maps to itself).
    std::size_t reflected_index(std::size_t j) const noexcept { return (size() - j) % size(); }

private:
    std::vector<double> theta_;
    std::vector<cplx> z_;
};

using GridPtr = std::shared_ptr<const CircleGrid>;

GridPtr make_grid(std::size_t n);

/// Scalar samples on a grid.
class CircleFunction {
public:
    CircleFunction() = default;
    CircleFunction(GridPtr grid, std::vector<cplx> samples);

    static CircleFunction zeros(GridPtr grid);
    static CircleFunction constant(GridPtr grid, cplx value);
    /// Samples f(z_j).
    static CircleFunction from_nodes(GridPtr grid, const std::function<cplx(cplx)>& f);
    /// Samples f(theta_j).
    static CircleFunction from_angles(GridPtr grid, const std::function<cplx(double)>& f);

    const CircleGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    std::size_t size() const noexcept { return samples_.size(); }

    std::span<const cplx> samples() const noexcept { return samples_; }
    std::span<cplx> samples() noexcept { return samples_; }
    cplx operator[](std::size_t j) const { return samples_[j]; }
    cplx& operator[](std::size_t j) { return samples_[j]; }

    CircleFunction conj() const;
    /// Pointwise map of the samples.
    CircleFunction map(const std::function<cplx(cplx)>& f) const;

    CircleFunction& operator+=(const CircleFunction& other);
    CircleFunction& operator-=(const CircleFunction& other);
    CircleFunction& operator*=(const CircleFunction& other);
    CircleFunction& operator*=(cplx s);

private:
    void require_same_grid(const CircleFunction& other) const;

    GridPtr grid_;
    std::vector<cplx> samples_;
};

CircleFunction operator+(CircleFunction a, const CircleFunction& b);
CircleFunction operator-(CircleFunction a, const CircleFunction& b);
CircleFunction operator*(CircleFunction a, const CircleFunction& b);
CircleFunction operator*(CircleFunction a, cplx s);
CircleFunction operator*(cplx s, CircleFunction a);
CircleFunction operator-(CircleFunction a);

/// Fourier coefficients on the band [-N/2, N/2).
class FourierSeries {
public:
    explicit FourierSeries(std::size_t n);

    std::size_t size() const noexcept { return coeffs_.size(); }
    int min_mode() const noexcept { return -static_cast<int>(size() / 2); }
    int max_mode() const noexcept { return static_cast<int>(size() / 2) - 1; }
    bool in_band(int l) const noexcept { return l >= min_mode() && l <= max_mode(); }

    /// Zero outside the band.
    cplx at(int l) const noexcept { return in_band(l) ? coeffs_[index(l)] : cplx{}; }
    cplx operator[](int l) const { return coeffs_[index(l)]; }
    cplx& operator[](int l) { return coeffs_[index(l)]; }

    std::span<const cplx> raw() const noexcept { return coeffs_; }

    /// sum_l |f^(l)|^2
    double energy() const;

private:
    std::size_t index(int l) const noexcept { return static_cast<std::size_t>(l - min_mode()); }
    std::vector<cplx> coeffs_;
};

FourierSeries analyze(const CircleFunction& f);
CircleFunction synthesize(const FourierSeries& series, GridPtr grid);

/// Keeps modes l < 0.
CircleFunction project_negative(const CircleFunction& f);
/// Keeps modes l >= 0.
CircleFunction project_nonnegative(const CircleFunction& f);

CircleFunction cauchy_plus(const CircleFunction& f);
CircleFunction cauchy_minus(const CircleFunction& f);

/// (1/2 pi i) \oint f(z) dz over the clockwise unit circle.
cplx contour_integral(const CircleFunction& f);

/// (mean_j |f_j|^2)^{1/2}, the L^2 norm for the measure d(theta)/2pi.
double l2_norm(const CircleFunction& f);
double sup_norm(const CircleFunction& f);

/// (sum_l (1+l^2)^k |f^(l)|^2)^{1/2}
double hk_norm(const FourierSeries& series, int k);
double hk_norm(const CircleFunction& f, int k);

/// Multiplies samples by z^p.
CircleFunction times_power(const CircleFunction& f, int p);

/// 2x2 matrix-valued samples stored as four scalar functions.
class MatrixCircleFunction {
public:
    MatrixCircleFunction() = default;
    explicit MatrixCircleFunction(GridPtr grid);

    static MatrixCircleFunction identity(GridPtr grid);

    const GridPtr& grid_ptr() const noexcept { return grid_; }
    std::size_t size() const noexcept { return grid_ ? grid_->size() : 0; }

    CircleFunction& entry(int i, int j) { return entries_[2 * i + j]; }
    const CircleFunction& entry(int i, int j) const { return entries_[2 * i + j]; }

    Mat2 at(std::size_t node) const;
    void set(std::size_t node, const Mat2& m);

    MatrixCircleFunction& operator+=(const MatrixCircleFunction& other);
    MatrixCircleFunction& operator-=(const MatrixCircleFunction& other);

    /// Applies a scalar operator to every entry.
    MatrixCircleFunction apply(const std::function<CircleFunction(const CircleFunction&)>& op) const;

private:
    GridPtr grid_;
    std::array<CircleFunction, 4> entries_;
};

MatrixCircleFunction operator+(MatrixCircleFunction a, const MatrixCircleFunction& b);
MatrixCircleFunction operator-(MatrixCircleFunction a, const MatrixCircleFunction& b);
/// Pointwise matrix product.
MatrixCircleFunction operator*(const MatrixCircleFunction& a, const MatrixCircleFunction& b);

/// Frobenius L^2 norm: (mean_j ||F_j||_F^2)^{1/2}.
double l2_norm(const MatrixCircleFunction& f);

} // namespace alist
