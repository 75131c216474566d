#pragma once

// Direct scattering for V(z, n+1) = (z^{sigma3} + Q_n) V(z, n) on |z| = 1.
//
// For q supported on [L, R] the Jost solutions equal z^{n sigma3} outside
// the support, so the scattering matrix is the exact finite product
//     S(z) = z^{-(R+1) sigma3} T_R ... T_L z^{L sigma3},
//     S = [[a, b_breve], [b, a_breve]],  r = b / a.

#include <vector>

#include <Eigen/LU>

#include "alist/circle.hpp"
#include "alist/lattice.hpp"

namespace alist {

/// [[z, q], [conj(q), 1/z]]
struct TransferMatrix {
    Mat2 entries;

    cplx determinant() const { return entries.determinant(); }
};

/// Throws InvariantViolation for |q| >= 1 and InvalidArgument if |z| != 1.
TransferMatrix transfer_matrix(cplx z, cplx q);

Mat2 scattering_matrix_at(const Potential& q, cplx z);

struct ScatteringData {
    GridPtr grid;
    CircleFunction a;
    CircleFunction b;
    CircleFunction r;
    double c_inf = 1.0;
};

/// Throws InvariantViolation if some |a(z_j)| < 1e-14.
ScatteringData compute_scattering(const Potential& q, const GridPtr& grid);

/// Full S(z_j) at every node, for the symmetry checks.
std::vector<Mat2> scattering_matrices(const Potential& q, const CircleGrid& grid);

enum class JostSide { plus, minus };

/// Y^{(+-)}(z, n) = z^{-n sigma3} X^{(+-)}(z, n) on [n_min, n_min + size).
struct JostProfile {
    int n_min = 0;
    std::vector<Mat2> y;

    int n_max() const noexcept { return n_min + static_cast<int>(y.size()) - 1; }
    const Mat2& at(int n) const { return y.at(static_cast<std::size_t>(n - n_min)); }
};

/// Y^{(-)} by forward recursion from Y(L) = I, Y^{(+)} backward from
/// Y(R+1) = I; covers sites [L, R+1] (just [0, 0] for the zero potential).
JostProfile jost_modified(const Potential& q, cplx z, JostSide side);

/// a(z) = c_n det[Y1^-(n), Y2^+(n)] and b(z) = c_n det[Y1^+(n), Y1^-(n)].
struct DeterminantForms {
    cplx a;
    cplx b;
};
DeterminantForms determinant_forms(const Potential& q, cplx z, int n);

/// Winding number of a closed sampled curve around 0 (argument principle
/// over the grid). Throws InvariantViolation if the phase sum is not within
/// 1e-6 of an integer or the curve passes through 0.
int winding_number(const CircleFunction& f);

/// Continuous branch of ln f along the grid, anchored at the principal
/// value on node N/2 (theta = 0).
CircleFunction continuous_log(const CircleFunction& f);

} // namespace alist
