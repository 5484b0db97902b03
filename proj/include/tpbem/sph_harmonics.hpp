#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tpbem {

using Vec3 = Eigen::Vector3d;

// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree <= 2n-1.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Real orthonormal spherical harmonics Y_{l,m} on S^2, indexed l*l + l + m.
// Conventions: Y_{1,-1} ∝ y, Y_{1,0} ∝ z, Y_{1,1} ∝ x; ∫_{S^2} Y^2 dσ = 1.
inline int sh_count(int lmax) { return (lmax + 1) * (lmax + 1); }
inline int sh_index(int l, int m) { return l * l + l + m; }
inline int sh_degree_of(int idx) {
    int l = 0;
    while ((l + 1) * (l + 1) <= idx) ++l;
    return l;
}

// Values of all Y_{l,m}, l <= lmax, at the unit vector u. out has sh_count(lmax) slots.
void sh_values(int lmax, const Vec3& u, double* out);

// Values plus tangential (surface) gradients in Cartesian components.
// Stable at the poles: no bare 1/sin(theta) is evaluated.
void sh_values_gradients(int lmax, const Vec3& u, double* vals, Vec3* grads);

// N x sh_count(lmax) synthesis matrix: row i = values at pts[i].
Eigen::MatrixXd sh_synthesis_matrix(int lmax, const std::vector<Vec3>& pts);

// sh_count(lmax) x N analysis matrix for a quadrature {pts, w} on the unit sphere:
// coeff = A * samples. Exact for band limit lmax when the rule integrates degree 2*lmax.
Eigen::MatrixXd sh_analysis_matrix(int lmax, const std::vector<Vec3>& pts,
                                   const Eigen::VectorXd& w);

}  // namespace tpbem
