#pragma once

#include <Eigen/Dense>

#include "tpbem/geometry.hpp"

namespace tpbem {

// ---- fundamental solution -------------------------------------------------

// (n-1)-measure of the unit sphere in R^n: s_3 = 4*pi, s_4 = 2*pi^2.
double sphere_measure(int n);

// S_n(x) = |x|^{2-n} / ((2-n) s_n), n >= 3. Throws std::domain_error at x = 0.
double fundamental_solution(const Eigen::VectorXd& x, int n);
Eigen::VectorXd grad_fundamental_solution(const Eigen::VectorXd& x, int n);

// n = 3 specializations used by all kernels. S3(x) = -1/(4 pi |x|).
double sn3(const Vec3& x);
Vec3 grad_sn3(const Vec3& x);
Mat3 hess_sn3(const Vec3& x);

// Double layer kernel K(x, y) = -nu(y) . grad S3(x - y); w[mu](x) = sum w_j K(x,y_j) mu_j.
double dl_kernel(const Vec3& x, const Vec3& y, const Vec3& nu_y);
// grad_x of the kernel and its Hessian (for field gradients / Hessians).
Vec3 dl_kernel_gradx(const Vec3& x, const Vec3& y, const Vec3& nu_y);
Mat3 dl_kernel_hessx(const Vec3& x, const Vec3& y, const Vec3& nu_y);

// ---- boundary operator W ----------------------------------------------------

enum class WMode {
    Auto,              // Spectral on spheres, PlainSubtraction otherwise
    PlainSubtraction,  // zero diagonal + exact 1/2 from the Gauss identity W[1] = 1/2
    Spectral,          // exact band-limited diagonalization (spheres only)
};

enum class OperatorFlavor { W, HalfPlusW, HalfMinusW, NormalDerivative };

struct BoundaryOperatorMatrix {
    Mat mat;
    OperatorFlavor flavor = OperatorFlavor::W;
};

BoundaryOperatorMatrix assemble_W(const SurfaceQuadrature& rule, WMode mode = WMode::Auto);

// ---- band-limited resampling ------------------------------------------------

// SH interpolation of nodal values from one rule to another rule of the same
// surface (band limit = from.order - 1).
Vec resample_density(const SurfaceQuadrature& from, const Vec& mu, const SurfaceQuadrature& to);

// ---- off-surface evaluation ---------------------------------------------------

// Plain-quadrature evaluation; requires dist(x, surface) > 2 * node spacing.
double double_layer_offsurface(const SurfaceQuadrature& rule, const Vec& mu, const Vec3& x);
Vec3 double_layer_grad_offsurface(const SurfaceQuadrature& rule, const Vec& mu, const Vec3& x);
Mat3 double_layer_hess_offsurface(const SurfaceQuadrature& rule, const Vec& mu, const Vec3& x);

double distance_to_surface(const SurfaceQuadrature& rule, const Vec3& x);

// ---- one-sided boundary limits (offset ladder + polynomial extrapolation) ---

enum class Side { Inside, Outside };

struct LimitOptions {
    int samples = 8;       // offsets s_k = s0 + k*step, k = 0..samples-1
    double s0 = 0.2;
    double step = 0.05;
    int fit_degree = 6;    // least-squares polynomial degree in the radial variable
    int upsample = 2;      // evaluation-grid refinement factor
};

// Extrapolates boundary values / normal derivatives of w[mu] from off-surface
// samples. On spheres the samples are radial and the fit variable is r/R
// (inside) or R/r (outside), which is exact for band-limited densities; on
// general star-shaped surfaces the samples run along the node normal.
class OffsurfaceExtrapolator {
  public:
    OffsurfaceExtrapolator(const SurfaceQuadrature& rule, const Vec& mu, LimitOptions opts = {});

    double value(int node, Side side) const;
    double normal_derivative(int node, Side side) const;

    const SurfaceQuadrature& fine_rule() const { return fine_; }

  private:
    const SurfaceQuadrature& rule_;
    SurfaceQuadrature fine_;
    Vec mu_fine_;
    LimitOptions opts_;

    double extrapolate(const Vec& samples) const;
    Vec3 sample_point(int node, Side side, int k) const;
};

// ---- normal derivative of the double layer (hypersingular operator) ---------

enum class NdMode { Spectral, OffsetExtrapolation };

struct NormalDerivativeResult {
    Vec value;            // consolidated nu . grad w (equal one-sided limits)
    Vec inside, outside;  // one-sided values (offset mode; equal to value in spectral mode)
    double max_mismatch = 0.0;
};

NormalDerivativeResult normal_derivative_double_layer(const SurfaceQuadrature& rule, const Vec& mu,
                                                      NdMode mode, LimitOptions opts = {});

// Dense matrix form (rows: nodes). Spectral requires a sphere.
Mat assemble_normal_derivative_matrix(const SurfaceQuadrature& rule, NdMode mode,
                                      LimitOptions opts = {});

// ---- interior Dirichlet solve -------------------------------------------------

// Solves (1/2 I + W) mu = f. The harmonic extension is w^+[mu].
Vec solve_interior_dirichlet(const SurfaceQuadrature& rule, const Vec& f,
                             const BoundaryOperatorMatrix& W);
Vec solve_interior_dirichlet(const SurfaceQuadrature& rule, const Vec& f);

}  // namespace tpbem
