#include "tpbem/potential.hpp"

#include <cmath>

#include "tpbem/parallel.hpp"

namespace tpbem {

double sphere_measure(int n) {
    if (n < 2) throw std::invalid_argument("sphere_measure: n >= 2 required");
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double fundamental_solution(const Eigen::VectorXd& x, int n) {
    if (n < 3) throw std::invalid_argument("fundamental_solution: n >= 3 required");
    const double r = x.norm();
    if (r == 0.0) throw std::domain_error("fundamental_solution: singular at x = 0");
    return std::pow(r, 2.0 - n) / ((2.0 - n) * sphere_measure(n));
}

Eigen::VectorXd grad_fundamental_solution(const Eigen::VectorXd& x, int n) {
    if (n < 3) throw std::invalid_argument("grad_fundamental_solution: n >= 3 required");
    const double r = x.norm();
    if (r == 0.0) throw std::domain_error("grad_fundamental_solution: singular at x = 0");
    return x * std::pow(r, -double(n)) / sphere_measure(n);
}

static constexpr double kFourPi = 4.0 * M_PI;

double sn3(const Vec3& x) {
    const double r = x.norm();
    if (r == 0.0) throw std::domain_error("sn3: singular at x = 0");
    return -1.0 / (kFourPi * r);
}

Vec3 grad_sn3(const Vec3& x) {
    const double r = x.norm();
    if (r == 0.0) throw std::domain_error("grad_sn3: singular at x = 0");
    return x / (kFourPi * r * r * r);
}

Mat3 hess_sn3(const Vec3& x) {
    const double r2 = x.squaredNorm();
    if (r2 == 0.0) throw std::domain_error("hess_sn3: singular at x = 0");
    const double r = std::sqrt(r2);
    const double c = 1.0 / (kFourPi * r * r2);
    return c * (Mat3::Identity() - 3.0 / r2 * x * x.transpose());
}

double dl_kernel(const Vec3& x, const Vec3& y, const Vec3& nu_y) {
    const Vec3 v = x - y;
    const double r2 = v.squaredNorm();
    const double r = std::sqrt(r2);
    return -nu_y.dot(v) / (kFourPi * r * r2);
}

Vec3 dl_kernel_gradx(const Vec3& x, const Vec3& y, const Vec3& nu_y) {
    // grad_x [ -nu . (x-y)/(4pi r^3) ] = -( nu/r^3 - 3 (nu.v) v / r^5 ) / 4pi
    const Vec3 v = x - y;
    const double r2 = v.squaredNorm();
    const double r = std::sqrt(r2);
    const double r3 = r * r2;
    return (-nu_y / r3 + 3.0 * nu_y.dot(v) / (r3 * r2) * v) / kFourPi;
}

Mat3 dl_kernel_hessx(const Vec3& x, const Vec3& y, const Vec3& nu_y) {
    const Vec3 v = x - y;
    const double r2 = v.squaredNorm();
    const double r = std::sqrt(r2);
    const double r5 = r2 * r2 * r;
    const double nv = nu_y.dot(v);
    Mat3 h = nu_y * v.transpose() + v * nu_y.transpose() + nv * Mat3::Identity();
    h *= 3.0;
    h -= 15.0 * nv / r2 * v * v.transpose();
    return -h / (kFourPi * r5);
}

// ---- boundary operator -------------------------------------------------------

namespace {

Mat assemble_W_plain(const SurfaceQuadrature& rule) {
    const int n = rule.size();
    Mat W(n, n);
    parallel_for(n, [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
        for (std::ptrdiff_t i = lo; i < hi; ++i) {
            double offdiag = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == static_cast<int>(i)) {
                    W(i, j) = 0.0;
                    continue;
                }
                const double k = rule.weights[j] * dl_kernel(rule.nodes[i], rule.nodes[j], rule.normals[j]);
                W(i, j) = k;
                offdiag += k;
            }
            // W[mu](t_i) = 1/2 mu_i + sum_{j!=i} w_j K (mu_j - mu_i)
            W(i, i) = 0.5 - offdiag;
        }
    });
    return W;
}

Mat assemble_W_spectral(const SurfaceQuadrature& rule) {
    if (!rule.is_sphere()) throw SolverError("assemble_W: spectral mode requires a sphere");
    const int lmax = rule.order - 1;
    const Mat E = sh_synthesis_matrix(lmax, rule.unit_dirs);
    const Mat A = sh_analysis_matrix(lmax, rule.unit_dirs, rule.param_weights);
    Vec d(sh_count(lmax));
    for (int l = 0; l <= lmax; ++l)
        for (int m = -l; m <= l; ++m) d[sh_index(l, m)] = 1.0 / (2.0 * (2.0 * l + 1.0));
    return E * d.asDiagonal() * A;
}

}  // namespace

BoundaryOperatorMatrix assemble_W(const SurfaceQuadrature& rule, WMode mode) {
    if (rule.size() == 0) throw SolverError("assemble_W: empty rule");
    switch (mode) {
        case WMode::PlainSubtraction:
            return {assemble_W_plain(rule), OperatorFlavor::W};
        case WMode::Spectral:
            return {assemble_W_spectral(rule), OperatorFlavor::W};
        case WMode::Auto:
        default:
            return {rule.is_sphere() ? assemble_W_spectral(rule) : assemble_W_plain(rule),
                    OperatorFlavor::W};
    }
}

// ---- resampling ---------------------------------------------------------------

Vec resample_density(const SurfaceQuadrature& from, const Vec& mu, const SurfaceQuadrature& to) {
    if (mu.size() != from.size()) throw std::invalid_argument("resample_density: size mismatch");
    const int lmax = from.order - 1;
    const Mat A = sh_analysis_matrix(lmax, from.unit_dirs, from.param_weights);
    const Vec coef = A * mu;
    const Mat E = sh_synthesis_matrix(lmax, to.unit_dirs);
    return E * coef;
}

// ---- off-surface evaluation -----------------------------------------------------

double distance_to_surface(const SurfaceQuadrature& rule, const Vec3& x) {
    if (rule.is_sphere()) return std::abs(x.norm() - rule.sphere_radius());
    double d = std::numeric_limits<double>::max();
    for (const Vec3& y : rule.nodes) d = std::min(d, (x - y).norm());
    return d;
}

namespace {
void check_far(const SurfaceQuadrature& rule, const Vec3& x, const char* who) {
    if (distance_to_surface(rule, x) <= 2.0 * rule.node_spacing())
        throw AccuracyError(std::string(who) +
                            ": point too close to the surface for plain quadrature; "
                            "use the jump relations or the offset-extrapolation path");
}
}  // namespace

double double_layer_offsurface(const SurfaceQuadrature& rule, const Vec& mu, const Vec3& x) {
    check_far(rule, x, "double_layer_offsurface");
    double s = 0.0;
    for (int j = 0; j < rule.size(); ++j)
        s += rule.weights[j] * dl_kernel(x, rule.nodes[j], rule.normals[j]) * mu[j];
    return s;
}

Vec3 double_layer_grad_offsurface(const SurfaceQuadrature& rule, const Vec& mu, const Vec3& x) {
    check_far(rule, x, "double_layer_grad_offsurface");
    Vec3 s = Vec3::Zero();
    for (int j = 0; j < rule.size(); ++j)
        s += rule.weights[j] * mu[j] * dl_kernel_gradx(x, rule.nodes[j], rule.normals[j]);
    return s;
}

Mat3 double_layer_hess_offsurface(const SurfaceQuadrature& rule, const Vec& mu, const Vec3& x) {
    check_far(rule, x, "double_layer_hess_offsurface");
    Mat3 s = Mat3::Zero();
    for (int j = 0; j < rule.size(); ++j)
        s += rule.weights[j] * mu[j] * dl_kernel_hessx(x, rule.nodes[j], rule.normals[j]);
    return s;
}

// ---- one-sided limits ------------------------------------------------------------

OffsurfaceExtrapolator::OffsurfaceExtrapolator(const SurfaceQuadrature& rule, const Vec& mu,
                                               LimitOptions opts)
    : rule_(rule), opts_(opts) {
    if (opts_.samples < opts_.fit_degree + 1)
        throw std::invalid_argument("OffsurfaceExtrapolator: samples must exceed fit degree");
    if (opts_.s0 <= 0.0 || opts_.s0 + opts_.step * (opts_.samples - 1) >= 0.95)
        throw std::invalid_argument("OffsurfaceExtrapolator: offset ladder out of range");
    fine_ = build_quadrature(rule.spec, rule.order * opts_.upsample);
    mu_fine_ = resample_density(rule, mu, fine_);
}

Vec3 OffsurfaceExtrapolator::sample_point(int node, Side side, int k) const {
    const double s = opts_.s0 + opts_.step * k;
    if (rule_.is_sphere()) {
        const double R = rule_.sphere_radius();
        const Vec3 dir = rule_.nodes[node] / rule_.nodes[node].norm();
        // fit variable xi = r/R inside, R/r outside; both sampled at 1 - s
        const double r = (side == Side::Inside) ? R * (1.0 - s) : R / (1.0 - s);
        return r * dir;
    }
    const double scale = rule_.spec.min_radial();
    const double d = s * scale;
    return rule_.nodes[node] + (side == Side::Inside ? -d : d) * rule_.normals[node];
}

double OffsurfaceExtrapolator::extrapolate(const Vec& samples) const {
    // Least-squares polynomial in s, evaluated at s = 0 (the surface).
    const int m = opts_.samples, deg = opts_.fit_degree;
    Mat V(m, deg + 1);
    for (int k = 0; k < m; ++k) {
        const double s = opts_.s0 + opts_.step * k;
        double p = 1.0;
        for (int d = 0; d <= deg; ++d) {
            V(k, d) = p;
            p *= s;
        }
    }
    const Vec c = V.colPivHouseholderQr().solve(samples);
    return c[0];
}

double OffsurfaceExtrapolator::value(int node, Side side) const {
    Vec v(opts_.samples);
    for (int k = 0; k < opts_.samples; ++k)
        v[k] = double_layer_offsurface(fine_, mu_fine_, sample_point(node, side, k));
    return extrapolate(v);
}

double OffsurfaceExtrapolator::normal_derivative(int node, Side side) const {
    Vec v(opts_.samples);
    const Vec3 nu = rule_.normals[node];
    for (int k = 0; k < opts_.samples; ++k)
        v[k] = nu.dot(double_layer_grad_offsurface(fine_, mu_fine_, sample_point(node, side, k)));
    return extrapolate(v);
}

// ---- normal derivative -------------------------------------------------------------

namespace {

Vec spectral_nd_eigenvalues(const SurfaceQuadrature& rule, int lmax) {
    const double R = rule.sphere_radius();
    Vec d(sh_count(lmax));
    for (int l = 0; l <= lmax; ++l)
        for (int m = -l; m <= l; ++m) d[sh_index(l, m)] = double(l) * (l + 1) / ((2.0 * l + 1.0) * R);
    return d;
}

}  // namespace

NormalDerivativeResult normal_derivative_double_layer(const SurfaceQuadrature& rule, const Vec& mu,
                                                      NdMode mode, LimitOptions opts) {
    NormalDerivativeResult res;
    const int n = rule.size();
    if (mode == NdMode::Spectral) {
        if (!rule.is_sphere())
            throw SolverError("normal_derivative_double_layer: spectral mode requires a sphere");
        const int lmax = rule.order - 1;
        const Mat E = sh_synthesis_matrix(lmax, rule.unit_dirs);
        const Mat A = sh_analysis_matrix(lmax, rule.unit_dirs, rule.param_weights);
        res.value = E * spectral_nd_eigenvalues(rule, lmax).asDiagonal() * (A * mu);
        res.inside = res.outside = res.value;
        res.max_mismatch = 0.0;
        return res;
    }
    const double scale = rule.is_sphere() ? rule.sphere_radius() : rule.spec.min_radial();
    const double fine_spacing = rule.node_spacing() / opts.upsample;
    if (opts.s0 * scale < fine_spacing)
        throw AccuracyError("normal_derivative_double_layer: offset below node spacing");
    OffsurfaceExtrapolator ex(rule, mu, opts);
    res.inside.resize(n);
    res.outside.resize(n);
    parallel_for(n, [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
        for (std::ptrdiff_t i = lo; i < hi; ++i) {
            res.inside[i] = ex.normal_derivative(static_cast<int>(i), Side::Inside);
            res.outside[i] = ex.normal_derivative(static_cast<int>(i), Side::Outside);
        }
    });
    res.value = 0.5 * (res.inside + res.outside);
    res.max_mismatch = (res.inside - res.outside).cwiseAbs().maxCoeff();
    return res;
}

Mat assemble_normal_derivative_matrix(const SurfaceQuadrature& rule, NdMode mode, LimitOptions opts) {
    const int n = rule.size();
    if (mode == NdMode::Spectral) {
        if (!rule.is_sphere())
            throw SolverError("assemble_normal_derivative_matrix: spectral mode requires a sphere");
        const int lmax = rule.order - 1;
        const Mat E = sh_synthesis_matrix(lmax, rule.unit_dirs);
        const Mat A = sh_analysis_matrix(lmax, rule.unit_dirs, rule.param_weights);
        return E * spectral_nd_eigenvalues(rule, lmax).asDiagonal() * A;
    }
    // The extrapolated limit is a fixed linear functional of the offset samples
    // (s = 0 value of the least-squares polynomial), so the whole operator is
    //   D = sum_k gamma_k * 0.5 (G_k^in + G_k^out) * Resample,
    // with G_k the gradient evaluation matrices at the k-th offset shell.
    const int m = opts.samples, deg = opts.fit_degree;
    Mat V(m, deg + 1);
    for (int k = 0; k < m; ++k) {
        const double s = opts.s0 + opts.step * k;
        double p = 1.0;
        for (int d = 0; d <= deg; ++d) {
            V(k, d) = p;
            p *= s;
        }
    }
    // gamma^T = e_0^T (V^T V)^{-1} V^T: extrapolation weights shared by all rows.
    const Vec gamma = V.colPivHouseholderQr().solve(Mat::Identity(m, m)).row(0).transpose();

    const SurfaceQuadrature fine = build_quadrature(rule.spec, rule.order * opts.upsample);
    const int lmax = rule.order - 1;
    const Mat R = sh_synthesis_matrix(lmax, fine.unit_dirs) *
                  sh_analysis_matrix(lmax, rule.unit_dirs, rule.param_weights);
    const double scale = rule.is_sphere() ? rule.sphere_radius() : rule.spec.min_radial();
    const double Rsph = rule.sphere_radius();

    Mat acc = Mat::Zero(n, fine.size());
    Mat G(n, fine.size());
    for (int k = 0; k < m; ++k) {
        const double s = opts.s0 + opts.step * k;
        for (int side = 0; side < 2; ++side) {
            parallel_for(n, [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
                for (std::ptrdiff_t i = lo; i < hi; ++i) {
                    Vec3 x;
                    if (rule.is_sphere()) {
                        const Vec3 dir = rule.nodes[i] / rule.nodes[i].norm();
                        x = (side == 0 ? Rsph * (1.0 - s) : Rsph / (1.0 - s)) * dir;
                    } else {
                        const double d = s * scale;
                        x = rule.nodes[i] + (side == 0 ? -d : d) * rule.normals[i];
                    }
                    const Vec3 nu = rule.normals[i];
                    for (int j = 0; j < fine.size(); ++j)
                        G(i, j) = fine.weights[j] *
                                  nu.dot(dl_kernel_gradx(x, fine.nodes[j], fine.normals[j]));
                }
            });
            acc.noalias() += (0.5 * gamma[k]) * G;
        }
    }
    return acc * R;
}

// ---- interior Dirichlet --------------------------------------------------------------

Vec solve_interior_dirichlet(const SurfaceQuadrature& rule, const Vec& f,
                             const BoundaryOperatorMatrix& W) {
    if (f.size() != rule.size()) throw std::invalid_argument("solve_interior_dirichlet: size mismatch");
    Mat A = W.mat;
    A.diagonal().array() += 0.5;
    Eigen::PartialPivLU<Mat> lu(A);
    const double rc = lu.rcond();
    if (rc < 1e-13)
        throw SolverError("solve_interior_dirichlet: near-singular system, rcond = " + std::to_string(rc));
    return lu.solve(f);
}

Vec solve_interior_dirichlet(const SurfaceQuadrature& rule, const Vec& f) {
    return solve_interior_dirichlet(rule, f, assemble_W(rule));
}

}  // namespace tpbem
