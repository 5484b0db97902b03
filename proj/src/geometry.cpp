#include "tpbem/geometry.hpp"

#include <cmath>

namespace tpbem {

SurfaceSpec SurfaceSpec::unit_sphere() { return SurfaceSpec{SurfaceKind::UnitSphere, 1.0, {}}; }

SurfaceSpec SurfaceSpec::scaled_sphere(double radius) {
    if (!(radius > 0.0)) throw GeometryError("scaled_sphere: radius must be positive");
    return SurfaceSpec{SurfaceKind::ScaledSphere, radius, {}};
}

SurfaceSpec SurfaceSpec::star_shaped(const Vec& coefficients) {
    if (coefficients.size() == 0) throw GeometryError("star_shaped: empty coefficient vector");
    SurfaceSpec s;
    s.kind = SurfaceKind::StarShaped;
    s.coefficients = coefficients;
    s.validate();
    return s;
}

int SurfaceSpec::lmax() const {
    if (kind != SurfaceKind::StarShaped) return 0;
    int l = 0;
    while (sh_count(l) < coefficients.size()) ++l;
    if (sh_count(l) != coefficients.size())
        throw GeometryError("star_shaped: coefficient count is not a full (lmax+1)^2 block");
    return l;
}

double SurfaceSpec::radial(const Vec3& u) const {
    if (kind != SurfaceKind::StarShaped) return sphere_radius();
    const int lm = lmax();
    std::vector<double> y(sh_count(lm));
    sh_values(lm, u, y.data());
    double r = 0.0;
    for (int c = 0; c < coefficients.size(); ++c) r += coefficients[c] * y[c];
    return r;
}

void SurfaceSpec::radial_with_gradient(const Vec3& u, double& rho, Vec3& grad) const {
    if (kind != SurfaceKind::StarShaped) {
        rho = sphere_radius();
        grad.setZero();
        return;
    }
    const int lm = lmax();
    std::vector<double> y(sh_count(lm));
    std::vector<Vec3> g(sh_count(lm));
    sh_values_gradients(lm, u, y.data(), g.data());
    rho = 0.0;
    grad.setZero();
    for (int c = 0; c < coefficients.size(); ++c) {
        rho += coefficients[c] * y[c];
        grad += coefficients[c] * g[c];
    }
}

namespace {

// Dense angular scan grid (not a quadrature; poles excluded by construction).
std::vector<Vec3> scan_directions(int n) {
    std::vector<Vec3> dirs;
    dirs.reserve(static_cast<size_t>(n) * 2 * n);
    for (int i = 0; i < n; ++i) {
        const double th = M_PI * (i + 0.5) / n;
        for (int j = 0; j < 2 * n; ++j) {
            const double ph = M_PI * j / n;
            dirs.emplace_back(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
        }
    }
    return dirs;
}

}  // namespace

double SurfaceSpec::min_radial(int scan_order) const {
    if (kind != SurfaceKind::StarShaped) return sphere_radius();
    double m = std::numeric_limits<double>::max();
    for (const Vec3& u : scan_directions(scan_order)) m = std::min(m, radial(u));
    return m;
}

double SurfaceSpec::max_radial(int scan_order) const {
    if (kind != SurfaceKind::StarShaped) return sphere_radius();
    double m = 0.0;
    for (const Vec3& u : scan_directions(scan_order)) m = std::max(m, radial(u));
    return m;
}

void SurfaceSpec::validate() const {
    if (kind == SurfaceKind::StarShaped) {
        lmax();  // shape check
        if (min_radial() <= 0.0)
            throw GeometryError("star_shaped: radial function is not strictly positive");
    } else if (!(sphere_radius() > 0.0)) {
        throw GeometryError("sphere radius must be positive");
    }
}

SurfaceQuadrature build_quadrature(const SurfaceSpec& spec, int order) {
    if (order < 4) throw GeometryError("build_quadrature: order must be >= 4");
    spec.validate();

    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);
    const int nphi = 2 * order;
    const double wphi = 2.0 * M_PI / nphi;

    SurfaceQuadrature q;
    q.spec = spec;
    q.order = order;
    const int n = order * nphi;
    q.nodes.resize(n);
    q.normals.resize(n);
    q.unit_dirs.resize(n);
    q.weights.resize(n);
    q.param_weights.resize(n);

    int k = 0;
    for (int i = 0; i < order; ++i) {
        const double ct = gx[i];
        const double st = std::sqrt(1.0 - ct * ct);
        for (int j = 0; j < nphi; ++j, ++k) {
            const double ph = wphi * j;
            const Vec3 u(st * std::cos(ph), st * std::sin(ph), ct);
            double rho;
            Vec3 grad;
            spec.radial_with_gradient(u, rho, grad);
            if (!(rho > 0.0)) throw GeometryError("build_quadrature: non-positive radial function");
            const double gn2 = rho * rho + grad.squaredNorm();
            const double gn = std::sqrt(gn2);
            q.unit_dirs[k] = u;
            q.nodes[k] = rho * u;
            q.normals[k] = (rho * u - grad) / gn;
            q.param_weights[k] = gw[i] * wphi;
            q.weights[k] = gw[i] * wphi * rho * gn;  // dsigma = rho*sqrt(rho^2+|grad|^2) dOmega
        }
    }
    return q;
}

double SurfaceQuadrature::node_spacing() const {
    const double rmax = spec.is_sphere() ? spec.sphere_radius() : spec.max_radial();
    return M_PI * rmax / order;
}

bool check_inclusion(const SurfaceSpec& outer, const SurfaceSpec& inner, double epsilon,
                     int scan_order) {
    if (!(epsilon > 0.0)) throw GeometryError("check_inclusion: epsilon must be positive");
    for (const Vec3& u : scan_directions(scan_order)) {
        // Scaled inner point along direction u stays on the ray through u, so the
        // star-shaped outer membership is a radial comparison in the same direction.
        if (epsilon * inner.radial(u) >= outer.radial(u)) return false;
    }
    return true;
}

EpsilonWindow EpsilonWindow::geometric(double eps_min, double eps_max, int count) {
    if (!(eps_min > 0.0) || !(eps_max > eps_min) || count < 2)
        throw GeometryError("EpsilonWindow::geometric: need 0 < eps_min < eps_max, count >= 2");
    EpsilonWindow w;
    w.epsilon0 = eps_max;
    w.grid.resize(count);
    const double r = std::log(eps_max / eps_min) / (count - 1);
    for (int i = 0; i < count; ++i) w.grid[i] = eps_min * std::exp(r * i);
    w.grid.back() = eps_max;
    return w;
}

void EpsilonWindow::validate(const SurfaceSpec& outer, const SurfaceSpec& inner) const {
    double prev = 0.0;
    for (double e : grid) {
        if (!(e > prev)) throw GeometryError("EpsilonWindow: grid must be sorted strictly increasing and positive");
        prev = e;
        if (!check_inclusion(outer, inner, e))
            throw GeometryError("EpsilonWindow: eps*inner is not strictly inside outer at eps=" + std::to_string(e));
    }
}

}  // namespace tpbem
