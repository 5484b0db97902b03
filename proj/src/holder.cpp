#include "tpbem/holder.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tpbem {

void HolderConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("HolderConfig: alpha must be in (0,1)");
    if (pair_budget == 0) throw std::invalid_argument("HolderConfig: zero pair budget");
}

namespace {

// Max Hoelder quotient over node pairs. All pairs when they fit the budget,
// otherwise a seeded stream of random pairs (prefix property keeps the value
// monotone as the budget grows).
double holder_quotient(const Vec& f, const std::vector<Vec3>& pts, const HolderConfig& cfg) {
    const std::size_t n = pts.size();
    if (n < 2) return 0.0;
    const std::size_t all = n * (n - 1) / 2;
    double q = 0.0;
    if (all <= cfg.pair_budget) {
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d = (pts[i] - pts[j]).norm();
                q = std::max(q, std::abs(f[i] - f[j]) / std::pow(d, cfg.alpha));
            }
        return q;
    }
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t k = 0; k < cfg.pair_budget; ++k) {
        const std::size_t i = rng() % n;
        std::size_t j = rng() % n;
        if (i == j) continue;
        const double d = (pts[i] - pts[j]).norm();
        q = std::max(q, std::abs(f[i] - f[j]) / std::pow(d, cfg.alpha));
    }
    return q;
}

}  // namespace

double c0alpha_norm(const Vec& f, const SurfaceQuadrature& rule, const HolderConfig& cfg) {
    cfg.validate();
    if (f.size() == 0 || f.size() != rule.size())
        throw std::invalid_argument("c0alpha_norm: empty or mismatched node set");
    return f.cwiseAbs().maxCoeff() + holder_quotient(f, rule.nodes, cfg);
}

std::array<Vec, 3> tangential_gradient(const Vec& f, const SurfaceQuadrature& rule) {
    const int n = rule.size();
    std::array<Vec, 3> g{Vec(n), Vec(n), Vec(n)};
    if (rule.is_sphere()) {
        const int lmax = rule.order - 1;
        const Mat A = sh_analysis_matrix(lmax, rule.unit_dirs, rule.param_weights);
        const Vec coef = A * f;
        const double R = rule.sphere_radius();
        std::vector<double> y(sh_count(lmax));
        std::vector<Vec3> dy(sh_count(lmax));
        for (int i = 0; i < n; ++i) {
            sh_values_gradients(lmax, rule.unit_dirs[i], y.data(), dy.data());
            Vec3 gi = Vec3::Zero();
            for (int c = 0; c < coef.size(); ++c) gi += coef[c] * dy[c];
            gi /= R;  // surface gradient on radius-R sphere
            g[0][i] = gi.x();
            g[1][i] = gi.y();
            g[2][i] = gi.z();
        }
        return g;
    }
    // Local quadratic least-squares stencil in tangent coordinates.
    const int k_neigh = 12;
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<double, int>> d(n);
        for (int j = 0; j < n; ++j) d[j] = {(rule.nodes[j] - rule.nodes[i]).squaredNorm(), j};
        std::partial_sort(d.begin(), d.begin() + k_neigh + 1, d.end());
        const Vec3 nu = rule.normals[i];
        Vec3 e1 = nu.unitOrthogonal(), e2 = nu.cross(e1);
        Mat A(k_neigh, 5);
        Vec b(k_neigh);
        for (int k = 0; k < k_neigh; ++k) {
            const int j = d[k + 1].second;
            const Vec3 dx = rule.nodes[j] - rule.nodes[i];
            const double x1 = dx.dot(e1), x2 = dx.dot(e2);
            A(k, 0) = x1;
            A(k, 1) = x2;
            A(k, 2) = x1 * x1;
            A(k, 3) = x1 * x2;
            A(k, 4) = x2 * x2;
            b[k] = f[j] - f[i];
        }
        const Vec c = A.colPivHouseholderQr().solve(b);
        if (!c.allFinite()) throw SolverError("tangential_gradient: degenerate stencil");
        const Vec3 gi = c[0] * e1 + c[1] * e2;
        g[0][i] = gi.x();
        g[1][i] = gi.y();
        g[2][i] = gi.z();
    }
    return g;
}

double c1alpha_norm(const Vec& f, const SurfaceQuadrature& rule, const HolderConfig& cfg) {
    cfg.validate();
    if (f.size() == 0 || f.size() != rule.size())
        throw std::invalid_argument("c1alpha_norm: empty or mismatched node set");
    const auto g = tangential_gradient(f, rule);
    double nrm = f.cwiseAbs().maxCoeff();
    for (const Vec& gk : g) nrm += c0alpha_norm(gk, rule, cfg);
    return nrm;
}

ProductInequalityReport check_product_inequality(const Vec& u, const Vec& v,
                                                 const SurfaceQuadrature& rule,
                                                 const HolderConfig& cfg, NormOrder order) {
    if (u.size() != v.size() || u.size() != rule.size())
        throw std::invalid_argument("check_product_inequality: size mismatch");
    const Vec uv = u.cwiseProduct(v);
    ProductInequalityReport rep;
    if (order == NormOrder::C0Alpha) {
        rep.lhs = c0alpha_norm(uv, rule, cfg);
        rep.bound = c0alpha_norm(u, rule, cfg) * c0alpha_norm(v, rule, cfg);
    } else {
        rep.lhs = c1alpha_norm(uv, rule, cfg);
        rep.bound = 2.0 * c1alpha_norm(u, rule, cfg) * c1alpha_norm(v, rule, cfg);
    }
    rep.holds = rep.lhs <= rep.bound * (1.0 + 1e-12);
    return rep;
}

namespace {

// Discrete C^{0,alpha} norm of a sampled function on boundary x [-R, R] with the
// product metric sqrt(|t-t'|^2 + (s-s')^2).
double product_c0alpha(const Mat& vals, const std::vector<Vec3>& pts, const Vec& s_grid,
                       const HolderConfig& cfg) {
    const std::size_t n = pts.size(), ns = static_cast<std::size_t>(s_grid.size());
    double sup = vals.cwiseAbs().maxCoeff();
    const std::size_t total = n * ns;
    double q = 0.0;
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    const std::size_t all_pairs = total * (total - 1) / 2;
    auto quot = [&](std::size_t a, std::size_t b) {
        const std::size_t ia = a / ns, sa = a % ns, ib = b / ns, sb = b % ns;
        const double dt = (pts[ia] - pts[ib]).norm();
        const double ds = s_grid[sa] - s_grid[sb];
        const double d = std::sqrt(dt * dt + ds * ds);
        if (d == 0.0) return 0.0;
        return std::abs(vals(ia, sa) - vals(ib, sb)) / std::pow(d, cfg.alpha);
    };
    if (all_pairs <= cfg.pair_budget) {
        for (std::size_t a = 0; a + 1 < total; ++a)
            for (std::size_t b = a + 1; b < total; ++b) q = std::max(q, quot(a, b));
    } else {
        for (std::size_t k = 0; k < cfg.pair_budget; ++k) {
            const std::size_t a = rng() % total, b = rng() % total;
            if (a != b) q = std::max(q, quot(a, b));
        }
    }
    return sup + q;
}

}  // namespace

CompositionInequalityReport check_composition_inequality(const BivariateFn& u, const Vec& v,
                                                         const SurfaceQuadrature& rule,
                                                         const HolderConfig& cfg, double R,
                                                         int s_samples) {
    cfg.validate();
    if (v.size() != rule.size()) throw std::invalid_argument("check_composition_inequality: size mismatch");
    if (v.cwiseAbs().maxCoeff() > R)
        throw std::invalid_argument("check_composition_inequality: v leaves [-R, R]");
    const int n = rule.size();

    // composition t -> u(t, v(t))
    Vec comp(n);
    for (int i = 0; i < n; ++i) comp[i] = u.val(rule.nodes[i], v[i]);

    Vec s_grid(s_samples);
    for (int a = 0; a < s_samples; ++a) s_grid[a] = -R + 2.0 * R * a / (s_samples - 1);

    Mat uv(n, s_samples), us(n, s_samples);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < s_samples; ++a) {
            uv(i, a) = u.val(rule.nodes[i], s_grid[a]);
            us(i, a) = u.ds ? u.ds(rule.nodes[i], s_grid[a]) : 0.0;
        }

    CompositionInequalityReport rep;
    rep.comp_c0 = c0alpha_norm(comp, rule, cfg);
    rep.comp_c1 = c1alpha_norm(comp, rule, cfg);
    rep.u_c0 = product_c0alpha(uv, rule.nodes, s_grid, cfg);

    // C^{1,alpha} product norm: sup |u| plus c0alpha of each derivative component
    // (three tangential slices plus the s-derivative).
    rep.u_c1 = uv.cwiseAbs().maxCoeff();
    std::array<Mat, 3> gt{Mat(n, s_samples), Mat(n, s_samples), Mat(n, s_samples)};
    for (int a = 0; a < s_samples; ++a) {
        const auto g = tangential_gradient(uv.col(a), rule);
        for (int k = 0; k < 3; ++k) gt[k].col(a) = g[k];
    }
    for (int k = 0; k < 3; ++k) rep.u_c1 += product_c0alpha(gt[k], rule.nodes, s_grid, cfg) ;
    rep.u_c1 += product_c0alpha(us, rule.nodes, s_grid, cfg);

    rep.v_c1 = c1alpha_norm(v, rule, cfg);
    rep.ratio_c0 = rep.comp_c0 / (rep.u_c0 * (1.0 + std::pow(rep.v_c1, cfg.alpha)));
    rep.ratio_c1 = rep.comp_c1 / (rep.u_c1 * (1.0 + rep.v_c1) * (1.0 + rep.v_c1));
    return rep;
}

}  // namespace tpbem
