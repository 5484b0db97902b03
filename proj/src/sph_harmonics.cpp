#include "tpbem/sph_harmonics.hpp"

#include <cmath>
#include <stdexcept>

namespace tpbem {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

namespace {

// Workspace-free evaluation of the normalized associated Legendre stack.
// pbar[l][m] with l <= lmax; qbar = pbar / sin(theta) for m >= 1 (regular everywhere).
struct LegendreStack {
    int lmax;
    std::vector<double> p;  // (lmax+1)*(lmax+2)/2 entries, index tri(l)+m
    std::vector<double> q;  // same layout, valid for m >= 1

    explicit LegendreStack(int lm) : lmax(lm) {
        const int n = (lm + 1) * (lm + 2) / 2;
        p.assign(n, 0.0);
        q.assign(n, 0.0);
    }
    static int tri(int l) { return l * (l + 1) / 2; }
    double& P(int l, int m) { return p[tri(l) + m]; }
    double& Q(int l, int m) { return q[tri(l) + m]; }
    double Pv(int l, int m) const { return (m > l || l < 0) ? 0.0 : p[tri(l) + m]; }
    double Qv(int l, int m) const { return (m > l || l < 0) ? 0.0 : q[tri(l) + m]; }

    void compute(double ct, double st) {
        P(0, 0) = 0.28209479177387814;  // sqrt(1/4pi)
        if (lmax == 0) return;
        // diagonal and q-diagonal
        for (int m = 1; m <= lmax; ++m) {
            const double f = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
            P(m, m) = f * st * P(m - 1, m - 1);
            Q(m, m) = (m == 1) ? f * P(0, 0) : f * st * Q(m - 1, m - 1);
        }
        // first off-diagonal
        for (int m = 0; m + 1 <= lmax; ++m) {
            const double f = std::sqrt(2.0 * m + 3.0);
            P(m + 1, m) = f * ct * P(m, m);
            if (m >= 1) Q(m + 1, m) = f * ct * Q(m, m);
        }
        // three-term recurrence in l
        for (int m = 0; m <= lmax; ++m) {
            for (int l = m + 2; l <= lmax; ++l) {
                const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
                const double b =
                    std::sqrt((double(l - 1) * (l - 1) - double(m) * m) / (4.0 * double(l - 1) * (l - 1) - 1.0));
                P(l, m) = a * (ct * P(l - 1, m) - b * P(l - 2, m));
                if (m >= 1) Q(l, m) = a * (ct * Q(l - 1, m) - b * Q(l - 2, m));
            }
        }
    }
};

inline void unit_angles(const Vec3& u, double& ct, double& st, double& cp, double& sp) {
    ct = u.z();
    st = std::hypot(u.x(), u.y());
    if (st > 0.0) {
        cp = u.x() / st;
        sp = u.y() / st;
    } else {
        cp = 1.0;
        sp = 0.0;
    }
}

}  // namespace

void sh_values(int lmax, const Vec3& u, double* out) {
    double ct, st, cp, sp;
    unit_angles(u, ct, st, cp, sp);
    LegendreStack leg(lmax);
    leg.compute(ct, st);
    const double sqrt2 = std::sqrt(2.0);
    // running cos(m*phi), sin(m*phi)
    double cm = 1.0, sm = 0.0;
    for (int l = 0; l <= lmax; ++l) out[sh_index(l, 0)] = leg.Pv(l, 0);
    for (int m = 1; m <= lmax; ++m) {
        const double cprev = cm, sprev = sm;
        cm = cprev * cp - sprev * sp;
        sm = sprev * cp + cprev * sp;
        for (int l = m; l <= lmax; ++l) {
            const double plm = sqrt2 * leg.Pv(l, m);
            out[sh_index(l, m)] = plm * cm;
            out[sh_index(l, -m)] = plm * sm;
        }
    }
}

void sh_values_gradients(int lmax, const Vec3& u, double* vals, Vec3* grads) {
    double ct, st, cp, sp;
    unit_angles(u, ct, st, cp, sp);
    LegendreStack leg(lmax);
    leg.compute(ct, st);
    const Vec3 e_theta(ct * cp, ct * sp, -st);
    const Vec3 e_phi(-sp, cp, 0.0);
    const double sqrt2 = std::sqrt(2.0);

    // m = 0: dP/dtheta = -sqrt(l(l+1)) * Pbar_{l,1}; no phi dependence.
    for (int l = 0; l <= lmax; ++l) {
        vals[sh_index(l, 0)] = leg.Pv(l, 0);
        const double dth = (l >= 1) ? -std::sqrt(double(l) * (l + 1)) * leg.Pv(l, 1) : 0.0;
        grads[sh_index(l, 0)] = dth * e_theta;
    }
    double cm = 1.0, sm = 0.0;
    for (int m = 1; m <= lmax; ++m) {
        const double cprev = cm, sprev = sm;
        cm = cprev * cp - sprev * sp;
        sm = sprev * cp + cprev * sp;
        for (int l = m; l <= lmax; ++l) {
            const double plm = leg.Pv(l, m);
            const double qlm = leg.Qv(l, m);
            const double clm = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) * (double(l) * l - double(m) * m));
            const double dth = l * ct * qlm - clm * leg.Qv(l - 1, m);  // dPbar/dtheta, regular
            const double vc = sqrt2 * plm * cm;
            const double vs = sqrt2 * plm * sm;
            vals[sh_index(l, m)] = vc;
            vals[sh_index(l, -m)] = vs;
            grads[sh_index(l, m)] = sqrt2 * (dth * cm * e_theta - m * qlm * sm * e_phi);
            grads[sh_index(l, -m)] = sqrt2 * (dth * sm * e_theta + m * qlm * cm * e_phi);
        }
    }
}

Eigen::MatrixXd sh_synthesis_matrix(int lmax, const std::vector<Vec3>& pts) {
    const int C = sh_count(lmax);
    Eigen::MatrixXd E(static_cast<Eigen::Index>(pts.size()), C);
    std::vector<double> buf(C);
    for (size_t i = 0; i < pts.size(); ++i) {
        sh_values(lmax, pts[i], buf.data());
        for (int c = 0; c < C; ++c) E(static_cast<Eigen::Index>(i), c) = buf[c];
    }
    return E;
}

Eigen::MatrixXd sh_analysis_matrix(int lmax, const std::vector<Vec3>& pts, const Eigen::VectorXd& w) {
    Eigen::MatrixXd E = sh_synthesis_matrix(lmax, pts);
    return E.transpose() * w.asDiagonal();
}

}  // namespace tpbem
