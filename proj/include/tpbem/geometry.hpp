#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tpbem/errors.hpp"
#include "tpbem/sph_harmonics.hpp"

namespace tpbem {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Mat3 = Eigen::Matrix3d;

enum class SurfaceKind { UnitSphere, ScaledSphere, StarShaped };

// A closed star-shaped surface given as a graph over S^2: x(u) = rho(u) * u.
// rho is a finite real spherical-harmonic expansion, so the surface is smooth
// and normals / area elements are closed-form. Both model surfaces enclose the
// origin, which requires rho > 0 everywhere.
struct SurfaceSpec {
    SurfaceKind kind = SurfaceKind::UnitSphere;
    double radius = 1.0;   // ScaledSphere only
    Vec coefficients;      // StarShaped only: SH coefficients of rho, index l*l+l+m

    static SurfaceSpec unit_sphere();
    static SurfaceSpec scaled_sphere(double radius);
    static SurfaceSpec star_shaped(const Vec& coefficients);

    bool is_sphere() const { return kind != SurfaceKind::StarShaped; }
    double sphere_radius() const { return kind == SurfaceKind::UnitSphere ? 1.0 : radius; }
    int lmax() const;

    double radial(const Vec3& u) const;
    // rho and its tangential gradient on S^2 (Cartesian components).
    void radial_with_gradient(const Vec3& u, double& rho, Vec3& grad) const;

    // Min of rho over a dense angular grid; used by validation and inclusion checks.
    double min_radial(int scan_order = 48) const;
    double max_radial(int scan_order = 48) const;
    void validate() const;  // throws GeometryError on a non-positive radial function
};

// Product Gauss-Legendre(cos theta) x uniform(phi) rule mapped to the surface.
// Integrates spherical harmonics up to degree 2*order-1 exactly on the unit
// sphere; nodes never sit on the poles. Immutable after construction.
struct SurfaceQuadrature {
    SurfaceSpec spec;
    int order = 0;                 // L: order gauss points in theta, 2*order in phi
    std::vector<Vec3> nodes;       // points on the surface
    std::vector<Vec3> normals;     // unit outward normals
    std::vector<Vec3> unit_dirs;   // parameter points on S^2
    Vec weights;                   // surface-measure weights (include area Jacobian)
    Vec param_weights;             // unit-sphere weights of the parameter rule

    int size() const { return static_cast<int>(nodes.size()); }
    bool is_sphere() const { return spec.is_sphere(); }
    double sphere_radius() const { return spec.sphere_radius(); }
    double area() const { return weights.sum(); }
    // Typical surface node spacing; used for off-surface evaluation guards.
    double node_spacing() const;
};

SurfaceQuadrature build_quadrature(const SurfaceSpec& spec, int order);

// True iff every sampled point of eps * (inner surface) lies strictly inside
// the outer surface (radial comparison on a dense angular grid).
bool check_inclusion(const SurfaceSpec& outer, const SurfaceSpec& inner, double epsilon,
                     int scan_order = 48);

struct EpsilonWindow {
    double epsilon0 = 1.0;
    std::vector<double> grid;  // sorted, in (0, epsilon0)

    static EpsilonWindow geometric(double eps_min, double eps_max, int count);
    void validate(const SurfaceSpec& outer, const SurfaceSpec& inner) const;
};

}  // namespace tpbem
