#pragma once

#include "tpbem/potential.hpp"

namespace tpbem {

// The harmonic extension of the outer Dirichlet datum f^o, represented as an
// interior double layer potential. Value, gradient, and Hessian at interior
// points come from differentiating the kernel; the origin values are cached
// because the limit system and the Taylor remainders use them constantly.
struct BackgroundField {
    const SurfaceQuadrature* rule = nullptr;  // outer surface, non-owning
    Vec f;                                    // boundary datum samples
    Vec mu;                                   // density: (1/2 I + W) mu = f
    double value0 = 0.0;
    Vec3 grad0 = Vec3::Zero();
    Mat3 hess0 = Mat3::Zero();

    double value(const Vec3& x) const;
    Vec3 gradient(const Vec3& x) const;
    Mat3 hessian(const Vec3& x) const;
};

BackgroundField compute_background(const SurfaceQuadrature& outer, const Vec& f_o);

}  // namespace tpbem
