#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "tpbem/geometry.hpp"

namespace tpbem {

// Discrete surrogates for the C^{0,alpha} / C^{1,alpha} norms on surface node
// sets. Diagnostics and probe metrics only; solvers converge in weighted l2.
struct HolderConfig {
    double alpha = 0.5;               // Hoelder exponent, in (0,1)
    std::size_t pair_budget = 2'000'000;  // all pairs when the count fits the budget
    std::uint64_t seed = 0x5eed5eedULL;   // pair subsampling stream (nested in budget)

    void validate() const;
};

// max_i |f_i| + max over sampled node pairs |f_i - f_j| / |t_i - t_j|^alpha
// (chordal distance).
double c0alpha_norm(const Vec& f, const SurfaceQuadrature& rule, const HolderConfig& cfg);

// sup |f| + sum over the three Cartesian components g_k of the tangential
// gradient of c0alpha_norm(g_k). Gradient computed spectrally on spheres, by
// local quadratic least-squares stencils otherwise.
double c1alpha_norm(const Vec& f, const SurfaceQuadrature& rule, const HolderConfig& cfg);

std::array<Vec, 3> tangential_gradient(const Vec& f, const SurfaceQuadrature& rule);

enum class NormOrder { C0Alpha, C1Alpha };

struct ProductInequalityReport {
    double lhs = 0.0;    // ||u v||
    double bound = 0.0;  // ||u|| ||v|| (c0alpha) or 2 ||u|| ||v|| (c1alpha)
    bool holds = false;
};

ProductInequalityReport check_product_inequality(const Vec& u, const Vec& v,
                                                 const SurfaceQuadrature& rule,
                                                 const HolderConfig& cfg, NormOrder order);

// A function on boundary x [-R, R]; ds is the partial derivative in the scalar slot.
struct BivariateFn {
    std::function<double(const Vec3&, double)> val;
    std::function<double(const Vec3&, double)> ds;
};

struct CompositionInequalityReport {
    double comp_c0 = 0.0, comp_c1 = 0.0;  // norms of t -> u(t, v(t))
    double u_c0 = 0.0, u_c1 = 0.0;        // norms of u on boundary x [-R, R]
    double v_c1 = 0.0;
    double ratio_c0 = 0.0;  // comp_c0 / (u_c0 (1 + v_c1^alpha))
    double ratio_c1 = 0.0;  // comp_c1 / (u_c1 (1 + v_c1)^2)
};

// Throws std::invalid_argument when v leaves [-R, R].
CompositionInequalityReport check_composition_inequality(const BivariateFn& u, const Vec& v,
                                                         const SurfaceQuadrature& rule,
                                                         const HolderConfig& cfg, double R,
                                                         int s_samples = 9);

}  // namespace tpbem
