#pragma once

#include <cmath>
#include <functional>

#include "campanato/analytic_map.hpp"

namespace campanato {

struct QuadratureGrid {
    int circle_nodes = 4096;  // equispaced boundary angles (rounded up to a power of two)
    int radial_nodes = 256;   // Gauss-Legendre budget spread across the radial panels
};

struct IdentityCheck {
    double lhs = 0.0, rhs = 0.0;
    double abs_error() const { return std::fabs(lhs - rhs); }
    double rel_error() const { return abs_error() / std::max(std::fabs(rhs), 1e-12); }
};

struct RatioCheck {
    double lhs = 0.0, rhs = 0.0;
    double ratio() const { return lhs / std::max(rhs, 1e-300); }
};

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
struct GaussRule {
    std::vector<double> nodes, weights;
};
const GaussRule& gauss_legendre(int order);

// (1/M) sum_j |f(r e^{2 pi i j / M})|^2.
double mean_modulus_squared(const AnalyticMap& f, double radius, int circle_nodes);

// ||f||_2 = sqrt(int_T |f|^2 |dxi|) = sqrt(2 pi sum |a_n|^2).  Exact via the
// coefficient stream when the tree admits one, otherwise boundary quadrature
// with the node count doubled until the mean stabilizes.
double h2_norm_squared(const AnalyticMap& f, const QuadratureGrid& grid = {});
double h2_norm(const AnalyticMap& f, const QuadratureGrid& grid = {});
// Forced boundary-quadrature path (no Parseval shortcut); for cross-checks.
double h2_norm_quadrature(const AnalyticMap& f, int circle_nodes);

// lhs = pi^{-1} int_D |f'|^2 ln(1/|z|^2) dm, computed after the substitution
// u = r^2 (weight becomes -ln u) by composite Gauss-Legendre on dyadic panels
// of [2^-34, 1] plus the closed-form [0, 2^-34] remnant; rhs =
// (2 pi)^{-1} int_T |f - f(0)|^2 |dxi|.  The two agree for every H^2 function.
// Throws QuadratureNonConvergent when doubling the radial budget still moves
// lhs by more than 1e-6 relative.
IdentityCheck hardy_littlewood_check(const AnalyticMap& f, const QuadratureGrid& grid = {});

// lhs = ||g o psi||_2 against rhs = ||g||_2 ||psi||_2 for g(0) = psi(0) = 0;
// by subordination lhs <= ||g||_2 when psi is a self-map fixing 0, so the
// ratio stays below 1/||psi||_2-scale bounds.  Throws PreconditionViolated
// when either function fails to vanish at 0 (to 1e-12).
RatioCheck composition_norm_check(const AnalyticMap& g, const CertifiedMap& psi,
                                  const QuadratureGrid& grid = {});

// int_D h dm by a polar product rule: equispaced angles times composite
// Gauss-Legendre on dyadic radial panels [2^-k-1, 2^-k] down to 2^-20, which
// resolves integrable blow-ups at the origin (the -ln|z| weights of this
// library).  The disk of radius 2^-20 is dropped (area 3e-12).  Throws
// NonFiniteSample when h returns NaN or infinity at a node.
double disk_integral(const std::function<double(cplx)>& h, const QuadratureGrid& grid = {});

// Harmonic extension of the boundary density |f|^2 from one spectral pass:
//   P[|f|^2](a) = g_0 + 2 Re sum_{m>=1} g_m a^m,
// with g_m the Fourier modes of |f|^2 on T.  Moebius-averaged oscillations
// reduce to it without any per-point quadrature:
//   ||f o sigma_a - f(a)||_2^2 = 2 pi (P[|f|^2](a) - |f(a)|^2),
// which is how the supremum sweeps stay spectrally accurate uniformly in |a|.
class PoissonField {
  public:
    // Samples |f|^2 on a circle grid sized adaptively: starting from
    // initial_nodes, the node count doubles until the top eighth of the
    // spectrum falls below 1e-12 of its peak (capped at 2^20).
    explicit PoissonField(const AnalyticMap& f, int initial_nodes = 4096);
    // From caller-provided boundary values at a fixed resolution (the modulus
    // squared is taken here); no adaptivity.
    explicit PoissonField(const std::vector<cplx>& boundary_values);

    // Harmonic extension of |f|^2 at a (|a| < 1).
    double value(cplx a) const;
    // Mode 0: (2 pi)^{-1} int_T |f|^2.
    double mean() const { return mean_; }
    int node_count() const { return nodes_; }

  private:
    void build(std::vector<cplx> density);
    std::vector<cplx> modes_;  // m = 0..effective_modes_
    double mean_ = 0.0;
    int nodes_ = 0;
};

// ||f o sigma_a - f(a)||_2^2 for a field built from the same f.
inline double mobius_oscillation_sq(const PoissonField& field, const AnalyticMap& f, cplx a) {
    return two_pi * std::max(field.value(a) - std::norm(f.eval(a)), 0.0);
}

}  // namespace campanato
