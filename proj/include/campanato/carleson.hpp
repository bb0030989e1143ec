#pragma once

#include "campanato/seminorms.hpp"

namespace campanato {

// Sorted, pairwise-disjoint union of boundary arcs.
struct ArcUnion {
    std::vector<CircleArc> arcs;
    double total_length = 0.0;

    bool empty() const { return arcs.empty(); }
    bool is_full_circle() const { return arcs.size() == 1 && arcs[0].is_full_circle(); }
};

// Sorts by start angle, merges overlapping or touching arcs (1e-12 slack),
// folds wrap-arounds, and collapses to the full circle when the union covers
// it.  Idempotent.
ArcUnion normalize_arcs(std::vector<CircleArc> arcs);

// Upper bound of the p-dimensional boundary Hausdorff capacity
// inf { sum |I_j|^p : E subset of union I_j }, restricted to coverings that
// merge runs of E's own component arcs (bridging the gaps between them).
// Exact within that class via interval DP for <= 20 arcs, greedy gap-merging
// up to 64 (TooManyArcs beyond).  p in (0, 1].
double hausdorff_capacity_upper(const ArcUnion& e, double p);

// Boundary super-level set { xi : |sigma_{phi(a)}(phi(sigma_a(xi)))| > t }:
// thresholds M boundary samples and refines each run endpoint by bisection to
// an angular tolerance of 1e-10.  t in (0, 1).
ArcUnion level_set(const CertifiedMap& phi, DiskPoint a, double t, int boundary_nodes = 8192);

struct CarlesonMeasureEstimate {
    double p = 0.0;
    double value = 0.0;  // max over tested arcs of |I|^-p mu(S(I)); lower bound of the sup
    CircleArc witness_arc{0.0, 3.141592653589793};
    int dyadic_depth = 0;
};

// Box norm of the derivative-induced measure dmu = |f'|^2 (1 - |z|^2) dm over
// all dyadic boundary arcs to `depth` (plus half-shifted copies), with
// mu(S(I)) assembled from one shared polar cell table so that boxes at one
// depth tile their annulus exactly.  p in (0, 3], depth <= 12.
CarlesonMeasureEstimate carleson_norm(const AnalyticMap& f, double p, int depth = 8);

// mu(S(I)) for a single arc by direct restricted quadrature (independent of
// the cell table used by carleson_norm); for cross-checks such as the tiling
// identity sum over a dyadic partition = mass of the outer annulus.
double box_mass(const AnalyticMap& f, const CircleArc& arc, int radial_nodes = 64,
                int angular_panels = 256);

// mu({ inner <= |z| < 1 }) for the same measure; the tiling counterpart of a
// full dyadic generation of boxes.
double annulus_mass(const AnalyticMap& f, double inner, int radial_nodes = 64,
                    int angular_panels = 256);

// Fourth-moment inequality data for f with f(0) = 0 and p in (0, 2):
//   lhs = int_T |f|^4 |dxi|,
//   rhs = star^2 * ||f||_2^2              for p in [1, 2),
//   rhs = star^2 * int_0^tmax t H^p_inf({|f| > t}) dt   for p in (0, 1)
// (64 log-spaced levels, trapezoid in t, capacity of the boundary level set).
// The interesting quantity is the ratio lhs/rhs, which stays bounded across
// the catalog; no specific constant is asserted.
RatioCheck fourth_moment_check(const AnalyticMap& f, double p, const DiskGrid& grid = {});

}  // namespace campanato
