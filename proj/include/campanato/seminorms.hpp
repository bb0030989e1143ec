#pragma once

#include "campanato/hardy.hpp"

namespace campanato {

// The classification table for the scale CA_p over p.
enum class SpaceLabel { hardy_h2, morrey, bmoa, lipschitz, constants };

const char* space_label_name(SpaceLabel label);

// (-inf, 0] Hardy H^2; (0, 1) Morrey; {1} BMOA; (1, 3] Lipschitz; (3, inf)
// constants only.
SpaceLabel classify_space(double p);

// Geometric supremum grid: rings r_k = 1 - 2^-k for k = 0..k_sup (ring 0 is
// the single origin point), with min(base_angles * 2^k, angle_cap) equispaced
// angles on ring k.  The angular growth tracks 1/(1 - r) up to the cap, which
// keeps sweeps tractable; every reported supremum is a documented lower bound
// with an argmax witness.
struct DiskGrid {
    int k_sup = 14;
    int base_angles = 64;
    int angle_cap = 512;

    static DiskGrid geometric(int k_sup = 14, int base_angles = 64, int angle_cap = 512);

    int ring_count() const { return k_sup + 1; }
    double radius(int k) const;  // 1 - 2^-k
    int angles_at(int k) const;  // 1 for the origin ring, else min(base * 2^k, cap)

    // All grid points, ring by ring, and the aligned ring index per point.
    std::vector<DiskPoint> points() const;
    std::vector<int> rings() const;
};

struct SeminormEstimate {
    double value;
    DiskPoint argmax;
};

// sup_a (1 - |a|^2)^{(1-p)/2} ||f o sigma_a - f(a)||_2 over the grid (a lower
// bound of the true supremum), via one Poisson-field pass per f.  p in [0, 2).
SeminormEstimate star_seminorm(const AnalyticMap& f, double p, const DiskGrid& grid = {});

// Arc-oscillation form: max over a doubly-dyadic arc family (levels
// 0..arc_levels, plus half-shifted copies) of sqrt(|I|^-p int_I |f - f_I|^2),
// arcs snapped to a shared boundary sample grid.  Lower bound of the sup.
double arc_seminorm(const AnalyticMap& f, double p, int arc_levels = 8);

// The unit-norm-scale test family kappa_b / (1 - conj(b) z) with
// kappa_b = (1 - |b|^2)^{(1+p)/2}.  Throws TruncationBudgetExceeded for
// |b| > 0.97 (fixed coefficient-truncation budget).
AnalyticMap test_function(DiskPoint b, double p);

// sup_a (1 - |a|^2)^{(3-p)/2} |f'(a)| over the grid.
SeminormEstimate derivative_growth(const AnalyticMap& f, double p, const DiskGrid& grid = {});

}  // namespace campanato
