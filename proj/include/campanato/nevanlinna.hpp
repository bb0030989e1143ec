#pragma once

#include "campanato/hardy.hpp"

namespace campanato {

struct PreimageRoot {
    DiskPoint z;
    int multiplicity;
};

struct PreimageSet {
    cplx target;
    std::vector<PreimageRoot> roots;  // each satisfies |phi(z) - target| <= 1e-9
};

// Reusable in-disk preimage solver: one rational-form pass per map, then one
// cleared-polynomial root solve per target (num - w * den, denominators are
// Blaschke-type and zero-free on the closed disk, so clearing adds no
// spurious in-disk roots).  Roots are Newton-polished on phi itself, filtered
// to |z| < 1 - 1e-12, clustered at 1e-7 for multiplicities, and checked to a
// residual of 1e-9 (RootFindingDiverged otherwise).  Solves at distinct
// targets are independent, so quadrature sweeps can call this from worker
// threads.
class PreimageSolver {
  public:
    explicit PreimageSolver(const AnalyticMap& phi, int degree_budget = 64);

    PreimageSet solve(cplx w) const;
    // sum over preimages of multiplicity * ln(1/|z|); no guard at phi(0)
    // (quadrature layouts keep their nodes away from it).
    double counting(cplx w) const;

    const AnalyticMap& map() const { return phi_; }

  private:
    AnalyticMap phi_, dphi_;
    std::vector<cplx> num_, den_;
};

PreimageSet preimages(const AnalyticMap& phi, cplx w, int degree_budget = 64);

// N(phi, w) = sum_{phi(z) = w} ln(1/|z|) with multiplicity; 0 when w has no
// preimage.  Throws TargetAtPhiZero when |w - phi(0)| < 1e-12, where the
// z = 0 preimage sends the sum to infinity.
double counting_function(const AnalyticMap& phi, cplx w, int degree_budget = 64);

// Quadrature layout for the counting-function area integrals: equispaced
// angles times Gauss nodes on dyadic radial panels, refined (both directions
// doubled) until two consecutive levels agree to rel_tol.  Throws
// QuadratureNonConvergent past max_refinements.
struct NevanlinnaGrid {
    int angular_nodes = 256;
    int radial_nodes = 160;  // Gauss budget across the dyadic panels
    int max_refinements = 3;
    double rel_tol = 3e-5;
};

// Change-of-variable identity for the log-weighted area integral:
//   lhs = int_D |(f o phi)'(z)|^2 ln(1/|z|) dm(z)
//   rhs = int_D |f'(w)|^2 N(phi, w) dm(w).
// The rhs is recentred by w = sigma_{phi(0)}(v) so the logarithmic
// singularity of N sits at v = 0, between the quadrature nodes of the dyadic
// radial panels.
IdentityCheck change_of_variable_check(const AnalyticMap& f, const CertifiedMap& phi,
                                       const NevanlinnaGrid& grid = {});

// With b = phi(a) (computed internally) and psi = sigma_b o phi o sigma_a:
//   lhs = ||psi||_2^2,  rhs = 4 int_D N(psi, w) dm(w).
// Throws NearBoundaryImage when 1 - |phi(a)| < 1e-12.
IdentityCheck norm_counting_identity(const CertifiedMap& phi, DiskPoint a,
                                     const NevanlinnaGrid& grid = {});

struct SmithCheck {
    double w_star;       // max over the grid of |w|^2 N(psi, w)
    double worst_ratio;  // max_{|w| >= 1/2} (N(psi,w)/ln(1/|w|)) / (4 w_star / ln 2)
};

// Sub-mean-value bound for maps fixing the origin:
//   sup_{1/2 <= |w| < 1} N(psi, w)/ln(1/|w|) <= (4/ln 2) max_w |w|^2 N(psi, w),
// evaluated on radii 0.05..0.95 step 0.05 plus {0.975, 0.99, 0.995}, 64
// angles each.  worst_ratio <= 1 certifies the bound on the grid.  Throws
// PreconditionViolated unless |psi(0)| <= 1e-12.
SmithCheck smith_bound_check(const CertifiedMap& psi, int degree_budget = 64);

}  // namespace campanato
