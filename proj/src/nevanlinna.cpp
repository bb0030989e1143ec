#include "campanato/nevanlinna.hpp"

#include <algorithm>
#include <cmath>

#include "campanato/parallel.hpp"
#include "campanato/poly.hpp"

namespace campanato {

namespace {

constexpr double kInsideCutoff = 1.0 - 1e-12;
constexpr double kResidualTol = 1e-9;
constexpr double kClusterTol = 1e-7;

}  // namespace

PreimageSolver::PreimageSolver(const AnalyticMap& phi, int degree_budget)
    : phi_(phi), dphi_(phi.derivative()) {
    const RationalForm rf = rational_form(phi, degree_budget);
    num_ = rf.num;
    den_ = rf.den;
}

PreimageSet PreimageSolver::solve(cplx w) const {
    // phi(z) = w  <=>  num(z) - w * den(z) = 0.
    std::vector<cplx> cleared = poly_trim(poly_sub(num_, poly_scale(den_, w)));
    PreimageSet out{w, {}};
    if (poly_degree(cleared) < 1) return out;  // constant offset: no solutions

    std::vector<cplx> candidates = poly_roots(cleared);

    // Newton polish on phi itself; skipped near critical points, where the
    // cleared-polynomial root is already residual-accurate.
    std::vector<cplx> polished;
    polished.reserve(candidates.size());
    for (cplx z : candidates) {
        if (std::abs(z) >= 1.0 + 1e-6) continue;  // outside for sure; also keeps clear of poles
        try {
            for (int it = 0; it < 8; ++it) {
                const cplx fz = phi_.eval(z) - w;
                if (std::abs(fz) < 1e-14) break;
                const cplx dz = dphi_.eval(z);
                if (std::abs(dz) < 1e-10) break;
                const cplx step = fz / dz;
                if (std::abs(step) > 0.25) break;
                z -= step;
            }
        } catch (const NumericError&) {
            // keep the unpolished candidate; the residual filter decides
        }
        if (std::abs(z) < kInsideCutoff) polished.push_back(z);
    }

    // Cluster for multiplicities.
    std::vector<cplx> reps;
    std::vector<int> mult;
    for (const cplx& z : polished) {
        bool merged = false;
        for (std::size_t k = 0; k < reps.size(); ++k) {
            if (std::abs(z - reps[k]) <= kClusterTol) {
                reps[k] = (reps[k] * static_cast<double>(mult[k]) + z) / static_cast<double>(mult[k] + 1);
                ++mult[k];
                merged = true;
                break;
            }
        }
        if (!merged) {
            reps.push_back(z);
            mult.push_back(1);
        }
    }

    for (std::size_t k = 0; k < reps.size(); ++k) {
        const double residual = std::abs(phi_.eval(reps[k]) - w);
        if (residual > kResidualTol)
            throw RootFindingDiverged("preimages: root residual " + format_real(residual) +
                                      " exceeds 1e-9 after polishing");
        out.roots.push_back({DiskPoint(reps[k]), mult[k]});
    }
    return out;
}

double PreimageSolver::counting(cplx w) const {
    const PreimageSet set = solve(w);
    double total = 0.0;
    for (const auto& root : set.roots) total += root.multiplicity * std::log(1.0 / root.z.modulus());
    return total;
}

PreimageSet preimages(const AnalyticMap& phi, cplx w, int degree_budget) {
    return PreimageSolver(phi, degree_budget).solve(w);
}

double counting_function(const AnalyticMap& phi, cplx w, int degree_budget) {
    if (std::abs(w - phi.eval(0.0)) < 1e-12)
        throw TargetAtPhiZero("counting_function: target collides with phi(0), where the sum diverges");
    return PreimageSolver(phi, degree_budget).counting(w);
}

namespace {

// int_D g dm with the refinement ladder of NevanlinnaGrid: both directions
// double until two levels agree to rel_tol.
double refined_disk_integral(const std::function<double(cplx)>& g, const NevanlinnaGrid& grid) {
    QuadratureGrid q{grid.angular_nodes, grid.radial_nodes};
    double prev = disk_integral(g, q);
    for (int level = 0; level < grid.max_refinements; ++level) {
        q.circle_nodes *= 2;
        q.radial_nodes *= 2;
        const double cur = disk_integral(g, q);
        if (std::fabs(cur - prev) <= grid.rel_tol * std::max(std::fabs(cur), 1e-9)) return cur;
        prev = cur;
    }
    throw QuadratureNonConvergent("counting-function integral: refinement ladder exhausted");
}

}  // namespace

IdentityCheck change_of_variable_check(const AnalyticMap& f, const CertifiedMap& phi,
                                       const NevanlinnaGrid& grid) {
    const AnalyticMap df = f.derivative();
    const AnalyticMap dphi = phi.map.derivative();

    // lhs: smooth apart from the integrable log weight; one generous pass.
    const double lhs = disk_integral(
        [&](cplx z) {
            const cplx chain = df.eval(phi.map.eval(z)) * dphi.eval(z);
            return std::norm(chain) * std::log(1.0 / std::abs(z));
        },
        QuadratureGrid{2048, 400});

    const cplx w0 = phi.map.eval(0.0);
    const double w0_sq = std::norm(w0);
    const PreimageSolver solver(phi.map);
    const double rhs = refined_disk_integral(
        [&](cplx v) {
            const cplx w = mobius(w0, v);
            const double jacobian =
                (1.0 - w0_sq) * (1.0 - w0_sq) / std::norm(std::pow(1.0 - std::conj(w0) * v, 2));
            return std::norm(df.eval(w)) * solver.counting(w) * jacobian;
        },
        grid);
    return {lhs, rhs};
}

IdentityCheck norm_counting_identity(const CertifiedMap& phi, DiskPoint a, const NevanlinnaGrid& grid) {
    const cplx b = phi.map.eval(a.value());
    if (!(std::abs(b) < 1.0 - 1e-12))
        throw NearBoundaryImage("norm_counting_identity: |phi(a)| is within 1e-12 of the boundary");

    const AnalyticMap psi = compose_trusted(
        AnalyticMap::moebius(b), compose_trusted(phi.map, AnalyticMap::moebius(a.value())));
    const double lhs = h2_norm_squared(psi);

    const PreimageSolver solver(psi);
    const double rhs = 4.0 * refined_disk_integral([&](cplx w) { return solver.counting(w); }, grid);
    return {lhs, rhs};
}

SmithCheck smith_bound_check(const CertifiedMap& psi, int degree_budget) {
    if (std::abs(psi.map.eval(0.0)) > 1e-12)
        throw PreconditionViolated("smith_bound_check: requires psi(0) = 0");

    std::vector<double> radii;
    for (int k = 1; k <= 19; ++k) radii.push_back(0.05 * k);
    radii.insert(radii.end(), {0.975, 0.99, 0.995});
    constexpr int kAngles = 64;

    const PreimageSolver solver(psi.map, degree_budget);
    std::vector<double> counts(radii.size() * kAngles);
    parallel_for(counts.size(), [&](std::size_t i) {
        const double r = radii[i / kAngles];
        const double t = two_pi * static_cast<double>(i % kAngles) / kAngles;
        counts[i] = solver.counting(std::polar(r, t));
    });

    SmithCheck out{0.0, 0.0};
    double worst_quotient = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double r = radii[i / kAngles];
        out.w_star = std::max(out.w_star, r * r * counts[i]);
        if (r >= 0.5) worst_quotient = std::max(worst_quotient, counts[i] / std::log(1.0 / r));
    }
    if (out.w_star > 0.0) out.worst_ratio = worst_quotient / (4.0 / std::log(2.0) * out.w_star);
    return out;
}

}  // namespace campanato
