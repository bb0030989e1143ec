#include <cmath>

#include "campanato/criteria.hpp"
#include "campanato/hardy.hpp"
#include "doctest.h"

using namespace campanato;
using AM = AnalyticMap;

namespace {

CertifiedMap certified(const AM& phi) { return certify(phi); }

AM half_disk_shift() { return AM::affine(0.5, 0.5); }  // (1 + z) / 2

AM rotated_symbol(const AM& phi, cplx u) {
    // z -> u * phi(conj(u) * z) for |u| = 1
    return compose_trusted(AM::scale(u), compose_trusted(phi, AM::scale(std::conj(u))));
}

double derivative_quantity(const CertifiedMap& phi, const AM& dphi, DiskPoint a, double p) {
    const cplx av = a.value();
    const double ratio = (1.0 - std::norm(av)) / (1.0 - std::norm(phi.map.eval(av)));
    return std::pow(ratio, 0.5 * (3.0 - p)) * std::abs(dphi.eval(av));
}

}  // namespace

TEST_CASE("theta of the identity symbol is 2 pi for every p = q") {
    const CertifiedMap id = certified(AM::identity());
    for (double p : {0.0, 0.5, 1.0, 1.5}) {
        for (const cplx a : {cplx(0.0, 0.0), cplx(0.35, -0.6), cplx(-0.9995, 0.0)}) {
            CHECK(theta(id, DiskPoint(a), p, p) == doctest::Approx(two_pi).epsilon(1e-12));
        }
    }
}

TEST_CASE("theta matches a direct H^2 norm of the recentred composition") {
    // Independent oracle for the Poisson-average path: build
    // psi_a = sigma_{phi(a)} o phi o sigma_a explicitly and take its H^2 norm.
    const AM phi = half_disk_shift();
    const CertifiedMap cert = certified(phi);
    for (const cplx a : {cplx(0.4, 0.0), cplx(-0.2, 0.55), cplx(0.87, -0.31)}) {
        const cplx b = phi.eval(a);
        const AM psi = compose_trusted(AM::moebius(b), compose_trusted(phi, AM::moebius(a)));
        const double direct = h2_norm_squared(psi);
        // p = q = 1 makes the weight 1, so theta is exactly that norm squared.
        const double via_theta = theta(cert, DiskPoint(a), 1.0, 1.0);
        CHECK(via_theta == doctest::Approx(direct).epsilon(1e-10));

        // General weights multiply on top.
        const double w = std::pow(1.0 - std::norm(a), 1.0 - 0.3) / std::pow(1.0 - std::norm(b), 1.0 - 1.4);
        CHECK(theta(cert, DiskPoint(a), 1.4, 0.3) == doctest::Approx(w * direct).epsilon(1e-10));
    }
}

TEST_CASE("theta is equivariant under simultaneous rotation of symbol and point") {
    const AM phi = half_disk_shift();  // non-inner: exercises the sampled path
    const CertifiedMap cert = certified(phi);
    const cplx u = std::polar(1.0, 0.7);
    const CertifiedMap rotated = certified(rotated_symbol(phi, u));
    for (const auto& [p, q] : std::vector<std::pair<double, double>>{{1.25, 1.25}, {0.5, 1.0}}) {
        for (const cplx a : {cplx(0.3, 0.0), std::polar(0.5, 0.9), std::polar(0.9, 2.1)}) {
            const double base = theta(cert, DiskPoint(a), p, q);
            const double rot = theta(rotated, DiskPoint(u * a), p, q);
            CHECK(rot == doctest::Approx(base).epsilon(1e-8));
        }
    }
}

TEST_CASE("theta guards its inputs") {
    const CertifiedMap id = certified(AM::identity());
    CHECK_THROWS_AS((void)theta(id, DiskPoint(cplx(0.2, 0.0)), 2.0, 1.0), InputError);
    CHECK_THROWS_AS((void)theta(id, DiskPoint(cplx(0.2, 0.0)), 1.0, -0.1), InputError);

    // A symbol whose image at the probe point hugs the circle is refused.
    const CertifiedMap close = certified(AM::moebius(cplx(1.0 - 2e-13, 0.0)));
    CHECK_THROWS_AS((void)theta(close, DiskPoint(cplx(0.0, 0.0)), 1.0, 1.0), NearBoundaryImage);
}

TEST_CASE("boundedness profile of the identity is flat at 2 pi") {
    const DiskGrid grid = DiskGrid::geometric(10, 8, 64);
    const auto [profile, verdict] = boundedness_profile(certified(AM::identity()), 1.0, 1.0, grid);
    CHECK(profile.max_theta == doctest::Approx(two_pi).epsilon(1e-9));
    CHECK(std::abs(profile.argmax.value()) == doctest::Approx(0.0).epsilon(1e-15));  // first of the ties
    CHECK(profile.inside_split_max == doctest::Approx(two_pi).epsilon(1e-9));
    CHECK(profile.outside_split_max == doctest::Approx(two_pi).epsilon(1e-9));
    CHECK(profile.samples.size() == grid.points().size());
    CHECK(verdict.outcome == Outcome::bounded_evidence);
    CHECK(std::abs(verdict.divergence_exponent) < 1e-6);

    for (const ThetaSample& s : profile.samples) CHECK(s.theta == doctest::Approx(two_pi).epsilon(1e-9));
}

TEST_CASE("boundedness profile flags the p < q blow-up of the identity") {
    // theta(identity, a, p, q) = 2 pi (1-|a|^2)^{p-q}; p - q = -1 gives slope 1.
    const DiskGrid grid = DiskGrid::geometric(10, 8, 64);
    const auto [profile, verdict] = boundedness_profile(certified(AM::identity()), 0.5, 1.5, grid);
    CHECK(verdict.outcome == Outcome::unbounded_evidence);
    CHECK(verdict.divergence_exponent == doctest::Approx(1.0).epsilon(0.05));
    CHECK(verdict.fit_residual < 0.05);
    CHECK(profile.boundary_trend == doctest::Approx(verdict.divergence_exponent).epsilon(1e-15));
    // Max sits on the deepest ring.
    CHECK(profile.argmax.modulus() == doctest::Approx(grid.radius(10)).epsilon(1e-12));
}

TEST_CASE("constant symbols give zero theta and a bounded verdict") {
    const CertifiedMap c = certified(AM::constant(cplx(0.3, -0.4)));
    CHECK(theta(c, DiskPoint(cplx(0.7, 0.1)), 0.5, 1.5) == 0.0);
    const auto [profile, verdict] = boundedness_profile(c, 1.0, 1.0, DiskGrid::geometric(6, 8, 32));
    CHECK(profile.max_theta == 0.0);
    CHECK(verdict.outcome == Outcome::bounded_evidence);
}

TEST_CASE("profile evaluation is deterministic") {
    const DiskGrid grid = DiskGrid::geometric(7, 8, 32);
    const auto [first, v1] = boundedness_profile(certified(half_disk_shift()), 1.25, 1.25, grid);
    const auto [second, v2] = boundedness_profile(certified(half_disk_shift()), 1.25, 1.25, grid);
    REQUIRE(first.samples.size() == second.samples.size());
    for (std::size_t i = 0; i < first.samples.size(); ++i)
        CHECK(first.samples[i].theta == second.samples[i].theta);  // bit-for-bit
    CHECK(v1.outcome == v2.outcome);
}

TEST_CASE("pointwise derivative bound is dominated by theta") {
    // (1-|a|^2)^2 |phi'(a)|^2 / (1-|phi(a)|^2)^2 <= (2 pi)^{-1} ||psi_a||_2^2,
    // uniformly weighted: quantity^2 <= theta / (2 pi).
    const std::vector<AM> symbols = {AM::monomial(2), AM::moebius(cplx(0.5, 0.0)),
                                     AM::product(AM::identity(), AM::moebius(cplx(0.3, 0.0))),
                                     half_disk_shift()};
    const DiskGrid grid = DiskGrid::geometric(8, 8, 32);
    const std::vector<DiskPoint> points = grid.points();
    for (const AM& phi : symbols) {
        const CertifiedMap cert = certified(phi);
        const AM dphi = phi.derivative();
        for (double p : {0.5, 1.25}) {
            const ThetaEvaluator eval(cert, p, p);
            for (const DiskPoint& a : points) {
                const double lhs = derivative_quantity(cert, dphi, a, p);
                const double rhs = eval.value(a) / two_pi;
                CHECK(lhs * lhs <= rhs * (1.0 + 1e-10) + 1e-12);
            }
        }
    }
}

TEST_CASE("certified symbols satisfy the invariant-metric contraction") {
    const std::vector<AM> symbols = {AM::monomial(2), AM::moebius(cplx(0.5, 0.0)),
                                     AM::product(AM::identity(), AM::moebius(cplx(0.3, 0.0))),
                                     half_disk_shift()};
    const DiskGrid grid = DiskGrid::geometric(8, 8, 32);
    for (const AM& phi : symbols) {
        const AM dphi = phi.derivative();
        for (const DiskPoint& a : grid.points()) {
            const cplx av = a.value();
            const double lhs = (1.0 - std::norm(av)) * std::abs(dphi.eval(av));
            const double rhs = 1.0 - std::norm(phi.eval(av));
            CHECK(lhs <= rhs * (1.0 + 1e-10));
        }
    }
}

TEST_CASE("vanishing profile grades the boundary decay of theta") {
    // Identity: inner, theta flat at 2 pi along every ray -> NotVanishing.
    const VanishingProfile id = vanishing_profile(certified(AM::identity()), 1.0, 1.0);
    CHECK(id.flag == VanishingFlag::not_vanishing);
    CHECK(id.boundary_sup == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(id.rays.size() == 8);
    for (const RayCurve& ray : id.rays)
        for (double v : ray.values) CHECK(v == doctest::Approx(two_pi).epsilon(1e-9));

    // Symbol mapping strictly inside the disk: nothing to check.
    const VanishingProfile strict = vanishing_profile(certified(AM::scale(cplx(0.5, 0.0))), 1.0, 1.0);
    CHECK(strict.flag == VanishingFlag::vacuously_true);
    CHECK(strict.boundary_sup == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(strict.rays.empty());

    const VanishingProfile constant = vanishing_profile(certified(AM::constant(cplx(0.2, 0.1))), 1.0, 1.0);
    CHECK(constant.flag == VanishingFlag::vacuously_true);

    // (1+z)/2 touches the circle only at z = 1: a single ray, and theta does
    // not decay along it (the symbol has a boundary contact of finite slope).
    const VanishingProfile shift = vanishing_profile(certified(half_disk_shift()), 1.0, 1.0);
    REQUIRE(shift.rays.size() == 1);
    CHECK(shift.rays[0].angle == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(shift.flag != VanishingFlag::vanishing);
    CHECK(shift.flag != VanishingFlag::vacuously_true);
    for (double v : shift.rays[0].values) CHECK(v > 0.0);
    // 1 - |phi(a)| shrinks along the ray.
    const auto& gaps = shift.rays[0].one_minus_phi;
    CHECK(gaps.front() > gaps.back());

    CHECK_THROWS_AS((void)vanishing_profile(certified(AM::identity()), 1.0, 1.0, 0), InputError);
}

TEST_CASE("derivative criterion sweeps and verdicts") {
    const DiskGrid grid = DiskGrid::geometric(10, 8, 64);

    // Identity: quantity is identically 1.
    const DerivativeCriterion id = derivative_criterion(certified(AM::identity()), 1.0, grid);
    CHECK(id.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(id.verdict.outcome == Outcome::bounded_evidence);

    // z^2 at p = 1: quantity = 2 r / (1 + r^2), maximal on the deepest ring.
    const DerivativeCriterion square = derivative_criterion(certified(AM::monomial(2)), 1.0, grid);
    const double r = grid.radius(10);
    CHECK(square.value == doctest::Approx(2.0 * r / (1.0 + r * r)).epsilon(1e-12));
    CHECK(square.argmax.modulus() == doctest::Approx(r).epsilon(1e-12));
    CHECK(square.verdict.outcome == Outcome::bounded_evidence);

    CHECK_THROWS_AS((void)derivative_criterion(certified(AM::identity()), 2.5, grid), InputError);

    // Ray variant mirrors the sweep for the identity.
    const VanishingProfile rays = derivative_vanishing(certified(AM::identity()), 1.0);
    CHECK(rays.flag == VanishingFlag::not_vanishing);
    for (const RayCurve& ray : rays.rays)
        for (double v : ray.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("theta and derivative criteria agree on the catalog verdicts") {
    const std::vector<AM> symbols = {AM::monomial(2), half_disk_shift(), AM::moebius(cplx(0.5, 0.0)),
                                     AM::product(AM::identity(), AM::moebius(cplx(0.3, 0.0)))};
    const DiskGrid grid = DiskGrid::geometric(10, 16, 128);
    for (const AM& phi : symbols) {
        const CertifiedMap cert = certified(phi);
        const double p = 1.25;
        const auto [profile, theta_verdict] = boundedness_profile(cert, p, p, grid);
        const DerivativeCriterion deriv = derivative_criterion(cert, p, grid);
        CHECK(theta_verdict.outcome == deriv.verdict.outcome);
        CHECK(theta_verdict.outcome == Outcome::bounded_evidence);
    }
}

TEST_CASE("norm transfer bound under composition") {
    const DiskGrid grid = DiskGrid::geometric(8, 16, 64);

    // Identity symbol: both sides coincide.
    const RatioCheck same =
        norm_transfer_bound_check(certified(AM::identity()), 0.5, AM::test_fn(cplx(0.6, 0.0), 0.5), grid);
    CHECK(same.lhs == doctest::Approx(same.rhs).epsilon(1e-12));

    const std::vector<AM> functions = {AM::identity(), AM::monomial(3), AM::test_fn(cplx(0.6, 0.2), 1.0),
                                       AM::moebius(cplx(0.4, -0.3))};
    const std::vector<AM> symbols = {AM::moebius(cplx(0.5, 0.0)), half_disk_shift(), AM::monomial(2)};
    for (const AM& phi : symbols) {
        const CertifiedMap cert = certified(phi);
        for (const AM& f : functions) {
            for (double p : {0.0, 0.5, 1.0}) {
                const RatioCheck check = norm_transfer_bound_check(cert, p, f, grid);
                CHECK(check.lhs <= check.rhs * 1.05);
            }
        }
    }

    CHECK_THROWS_AS(
        (void)norm_transfer_bound_check(certified(AM::identity()), 1.5, AM::identity(), grid),
        InputError);
}

TEST_CASE("level measure diagnostic decays for a boundary-contact symbol") {
    const DiskGrid grid = DiskGrid::geometric(6, 8, 32);
    const std::vector<double> ts = {0.9, 0.99, 0.999};

    const auto curve = level_measure_diagnostic(certified(half_disk_shift()), 1.0, 1.0, 0.9, ts, grid);
    REQUIRE(curve.size() == 3);
    CHECK(curve[0].value > curve[1].value);
    CHECK(curve[1].value > curve[2].value);
    CHECK(curve[2].value > 0.0);

    // Inner symbols are flat at the full circumference.
    const auto flat = level_measure_diagnostic(
        certified(AM::product(AM::identity(), AM::moebius(cplx(0.3, 0.0)))), 1.0, 1.0, 0.9, ts, grid);
    for (const LevelMeasurePoint& pt : flat) CHECK(pt.value == doctest::Approx(two_pi).epsilon(1e-9));

    CHECK_THROWS_AS(
        (void)level_measure_diagnostic(certified(AM::identity()), 1.0, 1.2, 0.9, ts, grid),
        InputError);
    CHECK_THROWS_AS(
        (void)level_measure_diagnostic(certified(AM::identity()), 1.0, 1.0, 1.2, ts, grid),
        InputError);
    CHECK_THROWS_AS(
        (void)level_measure_diagnostic(certified(AM::identity()), 1.0, 1.0, 0.9, {1.5}, grid),
        InputError);
}

TEST_CASE("index regime labels") {
    CHECK(classify_regime(1.0, 1.0) == RegimeLabel::converse_established);
    CHECK(classify_regime(0.5, 1.0) == RegimeLabel::converse_established);
    CHECK(classify_regime(1.25, 0.3) == RegimeLabel::converse_established);
    CHECK(classify_regime(0.5, 0.5) == RegimeLabel::converse_conjectural);
    CHECK(classify_regime(0.5, 1.5) == RegimeLabel::converse_conjectural);
    CHECK_THROWS_AS((void)classify_regime(2.0, 1.0), InputError);

    CHECK(std::string(regime_label_name(RegimeLabel::converse_established)) == "established");
    CHECK(std::string(regime_label_name(RegimeLabel::converse_conjectural)) == "conjectural");
    CHECK(std::string(outcome_name(Outcome::bounded_evidence)) == "BoundedEvidence");
    CHECK(std::string(vanishing_flag_name(VanishingFlag::vacuously_true)) == "VacuouslyTrue");
}
