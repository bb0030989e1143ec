#include "campanato/seminorms.hpp"
#include "doctest.h"

using namespace campanato;
using AM = AnalyticMap;

namespace {

const double sqrt_two_pi = std::sqrt(two_pi);

// Closed-form square of the star objective for the test family at center a:
//   2 pi |b|^2 (1-|b|^2)^p (1-|a|^2)^{2-p} / |1 - conj(b) a|^2.
double test_family_objective_sq(cplx b, double p, cplx a) {
    return two_pi * std::norm(b) * std::pow(1.0 - std::norm(b), p) *
           std::pow(1.0 - std::norm(a), 2.0 - p) / std::norm(1.0 - std::conj(b) * a);
}

}  // namespace

TEST_CASE("space classification table") {
    CHECK(classify_space(-2.0) == SpaceLabel::hardy_h2);
    CHECK(classify_space(0.0) == SpaceLabel::hardy_h2);
    CHECK(classify_space(0.5) == SpaceLabel::morrey);
    CHECK(classify_space(1.0) == SpaceLabel::bmoa);
    CHECK(classify_space(1.0 + 1e-13) == SpaceLabel::bmoa);
    CHECK(classify_space(1.5) == SpaceLabel::lipschitz);
    CHECK(classify_space(3.0) == SpaceLabel::lipschitz);
    CHECK(classify_space(3.5) == SpaceLabel::constants);
    CHECK(std::string(space_label_name(SpaceLabel::morrey)) == "morrey");
}

TEST_CASE("geometric grid layout") {
    const DiskGrid g = DiskGrid::geometric(4, 8, 16);
    CHECK(g.ring_count() == 5);
    CHECK(g.radius(0) == 0.0);
    CHECK(g.radius(3) == doctest::Approx(0.875));
    CHECK(g.angles_at(0) == 1);
    CHECK(g.angles_at(1) == 16);
    CHECK(g.angles_at(3) == 16);  // capped
    const auto pts = g.points();
    const auto rings = g.rings();
    CHECK(pts.size() == rings.size());
    CHECK(pts.size() == 1u + 16u * 4u);
    CHECK(rings.front() == 0);
    CHECK(rings.back() == 4);
}

TEST_CASE("star seminorm closed forms") {
    const DiskGrid grid = DiskGrid::geometric(10, 32, 256);

    // Constants have zero oscillation.
    CHECK(star_seminorm(AM::constant(cplx(2, -1)), 1.0, grid).value <= 1e-9);

    // Identity: objective^2 = 2 pi (1-|a|^2)^{2-p}, maximized at the origin.
    for (double p : {0.0, 0.5, 1.0, 1.5}) {
        const auto est = star_seminorm(AM::monomial(1), p, grid);
        CHECK(est.value == doctest::Approx(sqrt_two_pi).epsilon(1e-10));
        CHECK(est.argmax.modulus() <= 1e-12);
    }

    // Homogeneity: ||c f||_* = |c| ||f||_*.
    const AM f = AM::taylor({0.0, 1.0, 0.5, -0.25});
    const cplx c{1.5, -2.0};
    const double base = star_seminorm(f, 1.0, grid).value;
    const double scaled = star_seminorm(AM::product(AM::constant(c), f), 1.0, grid).value;
    CHECK(scaled == doctest::Approx(std::abs(c) * base).epsilon(1e-11));
}

TEST_CASE("star seminorm matches the analytic objective for the test family") {
    const DiskGrid grid = DiskGrid::geometric(10, 32, 256);
    const auto pts = grid.points();
    for (double p : {0.0, 0.5, 1.0, 1.5}) {
        for (double bmod : {0.3, 0.8}) {
            const cplx b = std::polar(bmod, 0.0);
            const AM fb = test_function(DiskPoint(b), p);
            double want_sq = 0.0;
            for (const auto& a : pts) want_sq = std::max(want_sq, test_family_objective_sq(b, p, a.value()));
            const auto est = star_seminorm(fb, p, grid);
            CHECK(est.value == doctest::Approx(std::sqrt(want_sq)).epsilon(1e-9));
        }
    }
    // At p = 1 with b on the grid the supremum sqrt(2 pi) |b| is attained at a = b.
    const auto exact = star_seminorm(test_function(DiskPoint(cplx(0.75, 0)), 1.0), 1.0,
                                     DiskGrid::geometric(8, 16, 64));
    CHECK(exact.value == doctest::Approx(sqrt_two_pi * 0.75).epsilon(1e-10));
}

TEST_CASE("arc oscillation seminorm") {
    // Full circle at p = 0 dominates for the identity: integral of |xi|^2 = 2 pi.
    CHECK(arc_seminorm(AM::monomial(1), 0.0) == doctest::Approx(sqrt_two_pi).epsilon(1e-9));
    CHECK(arc_seminorm(AM::constant(cplx(3, 1)), 1.0) <= 1e-9);
    // Homogeneity.
    const AM f = AM::taylor({0.1, 1.0, 0.0, 0.5});
    CHECK(arc_seminorm(AM::product(AM::constant(cplx(0, 2)), f), 1.0) ==
          doctest::Approx(2.0 * arc_seminorm(f, 1.0)).epsilon(1e-11));
    CHECK_THROWS_AS((void)arc_seminorm(f, 1.0, 40), InputError);
}

TEST_CASE("test family guards and decay") {
    CHECK_THROWS_AS((void)test_function(DiskPoint(cplx(0.99, 0)), 1.0), TruncationBudgetExceeded);
    // f_b -> 0 uniformly on |z| <= 1/2 as |b| -> 1.
    const cplx z{0.3, 0.3};
    double prev = 1e9;
    for (double bmod : {0.9, 0.95, 0.97}) {
        const double v = std::abs(test_function(DiskPoint(cplx(bmod, 0)), 1.0).eval(z));
        CHECK(v <= 2.0 * std::pow(1.0 - bmod * bmod, 1.0));
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("pointwise derivative bound under the mean oscillation") {
    // (1-|a|^2) |f'(a)| <= (2 pi)^{-1/2} ||f o sigma_a - f(a)||_2 at every grid
    // point (coefficient Cauchy-Schwarz), checked across a small catalog.
    const DiskGrid grid = DiskGrid::geometric(8, 16, 64);
    const auto pts = grid.points();
    const std::vector<AM> catalog{AM::monomial(1), AM::monomial(3), AM::taylor({0.2, 1.0, -0.5, 0.25}),
                                  AM::moebius(cplx(0.4, 0.3)), AM::test_fn(cplx(0.6, 0), 1.0)};
    for (const auto& f : catalog) {
        const PoissonField field(f);
        const AM df = f.derivative();
        for (const auto& a : pts) {
            const double lhs = (1.0 - std::norm(a.value())) * std::abs(df.eval(a.value()));
            const double rhs = std::sqrt(mobius_oscillation_sq(field, f, a.value()) / two_pi);
            CHECK(lhs <= rhs * (1.0 + 1e-10) + 1e-12);
        }
    }
}

TEST_CASE("derivative growth sweep") {
    // Identity: (1-|a|^2)^{(3-p)/2} maximized at the origin with value 1.
    for (double p : {0.0, 1.0, 1.5}) {
        const auto est = derivative_growth(AM::monomial(1), p, DiskGrid::geometric(8, 16, 64));
        CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(est.argmax.modulus() <= 1e-12);
    }
}
