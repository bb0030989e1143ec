#include <random>

#include "campanato/analytic_map.hpp"
#include "campanato/poly.hpp"
#include "doctest.h"

using namespace campanato;
using AM = AnalyticMap;

namespace {

std::mt19937 rng(31415u);

cplx random_point(double max_radius) {
    std::uniform_real_distribution<double> radial(0.0, max_radius), angular(0.0, two_pi);
    return std::polar(radial(rng), angular(rng));
}

// Symmetric difference quotient along both axes.
cplx numeric_derivative(const AM& f, cplx z, double h = 1e-6) {
    return (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("node evaluation matches closed forms") {
    const cplx z{0.4, -0.3};
    CHECK(std::abs(AM::constant(cplx(2, 1)).eval(z) - cplx(2, 1)) <= 1e-15);
    CHECK(std::abs(AM::monomial(5).eval(z) - std::pow(z, 5)) <= 1e-14);
    CHECK(std::abs(AM::affine(cplx(0.5, 0), cplx(0, 0.5)).eval(z) - (0.5 + cplx(0, 0.5) * z)) <= 1e-15);
    CHECK(std::abs(AM::scale(cplx(0, 1)).eval(z) - cplx(0, 1) * z) <= 1e-15);
    CHECK(std::abs(AM::moebius(cplx(0.5, 0)).eval(z) - (0.5 - z) / (1.0 - 0.5 * z)) <= 1e-15);

    const cplx b{0.3, 0.4};
    const double p = 1.0;
    const double kappa = std::pow(1.0 - std::norm(b), 0.5 * (1.0 + p));
    CHECK(std::abs(AM::test_fn(b, p).eval(z) - kappa / (1.0 - std::conj(b) * z)) <= 1e-15);

    CHECK(std::abs(AM::taylor({1.0, 2.0, 3.0}).eval(z) - (1.0 + 2.0 * z + 3.0 * z * z)) <= 1e-15);

    // blaschke([0, 0.3]) = z * sigma_{0.3}(z)
    const AM bl = AM::blaschke({cplx(0.0), cplx(0.3, 0.0)});
    CHECK(std::abs(bl.eval(z) - z * (0.3 - z) / (1.0 - 0.3 * z)) <= 1e-14);

    const AM comp = AM::compose(AM::moebius(cplx(0.5, 0)), AM::monomial(2));
    CHECK(std::abs(comp.eval(z) - (0.5 - z * z) / (1.0 - 0.5 * z * z)) <= 1e-14);

    const AM pr = AM::product(AM::monomial(1), AM::moebius(cplx(0.2, 0)));
    CHECK(std::abs(pr.eval(z) - z * (0.2 - z) / (1.0 - 0.2 * z)) <= 1e-14);
}

TEST_CASE("factory guards") {
    CHECK_THROWS_AS(AM::monomial(-1), InputError);
    CHECK_THROWS_AS(AM::moebius(cplx(1.0, 0.0)), InputError);
    CHECK_THROWS_AS(AM::test_fn(cplx(1.2, 0.0), 1.0), InputError);
    CHECK_THROWS_AS(AM::blaschke({cplx(1.0, 0.0)}), InputError);
    CHECK_THROWS_AS(AM::blaschke({cplx(0.3, 0.0)}, cplx(2.0, 0.0)), InputError);
    CHECK_THROWS_AS(AM::taylor({1.0}, -1.0), InputError);
}

TEST_CASE("symbolic derivatives agree with difference quotients") {
    std::vector<AM> catalog{
        AM::constant(cplx(1, 2)),
        AM::monomial(4),
        AM::affine(cplx(0.2, 0.1), cplx(0.5, -0.2)),
        AM::scale(cplx(0.0, 0.7)),
        AM::moebius(cplx(0.5, -0.2)),
        AM::test_fn(cplx(0.6, 0.1), 0.5),
        AM::taylor({0.1, cplx(0, 1), 0.25, -0.5}),
        AM::blaschke({cplx(0.0), cplx(0.3, 0.2), cplx(-0.4, 0.0)}),
        AM::compose(AM::moebius(cplx(0.4, 0)), AM::monomial(2)),
        AM::sum(AM::monomial(2), AM::moebius(cplx(0.3, 0))),
        AM::difference(AM::monomial(3), AM::scale(cplx(0.5, 0))),
        AM::product(AM::monomial(1), AM::moebius(cplx(0.25, 0.1))),
    };
    for (const auto& f : catalog) {
        const AM df = f.derivative();
        for (int t = 0; t < 12; ++t) {
            const cplx z = random_point(0.6);
            const cplx want = numeric_derivative(f, z);
            CHECK(std::abs(df.eval(z) - want) <= 2e-8 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("inner and closed-form flags") {
    CHECK(AM::monomial(3).is_inner());
    CHECK_FALSE(AM::monomial(0).is_inner());
    CHECK(AM::moebius(cplx(0.7, 0.1)).is_inner());
    CHECK(AM::blaschke({cplx(0.0), cplx(0.5, 0)}).is_inner());
    CHECK(AM::scale(std::polar(1.0, 0.3)).is_inner());
    CHECK_FALSE(AM::scale(cplx(0.5, 0)).is_inner());
    CHECK(AM::compose(AM::monomial(2), AM::moebius(cplx(0.3, 0))).is_inner());
    CHECK_FALSE(AM::affine(cplx(0.5, 0), cplx(0.5, 0)).is_inner());

    CHECK(AM::taylor({1.0, 2.0}).all_closed_form());
    CHECK_FALSE(AM::taylor({1.0, 2.0}, 0.5).all_closed_form());
}

TEST_CASE("polynomial degrees") {
    CHECK(AM::monomial(7).polynomial_degree() == 7);
    CHECK(AM::moebius(cplx(0.5, 0)).polynomial_degree() == std::nullopt);
    CHECK(AM::blaschke({cplx(0.0), cplx(0.0)}).polynomial_degree() == 2);
    CHECK(AM::blaschke({cplx(0.2, 0)}).polynomial_degree() == std::nullopt);
    CHECK(AM::compose(AM::monomial(2), AM::monomial(3)).polynomial_degree() == 6);
    CHECK(AM::product(AM::monomial(2), AM::taylor({1.0, 1.0})).polynomial_degree() == 3);
}

TEST_CASE("exact coefficient streams match evaluation") {
    // moebius: b - (1-|b|^2) sum conj(b)^{n-1} z^n
    const cplx b{0.5, -0.3};
    auto stream = AM::moebius(b).exact_coefficients(400);
    REQUIRE(stream.has_value());
    const cplx z{0.4, 0.2};
    cplx acc = 0.0, pw = 1.0;
    for (const auto& c : stream->coeffs) {
        acc += c * pw;
        pw *= z;
    }
    CHECK(std::abs(acc - AM::moebius(b).eval(z)) <= 1e-13);
    CHECK(stream->tail_energy <= (1.0 - std::norm(b)) * std::pow(std::norm(b), 400) + 1e-300);

    auto tf = AM::test_fn(b, 1.0).exact_coefficients(400);
    REQUIRE(tf.has_value());
    acc = 0.0;
    pw = 1.0;
    for (const auto& c : tf->coeffs) {
        acc += c * pw;
        pw *= z;
    }
    CHECK(std::abs(acc - AM::test_fn(b, 1.0).eval(z)) <= 1e-13);

    CHECK_FALSE(AM::product(AM::monomial(1), AM::monomial(1)).exact_coefficients(8).has_value());
}

TEST_CASE("taylor coefficient recovery") {
    const AM f = AM::taylor({cplx(0.5, 0.1), 0.0, cplx(-0.25, 0), cplx(0, 0.125)});
    auto rec = f.taylor_coefficients(16);
    CHECK(std::abs(rec.coeffs[0] - cplx(0.5, 0.1)) <= 1e-12);
    CHECK(std::abs(rec.coeffs[2] - cplx(-0.25, 0)) <= 1e-12);
    CHECK(std::abs(rec.coeffs[3] - cplx(0, 0.125)) <= 1e-12);
    CHECK(std::abs(rec.coeffs[7]) <= 1e-12);

    // product nodes have no closed stream; sampling recovery must still work
    const AM g = AM::product(AM::moebius(cplx(0.4, 0)), AM::moebius(cplx(0.4, 0)));
    auto grec = g.taylor_coefficients(64);
    cplx acc = 0.0, pw = 1.0;
    const cplx z{0.25, -0.3};
    for (const auto& c : grec.coeffs) {
        acc += c * pw;
        pw *= z;
    }
    CHECK(std::abs(acc - g.eval(z)) <= 1e-9);
}

TEST_CASE("self-map certification accepts and rejects correctly") {
    CHECK(certify_self_map(AM::monomial(3)).method == SelfMapCertificate::Method::exact_closed_form);
    CHECK(certify_self_map(AM::moebius(cplx(0.9, 0))).boundary_max_modulus == doctest::Approx(1.0));
    CHECK(certify_self_map(AM::affine(cplx(0.5, 0), cplx(0.5, 0))).boundary_max_modulus <= 1.0 + 1e-10);
    CHECK_THROWS_AS((void)certify_self_map(AM::scale(cplx(1.5, 0))), NotSelfMap);
    CHECK_THROWS_AS((void)certify_self_map(AM::affine(cplx(0.6, 0), cplx(0.5, 0))), NotSelfMap);

    // needs the sampling fallback: structural bound 2 * 0.4 only after composition
    const auto cert = certify_self_map(AM::compose(AM::scale(cplx(2.0, 0)), AM::scale(cplx(0.4, 0))));
    CHECK(cert.method == SelfMapCertificate::Method::boundary_sampling);
    CHECK(cert.boundary_max_modulus <= 0.81);

    CHECK_THROWS_AS(AM::compose(AM::monomial(2), AM::scale(cplx(1.2, 0))), NotSelfMap);
}

TEST_CASE("rational form reproduces the tree") {
    std::vector<AM> catalog{
        AM::moebius(cplx(0.5, 0.2)),
        AM::blaschke({cplx(0.0), cplx(0.3, -0.1)}),
        AM::compose(AM::moebius(cplx(0.4, 0)), AM::monomial(2)),
        AM::sum(AM::monomial(2), AM::test_fn(cplx(0.3, 0.3), 1.0)),
        AM::product(AM::monomial(1), AM::moebius(cplx(0.25, 0))),
        AM::compose(AM::moebius(cplx(0.3, 0)), AM::compose(AM::monomial(2), AM::moebius(cplx(0.5, 0)))),
    };
    for (const auto& f : catalog) {
        const auto rf = rational_form(f);
        for (int t = 0; t < 10; ++t) {
            const cplx z = random_point(0.8);
            const cplx via_rf = poly_eval(rf.num, z) / poly_eval(rf.den, z);
            CHECK(std::abs(via_rf - f.eval(z)) <= 1e-10 * std::max(1.0, std::abs(f.eval(z))));
        }
    }
    CHECK_THROWS_AS((void)rational_form(AM::monomial(80)), DegreeBudgetExceeded);
}

TEST_CASE("pretty printing and structural equality") {
    const AM f = AM::compose(AM::moebius(cplx(0.5, 0)), AM::monomial(2));
    CHECK(f.pretty() == "compose(mobius(0.5+0i),monomial(2))");
    CHECK(f.same_structure(AM::compose(AM::moebius(cplx(0.5, 0)), AM::monomial(2))));
    CHECK_FALSE(f.same_structure(AM::compose(AM::moebius(cplx(0.4, 0)), AM::monomial(2))));
    CHECK(AM::test_fn(cplx(0.5, 0), 1.0).pretty() == "testfn(0.5+0i,1)");
    CHECK(format_complex(cplx(0.25, -0.5)) == "0.25-0.5i");
}
