#include <string>
#include <vector>

#include "campanato/symbol_dsl.hpp"
#include "doctest.h"

using namespace campanato;
using AM = AnalyticMap;

TEST_CASE("atoms parse to the expected node trees") {
    CHECK(parse_symbol("monomial(2)").same_structure(AM::monomial(2)));
    CHECK(parse_symbol("mobius(0.5+0i)").same_structure(AM::moebius(cplx(0.5, 0.0))));
    CHECK(parse_symbol("affine(0.5,0.5)").same_structure(AM::affine(0.5, 0.5)));
    CHECK(parse_symbol("scale(-0.25i)").same_structure(AM::scale(cplx(0.0, -0.25))));
    CHECK(parse_symbol("const(0.3-0.4i)").same_structure(AM::constant(cplx(0.3, -0.4))));
    CHECK(parse_symbol("testfn(0.5+0i,1)").same_structure(AM::test_fn(cplx(0.5, 0.0), 1.0)));
    CHECK(parse_symbol("blaschke([0.3, 0-0.5i])")
              .same_structure(AM::blaschke({cplx(0.3, 0.0), cplx(0.0, -0.5)})));
    CHECK(parse_symbol("blaschke([0.2+0.1i], 0.6+0.8i)")
              .same_structure(AM::blaschke({cplx(0.2, 0.1)}, cplx(0.6, 0.8))));
    CHECK(parse_symbol("poly([1, 0, 0.5+0i])")
              .same_structure(AM::taylor({cplx(1.0), cplx(0.0), cplx(0.5, 0.0)})));
    CHECK(parse_symbol("poly([])").same_structure(AM::taylor({})));
}

TEST_CASE("combinators nest") {
    const AM composed = parse_symbol("compose(mobius(0.5+0i), monomial(2))");
    CHECK(composed.same_structure(AM::compose(AM::moebius(cplx(0.5, 0.0)), AM::monomial(2))));
    CHECK(composed.eval(cplx(0.3, 0.0)) ==
          AM::compose(AM::moebius(cplx(0.5, 0.0)), AM::monomial(2)).eval(cplx(0.3, 0.0)));

    const AM mixed = parse_symbol("sum(diff(monomial(1), const(0.2)), prod(monomial(1), mobius(0.3+0i)))");
    const AM expected = AM::sum(AM::difference(AM::identity(), AM::constant(0.2)),
                                AM::product(AM::identity(), AM::moebius(cplx(0.3, 0.0))));
    CHECK(mixed.same_structure(expected));
}

TEST_CASE("literal forms and whitespace are tolerated") {
    CHECK(parse_symbol("const(2)").same_structure(AM::constant(2.0)));
    CHECK(parse_symbol("const(-1.5e-2)").same_structure(AM::constant(-0.015)));
    CHECK(parse_symbol("const(2i)").same_structure(AM::constant(cplx(0.0, 2.0))));
    CHECK(parse_symbol("const(1e-3-2i)").same_structure(AM::constant(cplx(1e-3, -2.0))));
    CHECK(parse_symbol("const(1 - 2 i)").same_structure(AM::constant(cplx(1.0, -2.0))));
    CHECK(parse_symbol("const(+0.5+0.5i)").same_structure(AM::constant(cplx(0.5, 0.5))));
    CHECK(parse_symbol("  compose ( mobius ( 0.5 + 0i ) , monomial ( 2 ) )  ")
              .same_structure(AM::compose(AM::moebius(cplx(0.5, 0.0)), AM::monomial(2))));
}

TEST_CASE("parse then pretty-print then parse is structurally stable") {
    const std::vector<AM> catalog = {
        AM::monomial(3),
        AM::moebius(cplx(0.5, -0.25)),
        AM::affine(cplx(0.5, 0.0), cplx(0.0, 0.5)),
        AM::scale(cplx(0.7, 0.1)),
        AM::constant(cplx(-0.3, 0.9)),
        AM::test_fn(cplx(0.6, 0.2), 1.25),
        AM::taylor({cplx(0.1, 0.0), cplx(0.0, -0.2), cplx(0.3, 0.3)}),
        AM::blaschke({cplx(0.0, 0.0), cplx(0.3, -0.2)}, std::polar(1.0, 0.8)),
        AM::compose(AM::moebius(cplx(0.5, 0.0)), AM::monomial(2)),
        AM::sum(AM::identity(), AM::difference(AM::monomial(2), AM::constant(cplx(0.0, 0.125)))),
        AM::product(AM::identity(), AM::moebius(cplx(0.3, 0.0))),
    };
    for (const AM& m : catalog) {
        const AM reparsed = parse_symbol(m.pretty());
        CHECK(reparsed.same_structure(m));
        CHECK(parse_symbol(reparsed.pretty()).same_structure(reparsed));
    }

    const std::vector<std::string> sources = {
        "compose(blaschke([0.3, 0-0.5i]), prod(monomial(1), mobius(0.25+0i)))",
        "testfn(0.5-0.1i, 0.75)",
        "poly([0.25, 0.25i, -0.125])",
    };
    for (const std::string& src : sources) {
        const AM parsed = parse_symbol(src);
        CHECK(parse_symbol(parsed.pretty()).same_structure(parsed));
    }
}

TEST_CASE("parse errors carry the offending position") {
    const auto position_of = [](const std::string& text) -> std::size_t {
        try {
            (void)parse_symbol(text);
        } catch (const ParseError& e) {
            return e.position;
        }
        return static_cast<std::size_t>(-1);
    };

    CHECK_THROWS_AS((void)parse_symbol(""), ParseError);
    CHECK(position_of("") == 0);
    CHECK(position_of("wavelet(2)") == 0);
    CHECK(position_of("monomial(2") == 10);   // missing ')'
    CHECK(position_of("monomial(x)") == 9);   // not an integer
    CHECK(position_of("const(abc)") == 6);    // not a number
    CHECK(position_of("blaschke[0.3]") == 8); // missing '('
    CHECK(position_of("monomial(2) junk") == 12);
    CHECK(position_of("const(1+2)") == 9);    // missing 'i'
    CHECK_THROWS_AS((void)parse_symbol("const(inf)"), ParseError);
    CHECK_THROWS_AS((void)parse_symbol("const(nan)"), ParseError);
}

TEST_CASE("arity mistakes are reported as such") {
    CHECK_THROWS_AS((void)parse_symbol("mobius(0.5+0i, 2)"), ArityError);
    CHECK_THROWS_AS((void)parse_symbol("affine(1)"), ArityError);
    CHECK_THROWS_AS((void)parse_symbol("compose(monomial(2))"), ArityError);
    CHECK_THROWS_AS((void)parse_symbol("sum(monomial(1), monomial(2), monomial(3))"), ArityError);
    CHECK_THROWS_AS((void)parse_symbol("testfn(0.5+0i)"), ArityError);
    // ArityError is a ParseError, so a single catch suffices for callers.
    CHECK_THROWS_AS((void)parse_symbol("affine(1)"), ParseError);
}

TEST_CASE("factory validation propagates through the parser") {
    CHECK_THROWS_AS((void)parse_symbol("mobius(1.5)"), InputError);        // outside the disk
    CHECK_THROWS_AS((void)parse_symbol("monomial(-3)"), InputError);
    CHECK_THROWS_AS((void)parse_symbol("compose(monomial(2), scale(1.5))"), CertificationError);
}
