#include "campanato/symbol_dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "campanato/errors.hpp"

namespace campanato {

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    void expect(char c, const char* what) {
        skip_ws();
        if (peek() != c) throw ParseError(std::string("expected ") + what, pos);
        ++pos;
    }

    std::string parse_name() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected a map expression", start);
        return std::string(text.substr(start, pos - start));
    }

    double parse_real() {
        skip_ws();
        if (peek() == '+') ++pos;  // from_chars accepts '-' but not '+'
        double out = 0.0;
        const auto res = std::from_chars(text.data() + pos, text.data() + text.size(), out);
        if (res.ec != std::errc{} || !std::isfinite(out))
            throw ParseError("expected a finite number", pos);
        pos = static_cast<std::size_t>(res.ptr - text.data());
        return out;
    }

    int parse_int() {
        skip_ws();
        if (peek() == '+') ++pos;
        int out = 0;
        const auto res = std::from_chars(text.data() + pos, text.data() + text.size(), out);
        if (res.ec != std::errc{}) throw ParseError("expected an integer", pos);
        pos = static_cast<std::size_t>(res.ptr - text.data());
        return out;
    }

    cplx parse_complex() {
        const double first = parse_real();
        skip_ws();
        if (peek() == 'i') {  // pure imaginary: 0.7i
            ++pos;
            return cplx(0.0, first);
        }
        if (peek() == '+' || peek() == '-') {
            const double sign = peek() == '-' ? -1.0 : 1.0;
            ++pos;
            const double second = parse_real();
            skip_ws();
            if (peek() != 'i') throw ParseError("expected 'i' after the imaginary part", pos);
            ++pos;
            return cplx(first, sign * second);
        }
        return cplx(first, 0.0);
    }

    std::vector<cplx> parse_list() {
        expect('[', "'['");
        std::vector<cplx> out;
        skip_ws();
        if (peek() == ']') {
            ++pos;
            return out;
        }
        out.push_back(parse_complex());
        skip_ws();
        while (peek() == ',') {
            ++pos;
            out.push_back(parse_complex());
            skip_ws();
        }
        expect(']', "']'");
        return out;
    }

    // Separator between the arguments of a fixed-arity form; a closing
    // parenthesis instead means too few arguments were supplied.
    void expect_separator(const std::string& name, const char* arity) {
        skip_ws();
        if (peek() != ',') throw ArityError(name + " takes " + arity, pos);
        ++pos;
    }

    // End of an argument list; a comma instead means too many arguments.
    void expect_close(const std::string& name, const char* arity) {
        skip_ws();
        if (peek() == ',') throw ArityError(name + " takes " + arity, pos);
        expect(')', "')'");
    }

    AnalyticMap parse_expr() {
        skip_ws();
        const std::size_t name_pos = pos;
        const std::string name = parse_name();
        expect('(', "'(' after the map name");

        if (name == "mobius" || name == "scale" || name == "const") {
            const cplx c = parse_complex();
            expect_close(name, "one argument");
            if (name == "mobius") return AnalyticMap::moebius(c);
            if (name == "scale") return AnalyticMap::scale(c);
            return AnalyticMap::constant(c);
        }
        if (name == "monomial") {
            const int n = parse_int();
            expect_close(name, "one argument");
            return AnalyticMap::monomial(n);
        }
        if (name == "affine") {
            const cplx alpha = parse_complex();
            expect_separator(name, "two arguments");
            const cplx beta = parse_complex();
            expect_close(name, "two arguments");
            return AnalyticMap::affine(alpha, beta);
        }
        if (name == "testfn") {
            const cplx b = parse_complex();
            expect_separator(name, "two arguments");
            const double p = parse_real();
            expect_close(name, "two arguments");
            return AnalyticMap::test_fn(b, p);
        }
        if (name == "blaschke") {
            std::vector<cplx> zeros = parse_list();
            skip_ws();
            cplx unimodular = 1.0;
            if (peek() == ',') {
                ++pos;
                unimodular = parse_complex();
            }
            expect_close(name, "a zero list and an optional unimodular factor");
            return AnalyticMap::blaschke(std::move(zeros), unimodular);
        }
        if (name == "poly") {
            std::vector<cplx> coeffs = parse_list();
            expect_close(name, "one coefficient list");
            return AnalyticMap::taylor(std::move(coeffs));
        }
        if (name == "compose" || name == "sum" || name == "diff" || name == "prod") {
            AnalyticMap lhs = parse_expr();
            expect_separator(name, "two arguments");
            AnalyticMap rhs = parse_expr();
            expect_close(name, "two arguments");
            if (name == "compose") return AnalyticMap::compose(std::move(lhs), std::move(rhs));
            if (name == "sum") return AnalyticMap::sum(std::move(lhs), std::move(rhs));
            if (name == "diff") return AnalyticMap::difference(std::move(lhs), std::move(rhs));
            return AnalyticMap::product(std::move(lhs), std::move(rhs));
        }
        throw ParseError("unknown map '" + name + "'", name_pos);
    }
};

}  // namespace

AnalyticMap parse_symbol(std::string_view text) {
    Parser parser{text};
    AnalyticMap out = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) throw ParseError("unexpected trailing input", parser.pos);
    return out;
}

}  // namespace campanato
