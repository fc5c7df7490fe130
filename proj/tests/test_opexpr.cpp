#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace diffirr;
using testsupport::Gen;

TEST_CASE("printing canonical forms", "[opexpr]") {
    auto fa = make_field("", {}, {"a"});
    CHECK(print_op(parse_op(presets::kBessel, fa)) == "D^2 + (1/x)*D + ((x^2 - a^2)/x^2)");
    CHECK(print_op(parse_op("D*x")) == "x*D + 1");
    CHECK(print_op(parse_op("x*D")) == "x*D");
    CHECK(print_op(parse_op("D - D")) == "0");
    CHECK(print_op(parse_op("(D - 1)*(D + 1)")) == "D^2 - 1");
    CHECK(print_op(parse_op("D^2 - 2*x*D + 3")) == "D^2 - 2*x*D + 3");
    CHECK(print_op(parse_op("-D")) == "-D");
    CHECK(print_ratfun(parse_ratfun("1/(2*x)")) == "1/(2*x)");
    CHECK(print_ratfun(parse_ratfun("x^2/2 - 1")) == "1/2*x^2 - 1");
    auto fi = testsupport::qi();
    CHECK(print_op(parse_op("D - i", fi)) == "D - i");
}

TEST_CASE("parser semantics", "[opexpr]") {
    // D*f = f*D + f'
    CHECK(parse_op("D*x^2") == parse_op("x^2*D + 2*x"));
    CHECK(parse_op("D^0") == parse_op("1"));
    CHECK(parse_op("(x)^3") == parse_op("x*x*x"));
    CHECK(parse_op("2^3*D") == parse_op("8*D"));
    CHECK(parse_op("(1/x)*D") == parse_op("1/x*D"));
    CHECK_THROWS_AS(parse_op("D/x"), ParseError);
    CHECK(parse_op("  D  +  x ") == parse_op("D+x"));
    auto fa = make_field("", {}, {"a"});
    CHECK(parse_op("a*D", fa).coeff(1).constant_value() == Scalar::param(fa, 0));
}

TEST_CASE("parse errors", "[opexpr]") {
    CHECK_THROWS_AS(parse_op("D +"), ParseError);
    CHECK_THROWS_AS(parse_op("(D"), ParseError);
    CHECK_THROWS_AS(parse_op("D)"), ParseError);
    CHECK_THROWS_AS(parse_op("y*D"), UnknownSymbol);
    CHECK_THROWS_AS(parse_op("D^x"), NonIntegerExponent);
    CHECK_THROWS_AS(parse_op("D^(1/2)"), NonIntegerExponent);
    CHECK_THROWS_AS(parse_op("1/D"), ParseError);
    CHECK_THROWS_AS(parse_op("1/(x-x)"), ParseError);
    CHECK_THROWS_AS(parse_op(""), ParseError);
    CHECK_THROWS_AS(parse_op(std::string(1000, '(') + "D" + std::string(1000, ')')), ParseError);
    try {
        parse_op("D + $");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("minimal polynomial text", "[opexpr]") {
    CHECK(parse_minpoly("i^2+1", "i") == QPoly{1, 0, 1});
    CHECK(parse_minpoly("2*t^3 - 4", "t") == QPoly{-4, 0, 0, 2});
    CHECK_THROWS_AS(parse_minpoly("i^2 + x", "i"), ParseError);
}

TEST_CASE("round trip on a fixed corpus", "[opexpr]") {
    auto f = make_field("i", {1, 0, 1}, {"a", "b"});
    const std::vector<std::string> corpus = {
        "D", "x", "1", "0", "-1/3", "D^5", "x^7*D", "(x+1)/(x-1)*D^2", "i*D + a", "a*b*D - b/a",
        "D^2 + (1/x)*D + (x^2 - a^2)/x^2", "(a + i)/(x^2 + a)*D^3 - x", "D*(x*D - a)", "(D - a/x)*(D + i)",
        "1/(x^2 - 2) + D", "x^3/(a^2 + 1)", "-(D + x)^2", "(2*x + 1)/(x^2 + x + 1)", "D^2 - (x + 1)*D + x - 1",
        "(i*x - 1)/(x + i)*D", "b^3*x^2*D^4 + a", "(1/2)*D - 3/4*x"};
    for (const auto& s : corpus) {
        DiffOp l = parse_op(s, f);
        INFO(s << " -> " << print_op(l));
        CHECK(parse_op(print_op(l), f) == l);
    }
}

TEST_CASE("print/parse round trip on random operators", "[opexpr][property]") {
    Gen g(21);
    auto f = make_field("i", {1, 0, 1}, {"a"});
    Scalar i = Scalar::generator(f), a = Scalar::param(f, 0);
    for (int it = 0; it < 500; ++it) {
        std::vector<RatFun> cs;
        const int n = static_cast<int>(g.integer(0, 3));
        for (int k = 0; k <= n; ++k) {
            RatFun c = g.ratfun(2, 2, 3, f);
            if (g.integer(0, 3) == 0) c = c * RatFun(i);
            if (g.integer(0, 3) == 0) c = c * RatFun(a + Scalar(g.integer(-1, 1)));
            if (g.integer(0, 4) == 0) c = c * RatFun(Scalar(g.rational(5, 4)));
            cs.push_back(c);
        }
        DiffOp l(std::move(cs));
        const std::string text = print_op(l);
        INFO(text);
        CHECK(parse_op(text, f) == l);
    }
}

TEST_CASE("fuzzed input throws only ParseError", "[opexpr][property]") {
    Gen g(22);
    const std::string alphabet = "Dx0123456789+-*/^() aei.$";
    int parsed = 0;
    for (int it = 0; it < 3000; ++it) {
        std::string s;
        const int len = static_cast<int>(g.integer(0, 14));
        for (int k = 0; k < len; ++k) s += alphabet[static_cast<std::size_t>(g.integer(0, alphabet.size() - 1))];
        try {
            DiffOp l = parse_op(s);
            ++parsed;
            CHECK(parse_op(print_op(l)) == l);
        } catch (const ParseError&) {
        } catch (const std::exception& e) {
            FAIL("unexpected exception for '" << s << "': " << e.what());
        }
    }
    CHECK(parsed > 0);
}
