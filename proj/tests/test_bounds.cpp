#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace diffirr;
using testsupport::Gen;
using testsupport::parse;

TEST_CASE("operator degree", "[bounds]") {
    CHECK(bounds::op_degree(parse("D")) == 0);
    CHECK(bounds::op_degree(parse("x*D - 3")) == 1);
    CHECK(bounds::op_degree(parse("x^2*D^2 + x^5*D + 1")) == 3);
    CHECK(bounds::op_degree(parse("D - (x^2+1)/(x-1)")) == 2);
    CHECK_THROWS_AS(bounds::op_degree(parse("0")), ZeroOperator);
}

TEST_CASE("exponential bounds", "[bounds]") {
    CHECK(bounds::exponential_bound(parse("x*D - 3"), BoundMode::Empirical) == 1);
    CHECK(bounds::exponential_bound(parse("D^2 - 1"), BoundMode::Empirical) == 0);
    DiffOp bessel = parse(presets::kBessel, testsupport::qi_a());
    CHECK(bounds::exponential_bound(bessel, BoundMode::Empirical) == 0);
    CHECK(bounds::exponential_bound(bessel, BoundMode::Sound) == 1);
    // Without i the polynomial-part equation c^2 + 1 = 0 does not split.
    DiffOp bessel_q = parse(presets::kBessel, make_field("", {}, {"a"}));
    CHECK_THROWS_AS(bounds::exponential_bound(bessel_q, BoundMode::Empirical), IncompleteSearch);
    // The search over Q is incomplete for x^2 + 1 at infinity.
    DiffOp l = parse("D^2 + 1");
    CHECK_THROWS_AS(bounds::exponential_bound(l, BoundMode::Empirical), IncompleteSearch);
    CHECK(bounds::exponential_bound(l, BoundMode::Sound) >= 0);
}

TEST_CASE("b(L) for the parametric Bessel operator", "[bounds]") {
    auto fa = make_field("", {}, {"a"});
    auto rep = bounds::b_of(parse(presets::kBessel, fa), BoundMode::Sound);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].s == 1);
    CHECK(rep.rows[0].binom == 2);
    CHECK(rep.rows[0].deg_t == 0);
    CHECK(rep.rows[0].exp_bound == 1);
    CHECK(rep.rows[0].term == 2);
    CHECK(rep.rows[1].binom == 1);
    CHECK(rep.rows[1].term == 0);
    CHECK(rep.b_value == 2);
    CHECK(rep.factor_bound == 16);
    CHECK(rep.policy == CyclicPolicy{}.fingerprint());
}

TEST_CASE("b(L) rows follow the term formula", "[bounds][property]") {
    Gen g(61);
    for (int it = 0; it < 12; ++it) {
        DiffOp l = g.poly_op(2, 1, 2);
        BoundReport rep;
        try {
            rep = bounds::b_of(l, BoundMode::Sound);
        } catch (const Unsupported&) {
            continue;
        }
        long b = 0;
        for (const auto& r : rep.rows) {
            const long c = static_cast<long>(exterior::binomial(2, static_cast<std::size_t>(r.s)));
            CHECK(r.binom == static_cast<std::uint64_t>(c));
            CHECK(r.term == 2 * c * r.deg_t + c * (c - 1) * r.exp_bound);
            b = std::max(b, r.term);
        }
        CHECK(rep.b_value == b);
        CHECK(rep.factor_bound == 8 * b);
        // Sound never undercuts empirical when the latter is defined.
        try {
            auto emp = bounds::b_of(l, BoundMode::Empirical);
            CHECK(emp.b_value <= rep.b_value);
        } catch (const IncompleteSearch&) {
        }
    }
}

TEST_CASE("factor bound checks", "[bounds]") {
    auto fi = make_field("i", {1, 0, 1}, {});
    DiffOp l = parse("D^2 + 1/x*D + (x^2 - 1/4)/x^2", fi);
    DiffOp p = parse("D - i + 1/(2*x)", fi);
    auto rep = bounds::b_of(l, BoundMode::Sound);
    CHECK(bounds::check_factor_bound(l, p, rep));
    auto emp = bounds::b_of(l, BoundMode::Empirical);
    CHECK(emp.factor_bound == 16);
    CHECK(bounds::check_factor_bound(l, p, emp));

    // A report with a zero bound rejects a factor of positive degree.
    BoundReport tight = rep;
    tight.factor_bound = 0;
    CHECK(!bounds::check_factor_bound(l, p, tight));

    CHECK_THROWS_AS(bounds::check_factor_bound(l, l, rep), PreconditionError);
    CHECK_THROWS_AS(bounds::check_factor_bound(l, parse("D", fi), rep), NotADivisor);
    CHECK_THROWS_AS(bounds::check_factor_bound(l, parse("0", fi), rep), ZeroOperator);
    CHECK_THROWS_AS(bounds::b_of(parse("x"), BoundMode::Sound), OrderZero);
}

TEST_CASE("planted factors respect the sound bound", "[bounds][property]") {
    Gen g(62);
    for (int it = 0; it < 15; ++it) {
        RatFun a(Scalar(g.integer(-2, 2)));
        const long p = g.integer(-2, 2);
        a = a + RatFun(UniPoly(Scalar(Gen::frac(g.integer(-3, 3), 2))), parse_ratfun("x").num() - UniPoly(Scalar(p)));
        RatFun c(Scalar(g.integer(-2, 2)));
        DiffOp fac(std::vector<RatFun>{-a, RatFun(1)});
        DiffOp l = ore::mul(DiffOp(std::vector<RatFun>{-c, RatFun(1)}), fac);
        auto rep = bounds::b_of(l, BoundMode::Sound);
        CHECK(bounds::check_factor_bound(l, fac, rep));
    }
}
