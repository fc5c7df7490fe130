#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "support.hpp"

using namespace diffirr;
using testsupport::Gen;
using testsupport::parse;

namespace {

Field fa() { return make_field("", {}, {"a"}); }

SpecPoint at_a(const Field& f, const Rational& v) { return param::make_point(f, {{"a", Scalar(v)}}); }

DiffOp lift_op(const DiffOp& l, const Field& ext) {
    std::vector<RatFun> cs;
    for (const auto& c : l.coeffs())
        cs.push_back(c.is_zero() ? RatFun() : RatFun(param::detail::lift(c.num(), ext), param::detail::lift(c.den(), ext)));
    return DiffOp(std::move(cs));
}

}  // namespace

TEST_CASE("specialization", "[param]") {
    auto f = fa();
    DiffOp bessel = parse(presets::kBessel, f);
    CHECK(param::specialize(bessel, at_a(f, 3)) == parse("D^2 + 1/x*D + (x^2 - 9)/x^2"));
    CHECK(param::specialize(bessel, at_a(f, Rational(1, 2))) == parse("D^2 + 1/x*D + (x^2 - 1/4)/x^2"));
    CHECK(param::specialize(parse("1/(a - 1)*D + x", f), at_a(f, 2)) == parse("D + x"));

    CHECK_THROWS_AS(param::specialize(parse("a*D^2 + D", f), at_a(f, 0)), NotWellDefined);
    CHECK_THROWS_AS(param::specialize(parse("D + 1/(a - 1)", f), at_a(f, 1)), NotWellDefined);
    CHECK_THROWS_AS(param::specialize(parse("D + x/((a^2 - 4)*x + a - 2)", f), at_a(f, 2)), NotWellDefined);
    // A vanishing lower coefficient is fine.
    CHECK(param::specialize(parse("D^2 + (a - 1)*D", f), at_a(f, 1)) == parse("D^2"));

    CHECK_THROWS_AS(param::make_point(f, {}), PreconditionError);
    CHECK_THROWS_AS(param::make_point(f, {{"a", Scalar(1)}, {"b", Scalar(2)}}), PreconditionError);
    CHECK_THROWS_AS(param::make_point(f, {{"a", Scalar::param(f, 0)}}), PreconditionError);
}

TEST_CASE("generic division of D^2 by a first-order factor", "[param]") {
    auto sys = param::generic_division(parse("D^2"), 1, 0);
    REQUIRE(sys.t_names == std::vector<std::string>{"t_0_0", "t_1_0"});
    CHECK(sys.rem.m == 3);
    REQUIRE(sys.w.size() == 1);
    // Independent route: q^3 times the Riccati value of D^2 at -t00/t10.
    Scalar t00 = Scalar::param(sys.ext, 0), t10 = Scalar::param(sys.ext, 1);
    RatFun a = RatFun(-t00 / t10);
    RatFun expect = riccati::riccati_value(lift_op(parse("D^2"), sys.ext), a) * RatFun(t10.pow(3));
    CHECK(RatFun(sys.w[0]) == expect);
    CHECK(sys.w[0] == t00 * t00 * t10);
}

TEST_CASE("generic division identity and shape", "[param]") {
    struct Case {
        std::string op;
        int s, nu;
    };
    const std::vector<Case> cases = {{presets::kBessel, 1, 1}, {"D^3 - a*x", 1, 0}, {"D^3 + a/x*D - 1", 2, 1},
                                     {"x*D^2 + a", 1, 2}};
    auto f = fa();
    for (const auto& c : cases) {
        INFO(c.op << " s=" << c.s << " nu=" << c.nu);
        DiffOp l = parse(c.op, f);
        auto sys = param::generic_division(l, c.s, c.nu);
        const int n = l.order();
        // Numerators are polynomial, the remainder has order < s, and the
        // exponent is the sum of the per-step powers k - s + 1.
        CHECK(sys.rem.order() < c.s);
        for (const auto& r : sys.rem.num)
            for (const auto& co : r.coeffs()) CHECK(co.is_polynomial());
        CHECK(sys.rem.m == static_cast<unsigned>((n - c.s + 1) * (n - c.s + 2) / 2));
        CHECK(sys.t_names.size() == static_cast<std::size_t>((c.s + 1) * (c.nu + 1)));
        std::size_t nonzero = 0;
        for (const auto& r : sys.rem.num)
            for (const auto& co : r.coeffs()) nonzero += co.is_zero() ? 0 : 1;
        CHECK(sys.w.size() == nonzero);
        // quo * P + rem = a L, by Leibniz expansion on numerators.
        CHECK(testsupport::numerator_identity(sys, l));
        // Same identity through operator arithmetic over the extended field;
        // rational functions in the t's get expensive, so low degree grids only.
        if (c.nu <= 1) {
            DiffOp lhs = ore::mul(param::to_diffop(sys.quo, sys.q), param::factor_op(sys)) + param::to_diffop(sys.rem, sys.q);
            CHECK(lhs == RatFun(param::detail::lift(sys.a, sys.ext)) * lift_op(l, sys.ext));
        }
    }
    CHECK_THROWS_AS(param::generic_division(parse("D^2"), 2, 0), BadOrder);
    CHECK_THROWS_AS(param::generic_division(parse("D^2"), 0, 0), BadOrder);
    CHECK_THROWS_AS(param::generic_division(parse("D^2"), 1, -2), BadOrder);
}

TEST_CASE("default coefficient degree", "[param]") {
    auto f = fa();
    DiffOp bessel = parse(presets::kBessel, f);
    CHECK(param::default_nu(bessel, 12) == 12);
    CHECK(param::default_nu(bessel, 100) == 32);
    CHECK(param::default_nu(bessel, 0) == 0);
}

TEST_CASE("specialization commutes with generic division", "[param][property]") {
    Gen g(71);
    auto f = fa();
    DiffOp bessel = parse(presets::kBessel, f);
    auto sys = param::generic_division(bessel, 1, 1);
    for (int it = 0; it < 20; ++it) {
        Rational v = g.rational(7, 4);
        INFO("a = " << v.get_str());
        CHECK(param::spec_commute_check(bessel, sys, at_a(f, v)));
    }
    DiffOp free_op = parse("D^2 + x*D - 1");
    auto fsys = param::generic_division(free_op, 1, 1);
    CHECK(param::spec_commute_check(free_op, fsys, SpecPoint{}));
    // The leading coefficient vanishes at a = 0.
    DiffOp l = parse("a*x^2*D^2 + D", f);
    auto lsys = param::generic_division(l, 1, 0);
    CHECK_THROWS_AS(param::spec_commute_check(l, lsys, at_a(f, 0)), NotWellDefined);
}

TEST_CASE("W vanishes exactly at right factors", "[param]") {
    auto f = fa();
    // (D + x)(D - a/x) has the right factor D - 2/x at a = 2.
    DiffOp l = ore::mul(parse("D + x", f), parse("D - a/x", f));
    auto sys = param::generic_division(l, 1, 1);
    auto pt = at_a(f, 2);
    for (const auto& w : param::evaluate_w_at_factor(sys, pt, parse("D - 2/x"))) CHECK(w.is_zero());
    auto off = param::evaluate_w_at_factor(sys, pt, parse("D - 3/x"));
    CHECK(std::any_of(off.begin(), off.end(), [](const Scalar& w) { return !w.is_zero(); }));
    CHECK_THROWS_AS(param::evaluate_w_at_factor(sys, pt, parse("D - 1/x^2")), PreconditionError);
    CHECK_THROWS_AS(param::evaluate_w_at_factor(sys, pt, parse("D^2")), BadOrder);
}

TEST_CASE("system export round trip", "[param]") {
    auto f = make_field("i", {1, 0, 1}, {"a"});
    auto sys = param::generic_division(parse(presets::kBessel, f), 1, 1);
    const std::string path = "param_export_test.json";
    param::export_system(sys, path);
    auto j = param::to_json(sys);
    CHECK(j.at("s") == 1);
    CHECK(j.at("nu") == 1);
    CHECK(j.at("indeterminates").size() == 4);
    CHECK(j.at("side_conditions").size() == 2);
    CHECK(j.at("field").at("generator") == "i");
    auto back = param::import_system(path);
    REQUIRE(back.w.size() == sys.w.size());
    for (std::size_t k = 0; k < sys.w.size(); ++k) CHECK(back.w[k] == sys.w[k]);
    std::remove(path.c_str());
    CHECK_THROWS_AS(param::import_system("does/not/exist.json"), IoError);
    CHECK_THROWS_AS(param::export_system(sys, "does/not/exist.json"), IoError);
}
