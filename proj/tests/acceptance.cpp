// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace diffirr;
using testsupport::Gen;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string note;
};

void require(Outcome& o, bool cond, const std::string& what) {
    if (!cond && o.ok) {
        o.ok = false;
        o.note = what;
    }
}

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) {
        if (o.ok) o.note = "time limit exceeded";
        o.ok = false;
    }
    if (!o.ok) ++failures;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << buf;
    if (limit_s > 0) std::cout << ", limit " << limit_s << " s";
    std::cout << ")";
    if (!o.note.empty()) std::cout << " | " << o.note;
    std::cout << std::endl;
}

Field bessel_field() { return make_field("i", {1, 0, 1}, {"a"}); }

const std::vector<std::string> kSweepValues = {"-5/2", "-3/2", "-1/2", "0", "1/3", "1/2", "1", "3/2", "2", "5/2", "7/2"};

bool is_half_integer(const std::string& v) {
    Rational q = parse_scalar(v).rational();
    Rational t = q - Rational(1, 2);
    return t.get_den() == 1;
}

// sum_k e_k/(x - p_k) + c over Q(i): simple poles at tower points.
RatFun random_factor_coeff(Gen& g, const Field& f) {
    Scalar i = Scalar::generator(f);
    RatFun a(Scalar(g.integer(-2, 2)).with_field(f) + Scalar(g.integer(-1, 1)) * i);
    if (g.integer(0, 3) == 0) a = a + RatFun(Scalar(g.integer(-1, 1)).with_field(f)) * RatFun::x(f);
    std::vector<Scalar> used;
    const int poles = static_cast<int>(g.integer(0, 2));
    for (int k = 0; k < poles; ++k) {
        Scalar p = Scalar(g.integer(-2, 2)).with_field(f) + Scalar(g.integer(-1, 1)) * i;
        if (std::find(used.begin(), used.end(), p) != used.end()) continue;
        used.push_back(p);
        Rational e = Gen::frac(g.integer(-4, 4), g.integer(1, 2));
        if (e == 0) continue;
        a = a + RatFun(UniPoly(Scalar(e).with_field(f)), UniPoly({-p, Scalar(1).with_field(f)}));
    }
    return a;
}

// Support conditions: every finite singular point lies in the field and is
// regular singular.
bool support_ok(const DiffOp& l) {
    auto b = riccati::clear_denominators(l);
    UniPoly sing = unipoly::squarefree_part(b.back());
    if (sing.degree() <= 0) return true;
    auto rr = roots_in_field(sing);
    if (!rr.complete) return false;
    const std::size_t n = b.size() - 1;
    for (const auto& p : rr.roots) {
        const int vn = riccati::valuation(RatFun(b.back()), p);
        for (std::size_t k = 0; k < n; ++k)
            if (!b[k].is_zero() && riccati::valuation(RatFun(b[k]), p) - vn < -static_cast<int>(n - k)) return false;
    }
    return true;
}

const std::vector<std::string> kCorpus = {
    "D", "x", "0", "1", "-7/3", "D^2", "D^7", "x*D", "D*x", "x^2*D^2 + x*D + 1",
    "D^2 + (1/x)*D + (x^2 - a^2)/x^2", "(D - 1)*(D + 1)", "(x + 1)/(x - 1)*D", "D - 1/(2*x)", "i*D - i",
    "(i + 1)/(x^2 + 1)*D^2", "a*D^3 - b*x", "(a - b)/(a + b)*D", "D^2 - x", "(1 - x^2)*D^2 - 2*x*D + 6",
    "x^3*D^3 + 3*x^2*D^2", "-D^2 - x*D - 2", "D*(x*D - a)", "(D - a/x)*(D + i)", "b^2*x/(x^3 - a)*D",
    "(2*x + 1)/(x^2 + x + 1)", "D^4 + x^4", "(x - i)*(x + i)*D", "1/(x^2 - 2)*D + 1/x", "a^3*D^2 + b^3",
    "(D + x)^3", "D^2 + 1/4/x^2", "x/(a*x + b)*D - 1", "(3/2)*D^2 - (5/7)*x", "D - x^2/(x - 1)^2",
    "i*x^2 + i*D", "-(D - 1)", "(x^2 - a^2)/x^2", "a/b", "D^3 - (a + b)*D + a*b",
    "(x - 1)^4/(x + 1)^3*D", "D*D*D - x*D*D", "(D + 1/x)*(D - 1/x)", "x^5 - 1", "D^2 + i*x*D + a*i",
    "(a*x + i)/(b*x - i)*D^2", "-x*D^3 + 1/x*D", "1/(a + 1) + 1/(b + 1)*D", "D^10", "(x*D)^3"};

}  // namespace

int main() {
    criterion(1, "Bessel locus over Q(i): reducible exactly at the sampled half-integers", 10, [] {
        Outcome o;
        const Field f = bessel_field();
        const DiffOp bessel = parse_op(presets::kBessel, f);
        auto rows = sweep(bessel, "a", kSweepValues, 1);
        int half = 0;
        for (const auto& r : rows) {
            const bool expect = is_half_integer(r.value);
            half += expect ? 1 : 0;
            if (expect) {
                require(o, r.status == "reducible", "a=" + r.value + " not reducible: " + r.status);
                require(o, !r.factors.empty(), "a=" + r.value + " has no factor");
                const DiffOp lc = param::specialize(bessel, param::make_point(f, {{"a", parse_scalar(r.value)}}));
                for (const auto& p : r.factors) require(o, ore::rem(lc, p).is_zero(), "a=" + r.value + " factor fails division");
            } else {
                require(o, r.status == "irreducible", "a=" + r.value + " is " + r.status);
            }
        }
        if (o.ok)
            o.note = sweep_summary(rows) + " (" + std::to_string(half) + " half-integers sampled)";
        return o;
    });

    criterion(2, "generic Bessel over Q(i)(a): no certificates, complete, Irreducible", 2, [] {
        Outcome o;
        const DiffOp bessel = parse_op(presets::kBessel, bessel_field());
        auto rep = riccati::expsols(bessel);
        require(o, rep.certificates.empty(), "certificates found");
        require(o, rep.complete, "search incomplete");
        require(o, irred::irreducible(bessel).status == IrredStatus::Irreducible, "verdict is not Irreducible");
        return o;
    });

    criterion(3, "right division round trip on 500 random pairs", 30, [] {
        Outcome o;
        Gen g(1003);
        for (int it = 0; it < 500 && o.ok; ++it) {
            DiffOp l = g.op(static_cast<int>(g.integer(0, 4)), static_cast<int>(g.integer(0, 3)), 1);
            DiffOp p = g.op(static_cast<int>(g.integer(0, 4)), static_cast<int>(g.integer(0, 3)), 1);
            auto d = ore::rdivide(l, p);
            require(o, ore::mul(d.quo, p) + d.rem == l, "identity fails at draw " + std::to_string(it));
            require(o, d.rem.order() < p.order(), "remainder order at draw " + std::to_string(it));
        }
        return o;
    });

    criterion(4, "remainder by D - a equals the Riccati value on 200 pairs", 0, [] {
        Outcome o;
        Gen g(1004);
        for (int it = 0; it < 200 && o.ok; ++it) {
            DiffOp l = g.op(static_cast<int>(g.integer(1, 4)), 2, 1);
            RatFun a = g.ratfun(2, 2);
            DiffOp p(std::vector<RatFun>{-a, RatFun(1)});
            require(o, ore::rdivide(l, p).rem == DiffOp(riccati::riccati_value(l, a)), "mismatch at draw " + std::to_string(it));
        }
        return o;
    });

    criterion(5, "adjoint involution and anti-homomorphism on 200 pairs", 0, [] {
        Outcome o;
        Gen g(1005);
        for (int it = 0; it < 200 && o.ok; ++it) {
            DiffOp l = g.op(static_cast<int>(g.integer(0, 3)), 2, 1);
            DiffOp m = g.op(static_cast<int>(g.integer(0, 3)), 2, 1);
            require(o, irred::adjoint(irred::adjoint(l)) == l, "involution at draw " + std::to_string(it));
            require(o, irred::adjoint(ore::mul(l, m)) == ore::mul(irred::adjoint(m), irred::adjoint(l)),
                    "anti-homomorphism at draw " + std::to_string(it));
        }
        return o;
    });

    criterion(6, "planted first-order factors recovered with complete reports (100 draws)", 0, [] {
        Outcome o;
        Gen g(1006);
        const Field f = testsupport::qi();
        const RatFun one(Scalar(1).with_field(f));
        int redrawn = 0, skipped = 0, recovered = 0;
        for (int it = 0; it < 100 && o.ok; ++it) {
            bool found = false;
            RatFun a;
            DiffOp l;
            for (int attempt = 0; attempt <= 5; ++attempt) {
                a = random_factor_coeff(g, f);
                RatFun b = random_factor_coeff(g, f);
                l = ore::mul(DiffOp(std::vector<RatFun>{-b, one}), DiffOp(std::vector<RatFun>{-a, one}));
                if (support_ok(l)) {
                    found = true;
                    break;
                }
                ++redrawn;
            }
            if (!found) {
                ++skipped;
                continue;
            }
            auto rep = riccati::expsols(l);
            const bool has = std::any_of(rep.certificates.begin(), rep.certificates.end(),
                                         [&](const Certificate& c) { return c.a == a; });
            require(o, rep.complete, "incomplete report for " + print_op(l));
            require(o, has, "certificate " + print_ratfun(a) + " missing for " + print_op(l));
            recovered += has && rep.complete ? 1 : 0;
        }
        o.note = std::to_string(recovered) + " recovered, " + std::to_string(redrawn) + " redraws, " +
                 std::to_string(skipped) + " skipped";
        return o;
    });

    criterion(7, "exterior coherence: top power of order-2 operators and the second power of D^3", 0, [] {
        Outcome o;
        Gen g(1007);
        for (int it = 0; it < 100 && o.ok; ++it) {
            DiffOp l = g.op(2, 2, 1);
            auto red = exterior::reduce(l, 2);
            DiffOp expect = ore::monic(DiffOp(std::vector<RatFun>{l.coeff(1) / l.coeff(2), RatFun(1)}));
            require(o, red.scalar_op == expect, "mismatch for " + print_op(l));
        }
        auto red3 = exterior::reduce(parse_op("D^3"), 2);
        auto sols = riccati::polysols(red3.scalar_op);
        std::vector<int> degs;
        for (const auto& p : sols) degs.push_back(p.degree());
        std::sort(degs.begin(), degs.end());
        require(o, degs == std::vector<int>{0, 1, 2}, "polynomial solutions of the second power of D^3");
        return o;
    });

    criterion(8, "generic division shape and specialization commutation (10 operators x 20 points)", 0, [] {
        Outcome o;
        struct Case {
            std::string op;
            int s, nu;
        };
        const std::vector<Case> corpus = {
            {presets::kBessel, 1, 2},          {"D^2 + a*x*D - 1", 1, 1},        {"x*D^2 + a", 1, 3},
            {"D^2 - (a + x)/(x - 1)", 1, 1},   {"a*D^2 + D + x", 1, 0},           {"D^3 - a*x", 1, 0},
            {"D^3 - a*x", 2, 1},               {"D^3 + a/x*D - 1", 2, 0},         {"x*D^3 + a*D^2 + 1", 1, 1},
            {"D^3 + (a^2 - 1)/x^2*D", 2, 1}};
        const Field f = make_field("", {}, {"a"});
        Gen g(1008);
        int points = 0;
        for (const auto& c : corpus) {
            const DiffOp l = parse_op(c.op, f);
            auto sys = param::generic_division(l, c.s, c.nu);
            const int n = l.order();
            require(o, sys.rem.order() < c.s, c.op + ": remainder order");
            for (const auto& r : sys.rem.num)
                for (const auto& co : r.coeffs()) require(o, co.is_polynomial(), c.op + ": non-polynomial numerator");
            require(o, sys.rem.m == static_cast<unsigned>((n - c.s + 1) * (n - c.s + 2) / 2), c.op + ": q exponent");
            // quo * P + rem = a L with every denominator a power of q.
            require(o, testsupport::numerator_identity(sys, l), c.op + ": division identity");
            int done = 0;
            for (int tries = 0; done < 20 && tries < 100; ++tries) {
                SpecPoint pt = param::make_point(f, {{"a", Scalar(g.rational(9, 4))}});
                bool ok;
                try {
                    ok = param::spec_commute_check(l, sys, pt);
                } catch (const NotWellDefined&) {
                    continue;
                } catch (const PreconditionError&) {
                    continue;
                }
                require(o, ok, c.op + ": commutation fails");
                ++done;
            }
            require(o, done == 20, c.op + ": not enough well-defined points");
            points += done;
        }
        o.note = std::to_string(points) + " points checked";
        return o;
    });

    criterion(9, "factor degree bounds hold on every reducible Bessel row", 0, [] {
        Outcome o;
        const Field f = bessel_field();
        const DiffOp bessel = parse_op(presets::kBessel, f);
        const auto parametric = bounds::b_of(bessel, BoundMode::Sound);
        const long n3 = 8;
        int rows_checked = 0;
        for (const auto& r : sweep(bessel, "a", kSweepValues, 2)) {
            if (r.status != "reducible") continue;
            const DiffOp lc = param::specialize(bessel, param::make_point(f, {{"a", parse_scalar(r.value)}}));
            const auto spec = bounds::b_of(lc, BoundMode::Sound);
            for (const auto& p : r.factors) {
                const int d = bounds::op_degree(ore::monic(p));
                require(o, d <= n3 * spec.b_value, "a=" + r.value + ": specialized bound");
                require(o, d <= n3 * parametric.b_value, "a=" + r.value + ": parametric bound");
            }
            require(o, r.bound_ok_parametric.value_or(false) && r.bound_ok_specialized.value_or(false),
                    "a=" + r.value + ": sweep row flags");
            ++rows_checked;
        }
        o.note = std::to_string(rows_checked) + " rows, parametric factor bound " + std::to_string(parametric.factor_bound);
        return o;
    });

    criterion(10, "parser round trip on 50 expressions and 500 random operators", 0, [] {
        Outcome o;
        const Field f = make_field("i", {1, 0, 1}, {"a", "b"});
        require(o, kCorpus.size() == 50, "corpus size");
        for (const auto& s : kCorpus) {
            DiffOp l = parse_op(s, f);
            require(o, parse_op(print_op(l), f) == l, "corpus entry " + s);
        }
        Gen g(1010);
        Scalar i = Scalar::generator(f), a = Scalar::param(f, 0), b = Scalar::param(f, 1);
        for (int it = 0; it < 500 && o.ok; ++it) {
            std::vector<RatFun> cs;
            const int n = static_cast<int>(g.integer(0, 4));
            for (int k = 0; k <= n; ++k) {
                RatFun c = g.ratfun(3, 2, 3, f);
                if (g.integer(0, 3) == 0) c = c * RatFun(i + Scalar(g.integer(-1, 1)));
                if (g.integer(0, 3) == 0) c = c * RatFun(a - b * Scalar(g.integer(0, 2)));
                if (g.integer(0, 4) == 0) c = c / RatFun(b + Scalar(1));
                cs.push_back(c);
            }
            DiffOp l(std::move(cs));
            require(o, parse_op(print_op(l), f) == l, "random operator " + print_op(l));
        }
        return o;
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
