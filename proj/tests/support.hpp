#pragma once

// Deterministic random generators for property tests.

#include <random>
#include <vector>

#include "diffirr/app.hpp"

namespace testsupport {

using namespace diffirr;

class Gen {
public:
    explicit Gen(std::uint32_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }
    Rational rational(long num_bound = 3, long den_bound = 3) {
        return frac(integer(-num_bound, num_bound), integer(1, den_bound));
    }
    static Rational frac(long n, long d) {
        Rational q(n, d);
        q.canonicalize();
        return q;
    }

    /// Integer-coefficient polynomial of degree <= deg.
    UniPoly poly(int deg, long pool = 3, const Field& f = nullptr) {
        std::vector<Scalar> cs;
        for (int i = 0; i <= deg; ++i) cs.push_back(Scalar(integer(-pool, pool)).with_field(f));
        return UniPoly(std::move(cs));
    }
    UniPoly nonzero_poly(int deg, long pool = 3, const Field& f = nullptr) {
        for (;;) {
            UniPoly p = poly(deg, pool, f);
            if (!p.is_zero()) return p;
        }
    }
    /// Reduced rational function with numerator degree <= deg and a monic
    /// denominator of degree <= den_deg.
    RatFun ratfun(int deg, int den_deg, long pool = 3, const Field& f = nullptr) {
        UniPoly n = poly(deg, pool, f);
        UniPoly d = den_deg > 0 && coin() ? nonzero_poly(integer(0, den_deg), pool, f) : UniPoly(Scalar(1).with_field(f));
        return RatFun(n, d);
    }
    RatFun nonzero_ratfun(int deg, int den_deg, long pool = 3, const Field& f = nullptr) {
        for (;;) {
            RatFun r = ratfun(deg, den_deg, pool, f);
            if (!r.is_zero()) return r;
        }
    }
    /// Operator of exact order `order`.
    DiffOp op(int order, int deg, int den_deg = 1, long pool = 3, const Field& f = nullptr) {
        std::vector<RatFun> cs;
        for (int i = 0; i < order; ++i) cs.push_back(ratfun(deg, den_deg, pool, f));
        cs.push_back(nonzero_ratfun(deg, den_deg, pool, f));
        return DiffOp(std::move(cs));
    }
    /// Operator with polynomial coefficients.
    DiffOp poly_op(int order, int deg, long pool = 3, const Field& f = nullptr) { return op(order, deg, 0, pool, f); }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

inline DiffOp parse(const std::string& s, const Field& f = nullptr) { return parse_op(s, f); }

inline Field qi() { return make_field("i", {1, 0, 1}, {}); }
inline Field qi_a() { return make_field("i", {1, 0, 1}, {"a"}); }

// g / q^e; derivative (g' q - e g q') / q^(e+1).
struct QTerm {
    UniPoly g;
    unsigned e;
};

inline QTerm qderiv(const QTerm& t, const UniPoly& q) {
    return {t.g.derivative() * q - Scalar(static_cast<long>(t.e)) * (t.g * q.derivative()), t.e + 1};
}

// quo * P + rem == a L checked on numerators over a common power of q, with
// D^i p = sum_k C(i,k) p^(k) D^(i-k). Avoids rational functions in the t's.
inline bool numerator_identity(const param::GenericFactorSystem& sys, const DiffOp& l) {
    const UniPoly& q = sys.q;
    std::vector<UniPoly> pfac = sys.p;
    pfac.push_back(q);  // P = sum_j pfac[j]/q D^j
    std::vector<std::vector<QTerm>> terms;
    auto add = [&](std::size_t pw, QTerm t) {
        if (terms.size() <= pw) terms.resize(pw + 1);
        terms[pw].push_back(std::move(t));
    };
    for (std::size_t i = 0; i < sys.quo.num.size(); ++i) {
        const UniPoly& u = sys.quo.num[i];
        if (u.is_zero()) continue;
        for (std::size_t j = 0; j < pfac.size(); ++j) {
            QTerm d{pfac[j], 1};
            Integer binom = 1;
            for (std::size_t k = 0; k <= i; ++k) {
                if (k > 0) {
                    d = qderiv(d, q);
                    binom = binom * Integer(i - k + 1) / Integer(k);
                }
                add(i - k + j, {Scalar(Rational(binom)) * (u * d.g), sys.quo.m + d.e});
            }
        }
    }
    for (std::size_t i = 0; i < sys.rem.num.size(); ++i)
        if (!sys.rem.num[i].is_zero()) add(i, {sys.rem.num[i], sys.rem.m});
    unsigned top = 0;
    for (const auto& row : terms)
        for (const auto& t : row) top = std::max(top, t.e);
    auto al = param::detail::times_clearing(l, sys.a);
    const UniPoly qtop = q.pow(top);
    for (std::size_t i = 0; i < std::max(terms.size(), al.size()); ++i) {
        UniPoly lhs, rhs;
        if (i < terms.size())
            for (const auto& t : terms[i]) lhs += t.g * q.pow(top - t.e);
        if (i < al.size() && !al[i].is_zero()) rhs = param::detail::lift(al[i], sys.ext) * qtop;
        if (!(lhs - rhs).is_zero()) return false;
    }
    return true;
}

}  // namespace testsupport
