#pragma once

// Exponential solutions h of L(y) = 0 with a = h'/h rational, found as
// certificates a with D - a a right divisor of L.
//
// Every certificate has the shape a = sum_p e_p/(x - p) + P + N'/N where p
// runs over finite singular points, e_p is a local exponent at p, P is a
// polynomial read off the Newton polygon at infinity, and N is a polynomial
// solution of the operator twisted by a0 = sum_p e_p/(x - p) + P.

#include <algorithm>
#include <string>
#include <vector>

#include "diffirr/algebra/linalg.hpp"
#include "diffirr/algebra/roots.hpp"
#include "diffirr/opexpr.hpp"
#include "diffirr/ore.hpp"

namespace diffirr {

struct Certificate {
    RatFun a;
    RatFun a0;   // sum_p e_p/(x - p) + P
    UniPoly n;   // a = a0 + n'/n
    UniPoly poly_part;
    std::vector<std::pair<Scalar, Scalar>> poles;  // (p, e_p) with e_p != 0
};

struct ExpSolsReport {
    std::vector<Certificate> certificates;
    bool complete = true;
    std::vector<std::string> reasons;
    // Structural data for the sound exponential bound.
    int singular_degree = 0;     // degree of the squarefree part of the cleared leading coefficient
    int poly_part_degree = 0;    // max degree of a polynomial-part candidate
    int polysol_degree = 0;      // max polynomial-solution degree bound over all twists
};

namespace riccati {

/// Polynomial coefficients of a left multiple of L by a function, with the
/// common polynomial content removed and the leading scalar normalized.
inline std::vector<UniPoly> clear_denominators(const DiffOp& l) {
    if (l.is_zero()) throw ZeroOperator("clearing the zero operator");
    UniPoly den(Scalar(1).with_field(l.field()));
    for (const auto& c : l.coeffs())
        if (!c.is_zero() && c.den().degree() > 0) den = unipoly::lcm(den, c.den());
    std::vector<UniPoly> b;
    b.reserve(l.coeffs().size());
    for (const auto& c : l.coeffs())
        b.push_back(c.is_zero() ? UniPoly() : c.num() * unipoly::quo(den, c.den()));
    UniPoly g;
    for (const auto& p : b)
        if (!p.is_zero()) g = g.is_zero() ? p.monic() : unipoly::gcd(g, p);
    if (g.degree() > 0)
        for (auto& p : b)
            if (!p.is_zero()) p = unipoly::quo(p, g);
    const Scalar lc_inv = b.back().lead().inverse();
    for (auto& p : b) p = lc_inv * p;
    return b;
}

inline DiffOp from_polys(const std::vector<UniPoly>& b) {
    std::vector<RatFun> c;
    c.reserve(b.size());
    for (const auto& p : b) c.emplace_back(p);
    return DiffOp(std::move(c));
}

/// Falling factorial lambda (lambda - 1) ... (lambda - i + 1) in a UniPoly
/// in lambda.
inline UniPoly falling(std::size_t i, const Field& f) {
    UniPoly r(Scalar(1).with_field(f));
    for (std::size_t k = 0; k < i; ++k)
        r *= UniPoly({Scalar(-static_cast<long>(k)).with_field(f), Scalar(1).with_field(f)});
    return r;
}

/// Lowest-order coefficient of (x - p)^(-lambda) L((x - p)^lambda), monic.
inline UniPoly indicial_at(const DiffOp& l, const Scalar& p) {
    if (l.is_zero()) throw ZeroOperator("indicial polynomial of the zero operator");
    const Field f = l.field();
    int best = 0;
    bool first = true;
    std::vector<std::pair<std::size_t, Scalar>> low;
    for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
        const RatFun& b = l.coeffs()[i];
        if (b.is_zero()) continue;
        auto [v, lc] = laurent_lead(b, p);
        int w = v - static_cast<int>(i);
        if (first || w < best) {
            best = w;
            low.clear();
            first = false;
        }
        if (w == best) low.emplace_back(i, lc);
    }
    UniPoly r;
    for (const auto& [i, lc] : low) r += lc * falling(i, f);
    return r.monic();
}

/// Top-order coefficient of x^(-lambda) L(x^lambda), as a polynomial in lambda.
inline UniPoly indicial_at_infinity(const DiffOp& l) {
    if (l.is_zero()) throw ZeroOperator("indicial polynomial of the zero operator");
    const Field f = l.field();
    int best = 0;
    bool first = true;
    std::vector<std::pair<std::size_t, Scalar>> top;
    for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
        const RatFun& b = l.coeffs()[i];
        if (b.is_zero()) continue;
        auto [d, lc] = infinity_lead(b);
        int w = d - static_cast<int>(i);
        if (first || w > best) {
            best = w;
            top.clear();
            first = false;
        }
        if (w == best) top.emplace_back(i, lc);
    }
    UniPoly r;
    for (const auto& [i, lc] : top) r += lc * falling(i, f);
    return r;
}

/// sum_i b_i (D + a0)^i.
inline DiffOp twist(const DiffOp& l, const RatFun& a0) {
    if (a0.is_zero() || l.is_zero()) return l;
    DiffOp acc, p(RatFun(Scalar(1).with_field(l.field())));
    for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
        if (i > 0) p = ore::d_times(p) + a0 * p;
        if (!l.coeffs()[i].is_zero()) acc += l.coeffs()[i] * p;
    }
    return acc;
}

/// sum_i b_i P_i(a) with P_0 = 1, P_{i+1} = P_i' + a P_i.
inline RatFun riccati_value(const DiffOp& l, const RatFun& a) {
    RatFun acc, p(Scalar(1).with_field(l.field()));
    for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
        if (i > 0) p = p.derivative() + a * p;
        if (!l.coeffs()[i].is_zero()) acc += l.coeffs()[i] * p;
    }
    return acc;
}

struct PolyPartResult {
    std::vector<UniPoly> candidates;
    bool complete = true;
    std::vector<std::string> reasons;
};

namespace detail {

inline void poly_part_stage(const std::vector<UniPoly>& b, int below, const UniPoly& prefix, PolyPartResult& out) {
    auto add = [&](const UniPoly& p) {
        if (std::find(out.candidates.begin(), out.candidates.end(), p) == out.candidates.end())
            out.candidates.push_back(p);
    };
    add(prefix);  // the remaining polynomial part may be zero
    std::vector<int> weights;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            if (b[i].is_zero() || b[j].is_zero()) continue;
            // deg b_i + i d = deg b_j + j d
            int num = b[i].degree() - b[j].degree();
            int den = static_cast<int>(j - i);
            if (num < 0 || num % den != 0) continue;
            int d = num / den;
            if (below >= 0 && d >= below) continue;
            if (std::find(weights.begin(), weights.end(), d) == weights.end()) weights.push_back(d);
        }
    std::sort(weights.rbegin(), weights.rend());
    const Field f = prefix.field() ? prefix.field() : b.back().field();
    for (int d : weights) {
        int top = 0;
        bool first = true;
        std::vector<std::size_t> arg;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i].is_zero()) continue;
            int w = b[i].degree() + static_cast<int>(i) * d;
            if (first || w > top) {
                top = w;
                arg.clear();
                first = false;
            }
            if (w == top) arg.push_back(i);
        }
        if (arg.size() < 2) continue;
        std::vector<Scalar> cp(arg.back() + 1, Scalar().with_field(f));
        for (auto i : arg) cp[i] = b[i].lead();
        UniPoly charpoly(std::move(cp));
        // c = 0 is the "stop" branch handled by add(prefix); drop the factor c^k.
        int low = charpoly.low_degree();
        std::vector<Scalar> rest(charpoly.coeffs().begin() + low, charpoly.coeffs().end());
        UniPoly reduced(std::move(rest));
        if (reduced.degree() <= 0) continue;
        auto roots = roots_in_field(reduced);
        if (!roots.complete) {
            out.complete = false;
            out.reasons.push_back("polynomial-part stage equation at weight " + std::to_string(d) +
                                  " does not split over the field");
        }
        for (const auto& [c, mult] : distinct_roots(roots)) {
            (void)mult;
            UniPoly term = UniPoly::monomial(c, static_cast<std::size_t>(d));
            DiffOp tw = twist(from_polys(b), RatFun(term));
            std::vector<UniPoly> nb;
            for (const auto& co : tw.coeffs()) nb.push_back(co.num());
            poly_part_stage(nb, d, prefix + term, out);
        }
    }
}

}  // namespace detail

/// Candidates for the polynomial part of a certificate, via the Newton
/// polygon at infinity. 0 is always a candidate.
inline PolyPartResult poly_part_candidates(const DiffOp& l) {
    PolyPartResult out;
    auto b = clear_denominators(l);
    detail::poly_part_stage(b, -1, UniPoly(), out);
    return out;
}

/// Largest nonnegative integer root of the indicial polynomial at infinity; -1 when none.
inline int polysol_degree_bound(const DiffOp& m) {
    if (m.is_zero()) return -1;
    UniPoly ind = indicial_at_infinity(m);
    auto roots = nonnegative_integer_roots(ind.coeffs());
    if (roots.empty()) return -1;
    const Integer& r = roots.back();
    if (!r.fits_sint_p() || r > 1000) throw Unsupported("polynomial solution degree bound too large: " + r.get_str());
    return static_cast<int>(r.get_si());
}

/// Basis of polynomial solutions: monic, distinct degrees, ascending.
inline std::vector<UniPoly> polysols(const DiffOp& m) {
    if (m.is_zero()) throw ZeroOperator("polynomial solutions of the zero operator");
    const int bound = polysol_degree_bound(m);
    if (bound < 0) return {};
    auto b = clear_denominators(m);
    const Field f = m.field();
    const std::size_t nunk = static_cast<std::size_t>(bound) + 1;
    // Column k holds M(x^k) = sum_i b_i k(k-1)...(k-i+1) x^(k-i).
    std::vector<UniPoly> images(nunk);
    int maxdeg = 0;
    for (std::size_t k = 0; k < nunk; ++k) {
        UniPoly acc;
        Integer ff = 1;
        for (std::size_t i = 0; i < b.size() && i <= k; ++i) {
            if (i > 0) ff *= static_cast<long>(k - i + 1);
            if (b[i].is_zero() || ff == 0) continue;
            acc += Scalar(Rational(ff)) * b[i].shift_up(k - i);
        }
        images[k] = acc;
        maxdeg = std::max(maxdeg, acc.degree());
    }
    Matrix<Scalar> sys(static_cast<std::size_t>(maxdeg) + 1, nunk);
    for (std::size_t k = 0; k < nunk; ++k)
        for (std::size_t j = 0; j < images[k].coeffs().size(); ++j) sys(j, k) = images[k].coeffs()[j];
    auto ns = linalg::nullspace(sys);
    if (ns.empty()) return {};
    // Echelon by highest degree: reverse columns, reduce, read back.
    Matrix<Scalar> basis(ns.size(), nunk);
    for (std::size_t r = 0; r < ns.size(); ++r)
        for (std::size_t k = 0; k < nunk; ++k) basis(r, nunk - 1 - k) = ns[r][k];
    auto piv = linalg::rref(basis);
    std::vector<UniPoly> out;
    for (std::size_t r = 0; r < piv.size(); ++r) {
        std::vector<Scalar> cs(nunk);
        for (std::size_t k = 0; k < nunk; ++k) cs[k] = basis(r, nunk - 1 - k).with_field(f);
        out.emplace_back(std::move(cs));
    }
    std::sort(out.begin(), out.end(), [](const UniPoly& a, const UniPoly& c) { return a.degree() < c.degree(); });
    return out;
}

/// Valuation of a nonzero function at x = p.
inline int valuation(const RatFun& f, const Scalar& p) { return laurent_lead(f, p).first; }

inline ExpSolsReport expsols(const DiffOp& l) {
    if (l.order() < 1) throw PreconditionError("expsols needs order >= 1");
    ExpSolsReport rep;
    const Field f = l.field();
    auto b = clear_denominators(l);
    const DiffOp lp = from_polys(b);
    const std::size_t n = b.size() - 1;

    // Finite singular points and their exponents.
    UniPoly sing = unipoly::squarefree_part(b.back());
    rep.singular_degree = std::max(0, sing.degree());
    std::vector<Scalar> points;
    if (sing.degree() > 0) {
        auto rr = roots_in_field(sing);
        if (!rr.complete) {
            rep.complete = false;
            rep.reasons.push_back("leading coefficient does not split over the field");
        }
        points = rr.roots;
    }
    std::vector<std::vector<Scalar>> exponents;
    for (const auto& p : points) {
        const RatFun bn(b.back());
        const int vn = valuation(bn, p);
        for (std::size_t i = 0; i < n; ++i) {
            if (b[i].is_zero()) continue;
            if (valuation(RatFun(b[i]), p) - vn < -static_cast<int>(n - i)) {
                rep.complete = false;
                rep.reasons.push_back("irregular singular point at x = " + print_scalar(p));
                break;
            }
        }
        auto ind = roots_in_field(indicial_at(lp, p));
        if (!ind.complete) {
            rep.complete = false;
            rep.reasons.push_back("indicial polynomial at a singular point does not split over the field");
        }
        std::vector<Scalar> es;
        for (const auto& [e, m] : distinct_roots(ind)) {
            (void)m;
            es.push_back(e);
        }
        exponents.push_back(std::move(es));
    }
    auto pp = poly_part_candidates(lp);
    if (!pp.complete) {
        rep.complete = false;
        for (auto& r : pp.reasons) rep.reasons.push_back(r);
    }
    for (const auto& c : pp.candidates) rep.poly_part_degree = std::max(rep.poly_part_degree, c.degree());

    auto push_cert = [&](const RatFun& a0, const UniPoly& nn, const UniPoly& poly,
                         const std::vector<std::pair<Scalar, Scalar>>& poles) {
        RatFun a = a0 + RatFun(nn.derivative(), nn);
        for (const auto& c : rep.certificates)
            if (c.a == a) return;
        if (!riccati_value(lp, a).is_zero()) {
            rep.reasons.push_back("internal: candidate certificate failed verification");
            return;
        }
        rep.certificates.push_back({a, a0, nn.monic(), poly, poles});
    };

    // Odometer over exponent choices, then polynomial parts.
    std::vector<std::size_t> idx(points.size(), 0);
    bool empty_choice = std::any_of(exponents.begin(), exponents.end(), [](const auto& e) { return e.empty(); });
    while (!empty_choice) {
        RatFun local;
        std::vector<std::pair<Scalar, Scalar>> poles;
        for (std::size_t k = 0; k < points.size(); ++k) {
            const Scalar& e = exponents[k][idx[k]];
            if (e.is_zero()) continue;
            poles.emplace_back(points[k], e);
            UniPoly lin({-points[k], Scalar(1).with_field(f)});
            local += RatFun(UniPoly(e), lin);
        }
        for (const auto& p : pp.candidates) {
            RatFun a0 = local + RatFun(p);
            DiffOp m = twist(lp, a0);
            rep.polysol_degree = std::max(rep.polysol_degree, polysol_degree_bound(m));
            auto sols = polysols(m);
            for (const auto& s : sols) push_cert(a0, s, p, poles);
            if (sols.size() >= 2) {
                // One member of the family with every basis direction present.
                UniPoly sum;
                for (const auto& s : sols) sum += s;
                push_cert(a0, sum, p, poles);
            }
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == exponents[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }

    if (n == 1) {
        // The unique first-order right factor of a first-order operator.
        RatFun a = -(l.coeff(0) / l.coeff(1));
        if (rep.certificates.empty()) {
            Certificate c{a, a, UniPoly(Scalar(1).with_field(f)), {}, {}};
            if (a.is_polynomial()) c.poly_part = a.num();
            rep.certificates.push_back(std::move(c));
        }
        rep.complete = true;
        rep.reasons.clear();
    }
    return rep;
}

/// Partial-fraction text P + sum e_p/(x - p) + N'/N of a certificate. When
/// no decomposition is recorded the canonical form is printed.
inline std::string print_certificate(const Certificate& c) {
    using namespace diffirr::detail;
    if (c.poles.empty() && c.n.degree() <= 0 && RatFun(c.poly_part) != c.a) return print_ratfun(c.a);
    std::vector<PTerm> ts = unipoly_terms(c.poly_part);
    for (const auto& [p, e] : c.poles) {
        std::string lin = p.is_zero() ? "x" : "(" + print_poly(UniPoly({-p, Scalar(1)})) + ")";
        if (e.is_rational()) {
            Rational q = e.rational();
            Integer u = abs(q.get_num()), v = q.get_den();
            std::string den = v == 1 ? lin : "(" + v.get_str() + "*" + lin + ")";
            ts.push_back({sgn(q) < 0, u.get_str() + "/" + den});
        } else {
            PTerm f = scalar_factor(e);
            ts.push_back({f.neg, f.text + "/" + lin});
        }
    }
    if (c.n.degree() > 0)
        for (auto& t : ratfun_terms(RatFun(c.n.derivative(), c.n))) ts.push_back(t);
    return join_sum(ts);
}

}  // namespace riccati
}  // namespace diffirr
