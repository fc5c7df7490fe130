#pragma once

// Roots of univariate polynomials that lie in the field tower, and
// nonnegative integer roots of polynomials with parametric coefficients.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "diffirr/algebra/unipoly.hpp"

namespace diffirr {

struct RootsResult {
    std::vector<Scalar> roots;  // repeated according to multiplicity
    bool complete = true;       // p splits into linear factors over the tower
};

namespace detail {

/// Coefficients as rationals when every coefficient is a rational constant.
inline std::optional<QPoly> rational_coeffs(const UniPoly& p) {
    QPoly q;
    q.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        if (!c.is_rational()) return std::nullopt;
        q.push_back(c.rational());
    }
    return q;
}

/// Tower roots of a squarefree factor; appends each root `mult` times.
/// Returns false when some roots may lie outside the tower or could not be found.
inline bool squarefree_roots(UniPoly f, int mult, const Field& field, std::vector<Scalar>& out) {
    auto push = [&](const Scalar& r) {
        for (int k = 0; k < mult; ++k) out.push_back(r.with_field(field));
    };
    f = f.monic();
    if (f.degree() >= 3) {
        auto q = rational_coeffs(f);
        if (!q) return false;
        for (const auto& r : qpoly::rational_roots(*q)) {
            push(Scalar(r));
            UniPoly lin({Scalar(Rational(-r)), Scalar(1)});
            f = unipoly::quo(f, lin);
        }
        if (f.degree() >= 3) return false;
    }
    if (f.degree() == 1) {
        push(-f.coeff(0));
        return true;
    }
    if (f.degree() == 2) {
        const Scalar b = f.coeff(1), c = f.coeff(0);
        Scalar disc = b * b - Scalar(4) * c;
        auto s = disc.with_field(field).sqrt();
        if (!s) return false;
        Scalar half(Rational(1, 2));
        push(half * (-b + *s));
        push(half * (-b - *s));
        return true;
    }
    return f.degree() <= 0;
}

}  // namespace detail

/// All tower roots of p with multiplicities. `complete` is true iff p splits
/// completely over the tower; partial results are returned otherwise.
inline RootsResult roots_in_field(const UniPoly& p) {
    if (p.is_zero()) throw PreconditionError("roots of the zero polynomial");
    RootsResult res;
    const Field field = p.field();
    auto parts = unipoly::squarefree_decomposition(p);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].degree() <= 0) continue;
        if (!detail::squarefree_roots(parts[i], static_cast<int>(i) + 1, field, res.roots)) res.complete = false;
    }
    return res;
}

/// Distinct tower roots with multiplicity, in discovery order.
inline std::vector<std::pair<Scalar, int>> distinct_roots(const RootsResult& r) {
    std::vector<std::pair<Scalar, int>> out;
    for (const auto& s : r.roots) {
        bool found = false;
        for (auto& [v, m] : out)
            if (v == s) {
                ++m;
                found = true;
                break;
            }
        if (!found) out.emplace_back(s, 1);
    }
    return out;
}

/// Polynomial in a formal variable over Scalar, ascending coefficients.
using ScalarPoly = std::vector<Scalar>;

/// Nonnegative integers n with p(n) = 0, ascending. Handles parametric and
/// algebraic coefficients exactly: the integer roots are the common roots of
/// the rational polynomials attached to each (parameter monomial, theta power).
inline std::vector<Integer> nonnegative_integer_roots(const ScalarPoly& p) {
    ScalarPoly c = p;
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.empty()) throw PreconditionError("integer roots of the zero polynomial");
    Field field;
    for (const auto& s : c)
        if (s.field()) field = s.field();
    const QPoly& m = Scalar::minpoly(field);
    // Clear denominators with their product; roots are unchanged.
    MPoly den(Num(1));
    for (const auto& s : c)
        if (!s.den().is_one() && !mpoly::divide_exact(den, s.den(), m)) den = mpoly::mul(den, s.den(), m);
    std::vector<std::pair<Mono, std::vector<QPoly>>> groups;  // per monomial: per theta power a QPoly in lambda
    for (std::size_t k = 0; k < c.size(); ++k) {
        MPoly num = c[k].den().is_one() ? mpoly::mul(c[k].num(), den, m)
                                        : mpoly::mul(c[k].num(), *mpoly::divide_exact(den, c[k].den(), m), m);
        for (const auto& t : num.terms()) {
            auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == t.m; });
            if (it == groups.end()) {
                groups.emplace_back(t.m, std::vector<QPoly>{});
                it = groups.end() - 1;
            }
            auto& per_theta = it->second;
            if (per_theta.size() < t.c.c.size()) per_theta.resize(t.c.c.size());
            for (std::size_t j = 0; j < t.c.c.size(); ++j) {
                QPoly& q = per_theta[j];
                if (q.size() <= k) q.resize(k + 1);
                q[k] += t.c.c[j];
            }
        }
    }
    QPoly g;
    for (auto& [mono, per_theta] : groups)
        for (auto& q : per_theta) {
            qpoly::trim(q);
            if (q.empty()) continue;
            g = g.empty() ? qpoly::monic(q) : qpoly::gcd(g, q);
        }
    if (g.empty()) return {};  // cannot happen for nonzero input
    if (qpoly::degree(g) <= 0) return {};
    return qpoly::nonnegative_integer_roots(g);
}

}  // namespace diffirr
