#pragma once

// Dense univariate polynomials over Q, stored ascending. Used for minimal
// polynomials, number-field reduction and integer/rational root searches.

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "diffirr/errors.hpp"

namespace diffirr {

using Rational = mpq_class;
using Integer = mpz_class;
using QPoly = std::vector<Rational>;

namespace qpoly {

inline void trim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

inline QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

inline QPoly scale(const QPoly& a, const Rational& s) {
    if (sgn(s) == 0) return {};
    QPoly r(a);
    for (auto& c : r) c *= s;
    return r;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    QPoly r(a);
    trim(r);
    if (r.size() < b.size()) return {{}, r};
    QPoly q(r.size() - b.size() + 1);
    const Rational& lb = b.back();
    for (int k = degree(r) - degree(b); k >= 0; --k) {
        Rational c = r[k + b.size() - 1] / lb;
        q[k] = c;
        if (sgn(c) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
    }
    trim(q);
    trim(r);
    return {q, r};
}

inline QPoly rem(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

inline QPoly monic(const QPoly& a) {
    if (a.empty()) return a;
    return scale(a, 1 / a.back());
}

inline QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline QPoly derivative(const QPoly& a) {
    if (a.size() <= 1) return {};
    QPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
    trim(r);
    return r;
}

inline Rational eval(const QPoly& a, const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

/// Coefficients scaled to coprime integers with positive leading coefficient.
inline std::vector<Integer> primitive_integer(const QPoly& a) {
    Integer den = 1;
    for (const auto& c : a) den = lcm(den, Integer(c.get_den()));
    std::vector<Integer> r;
    r.reserve(a.size());
    Integer g = 0;
    for (const auto& c : a) {
        Integer v = Integer(c.get_num()) * (den / Integer(c.get_den()));
        g = gcd(g, v);
        r.push_back(v);
    }
    if (g != 0) {
        if (sgn(r.back()) < 0) g = -g;
        for (auto& v : r) v /= g;
    }
    return r;
}

/// Positive divisors of |n| up to `limit` (trial division). n != 0.
inline std::vector<Integer> small_divisors(const Integer& n, const Integer& limit) {
    Integer m = abs(n);
    std::vector<Integer> out;
    Integer d = 1;
    for (; d * d <= m && d <= limit; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            Integer co = m / d;
            if (co != d && co <= limit) out.push_back(co);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

inline Integer cauchy_bound(const std::vector<Integer>& a) {
    // 1 + max |a_i| / |a_n|, rounded up.
    Integer mx = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) mx = std::max(mx, Integer(abs(a[i])));
    Integer lead = abs(a.back());
    return 1 + (mx + lead - 1) / lead;
}

inline Integer eval_int(const std::vector<Integer>& a, const Integer& x) {
    Integer acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

// Floating-point root approximations (Durand-Kerner); only used to propose
// integer candidates that are then checked exactly.
inline std::vector<std::complex<long double>> approx_roots(const std::vector<Integer>& a) {
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<std::complex<long double>> z(n);
    if (n <= 0) return z;
    std::vector<long double> c(a.size());
    long double lead = a.back().get_d();
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i].get_d() / lead;
    const std::complex<long double> seed(0.4L, 0.9L);
    long double radius = 1;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]) + 1);
    for (int i = 0; i < n; ++i) z[i] = radius * std::pow(seed, i);
    auto evalp = [&](std::complex<long double> x) {
        std::complex<long double> acc = 1;
        for (int i = n - 1; i >= 0; --i) acc = acc * x + c[i];
        return acc;
    };
    for (int it = 0; it < 2000; ++it) {
        long double change = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<long double> den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (std::abs(den) == 0) den = 1e-30L;
            auto delta = evalp(z[i]) / den;
            z[i] -= delta;
            change = std::max(change, std::abs(delta));
        }
        if (change < 1e-24L * radius) break;
    }
    return z;
}

}  // namespace detail

/// All nonnegative integer roots of a nonzero rational polynomial, ascending.
inline std::vector<Integer> nonnegative_integer_roots(const QPoly& p) {
    QPoly a = p;
    trim(a);
    if (a.empty()) throw PreconditionError("integer roots of the zero polynomial");
    std::vector<Integer> out;
    std::size_t v = 0;
    while (v < a.size() && sgn(a[v]) == 0) ++v;
    if (v > 0) out.push_back(0);
    QPoly b(a.begin() + static_cast<long>(v), a.end());
    if (b.size() <= 1) return out;
    auto ib = primitive_integer(b);
    Integer bound = detail::cauchy_bound(ib);
    const Integer trial_cap = 20000000;
    Integer a0 = abs(ib[0]);
    Integer root_a0 = sqrt(a0);
    std::vector<Integer> cands;
    if (std::min(bound, root_a0) <= trial_cap) {
        cands = small_divisors(ib[0], bound);
    } else {
        for (auto z : detail::approx_roots(ib)) {
            if (z.real() < -0.5L) continue;
            Integer r(static_cast<double>(std::floor(z.real() + 0.5L)));
            for (Integer d = r - 1; d <= r + 1; ++d)
                if (d > 0) cands.push_back(d);
        }
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const auto& c : cands)
        if (detail::eval_int(ib, c) == 0) out.push_back(c);
    return out;
}

/// All rational roots (without multiplicity), ascending.
inline std::vector<Rational> rational_roots(const QPoly& p) {
    QPoly a = p;
    trim(a);
    if (a.empty()) throw PreconditionError("rational roots of the zero polynomial");
    std::vector<Rational> out;
    std::size_t v = 0;
    while (v < a.size() && sgn(a[v]) == 0) ++v;
    if (v > 0) out.push_back(0);
    QPoly b(a.begin() + static_cast<long>(v), a.end());
    if (b.size() <= 1) return out;
    auto ib = primitive_integer(b);
    if (ib.size() == 2) {
        Rational r(-ib[0], ib[1]);
        r.canonicalize();
        out.push_back(r);
        std::sort(out.begin(), out.end());
        return out;
    }
    const Integer cap = 20000000;
    auto nums = small_divisors(ib[0], cap);
    auto dens = small_divisors(ib.back(), cap);
    std::vector<Rational> found;
    for (const auto& n : nums) {
        for (const auto& d : dens) {
            for (int sgn_ : {1, -1}) {
                Rational r(sgn_ * n, d);
                r.canonicalize();
                if (sgn(eval(b, r)) == 0) found.push_back(r);
            }
        }
    }
    out.insert(out.end(), found.begin(), found.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Exact square root of a rational, if it is a perfect square.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    Integer n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    Rational r(Integer(sqrt(n)), Integer(sqrt(d)));
    r.canonicalize();
    return r;
}

}  // namespace qpoly
}  // namespace diffirr
