#pragma once

// The constant field: Q, optionally extended by one algebraic generator, plus
// an ordered list of transcendental parameters. Elements of Q(theta) are
// `Num` values; parameters live one level up in `MPoly` / `Scalar`.

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diffirr/algebra/qpoly.hpp"
#include "diffirr/errors.hpp"

namespace diffirr {

struct FieldDescriptor {
    std::string generator;      // empty when the constant field is Q
    QPoly minpoly;              // monic, ascending; empty without generator
    std::vector<std::string> params;

    bool has_generator() const { return !generator.empty(); }
    int extension_degree() const {
        return minpoly.empty() ? 1 : static_cast<int>(minpoly.size()) - 1;
    }
    int param_index(const std::string& name) const {
        auto it = std::find(params.begin(), params.end(), name);
        return it == params.end() ? -1 : static_cast<int>(it - params.begin());
    }
    bool operator==(const FieldDescriptor& o) const {
        return generator == o.generator && minpoly == o.minpoly && params == o.params;
    }
};

using Field = std::shared_ptr<const FieldDescriptor>;

inline bool same_field(const Field& a, const Field& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

namespace detail {
inline bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}
}  // namespace detail

/// Validates and builds a field descriptor. `minpoly` may be any nonzero
/// multiple of the intended minimal polynomial; it is stored monic.
inline Field make_field(std::string generator, QPoly minpoly, std::vector<std::string> params) {
    auto fd = std::make_shared<FieldDescriptor>();
    qpoly::trim(minpoly);
    if (generator.empty() != minpoly.empty())
        throw InvalidField("generator name and minimal polynomial must be given together");
    std::vector<std::string> names = params;
    if (!generator.empty()) names.push_back(generator);
    for (const auto& n : names) {
        if (!detail::is_identifier(n)) throw InvalidField("invalid symbol name '" + n + "'");
        if (n == "x" || n == "D") throw InvalidField("'" + n + "' is reserved");
    }
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidField("symbol names must be distinct");
    if (!minpoly.empty()) {
        if (qpoly::degree(minpoly) < 1) throw InvalidField("minimal polynomial must have degree >= 1");
        minpoly = qpoly::monic(minpoly);
        if (qpoly::degree(qpoly::gcd(minpoly, qpoly::derivative(minpoly))) > 0)
            throw InvalidField("minimal polynomial is not squarefree");
        if (qpoly::degree(minpoly) >= 2 && qpoly::degree(minpoly) <= 3 &&
            !qpoly::rational_roots(minpoly).empty())
            throw InvalidField("minimal polynomial has a rational root");
    }
    fd->generator = std::move(generator);
    fd->minpoly = std::move(minpoly);
    fd->params = std::move(params);
    return fd;
}

inline Field rational_field() { return make_field("", {}, {}); }

/// Element of Q(theta): coefficient vector in the power basis, trimmed, so
/// rational constants have the same representation in every field.
struct Num {
    std::vector<Rational> c;

    Num() = default;
    Num(long v) { if (v != 0) c.push_back(Rational(v)); }
    Num(const Rational& q) {
        if (sgn(q) == 0) return;
        c.push_back(q);
        c.back().canonicalize();  // tolerate mpq_class(n, d) built without reduction
    }
    explicit Num(std::vector<Rational> coeffs) : c(std::move(coeffs)) { qpoly::trim(c); }

    bool is_zero() const { return c.empty(); }
    bool is_rational() const { return c.size() <= 1; }
    Rational rational() const { return c.empty() ? Rational(0) : c[0]; }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }

    bool operator==(const Num& o) const { return c == o.c; }
    bool operator!=(const Num& o) const { return c != o.c; }
    // Total order used only for canonical sorting.
    bool operator<(const Num& o) const {
        if (c.size() != o.c.size()) return c.size() < o.c.size();
        for (std::size_t i = c.size(); i-- > 0;)
            if (c[i] != o.c[i]) return c[i] < o.c[i];
        return false;
    }
};

namespace nf {

inline Num add(const Num& a, const Num& b) { return Num(qpoly::add(a.c, b.c)); }
inline Num sub(const Num& a, const Num& b) { return Num(qpoly::sub(a.c, b.c)); }
inline Num neg(const Num& a) {
    Num r = a;
    for (auto& v : r.c) v = -v;
    return r;
}
inline Num scale(const Num& a, const Rational& s) { return Num(qpoly::scale(a.c, s)); }

inline Num mul(const Num& a, const Num& b, const QPoly& m) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.c.size() == 1) return scale(b, a.c[0]);
    if (b.c.size() == 1) return scale(a, b.c[0]);
    QPoly p = qpoly::mul(a.c, b.c);
    if (m.empty()) throw FieldMismatch("algebraic element multiplied outside its field");
    if (p.size() >= m.size()) p = qpoly::rem(p, m);
    return Num(std::move(p));
}

inline Num inv(const Num& a, const QPoly& m) {
    if (a.is_zero()) throw DivisionByZero("division by zero");
    if (a.c.size() == 1) return Num(Rational(1 / a.c[0]));
    if (m.empty()) throw FieldMismatch("algebraic element inverted outside its field");
    // Extended Euclid: s*a + t*m = g.
    QPoly r0 = m, r1 = a.c, s0 = {}, s1 = {Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = qpoly::divmod(r0, r1);
        QPoly s = qpoly::sub(s0, qpoly::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (qpoly::degree(r0) != 0)
        throw DivisionByZero("zero divisor in Q(theta): the minimal polynomial is reducible");
    return Num(qpoly::rem(qpoly::scale(s0, 1 / r0[0]), m));
}

inline Num div(const Num& a, const Num& b, const QPoly& m) { return mul(a, inv(b, m), m); }

inline Num pow(const Num& a, unsigned e, const QPoly& m) {
    Num r(1), base = a;
    while (e) {
        if (e & 1U) r = mul(r, base, m);
        e >>= 1U;
        if (e) base = mul(base, base, m);
    }
    return r;
}

inline Num generator(const FieldDescriptor& f) {
    if (!f.has_generator()) throw FieldMismatch("field has no algebraic generator");
    if (f.extension_degree() == 1) return Num(Rational(-f.minpoly[0]));
    return Num(std::vector<Rational>{0, 1});
}

/// Square root inside Q(theta). Exact for rationals in any field of odd
/// degree and for every element of a quadratic field; nullopt otherwise.
inline std::optional<Num> sqrt(const Num& a, const FieldDescriptor& f) {
    if (a.is_zero()) return Num();
    const QPoly& m = f.minpoly;
    auto check = [&](const Num& y) -> std::optional<Num> {
        if (mul(y, y, m) == a) return y;
        return std::nullopt;
    };
    if (a.is_rational()) {
        if (auto r = qpoly::rational_sqrt(a.rational())) return Num(*r);
    }
    if (f.extension_degree() != 2) return std::nullopt;
    // theta^2 + b*theta + c = 0, sqrt(disc) = 2*theta + b.
    const Rational& c0 = m[0];
    const Rational& b = m[1];
    Rational disc = b * b - 4 * c0;
    Num root_disc(std::vector<Rational>{b, 2});
    // a = u + v*sqrt(disc)
    Rational a0 = a.c.size() > 0 ? a.c[0] : Rational(0);
    Rational a1 = a.c.size() > 1 ? a.c[1] : Rational(0);
    Rational v = a1 / 2;
    Rational u = a0 - a1 * b / 2;
    if (sgn(v) == 0) {
        // Either a rational square or a rational square times disc.
        if (auto s = qpoly::rational_sqrt(u / disc)) return check(scale(root_disc, *s));
        return std::nullopt;
    }
    Rational n2 = u * u - disc * v * v;
    auto n = qpoly::rational_sqrt(n2);
    if (!n) return std::nullopt;
    for (int sg : {1, -1}) {
        Rational p2 = (u + sg * (*n)) / 2;
        auto p = qpoly::rational_sqrt(p2);
        if (!p || sgn(*p) == 0) continue;
        Rational r = v / (2 * (*p));
        Num y = add(Num(*p), scale(root_disc, r));
        if (auto ok = check(y)) return ok;
    }
    return std::nullopt;
}

}  // namespace nf
}  // namespace diffirr
