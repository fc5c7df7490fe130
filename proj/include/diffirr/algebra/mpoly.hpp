#pragma once

// Sparse multivariate polynomials over Q(theta) in the field parameters.
// Monomials are exponent vectors with trailing zeros removed, ordered
// lexicographically (variable 0 most significant); terms are kept sorted in
// decreasing order. Because exponent vectors are trimmed, a constant has the
// same representation whatever the number of variables.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "diffirr/algebra/number_field.hpp"

namespace diffirr {

using Mono = std::vector<std::uint32_t>;

namespace mono {

inline void trim(Mono& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

inline Mono mul(const Mono& a, const Mono& b) {
    Mono r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline std::optional<Mono> div(const Mono& a, const Mono& b) {
    if (b.size() > a.size()) return std::nullopt;
    Mono r(a);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (r[i] < b[i]) return std::nullopt;
        r[i] -= b[i];
    }
    trim(r);
    return r;
}

inline std::uint32_t exp(const Mono& m, std::size_t v) { return v < m.size() ? m[v] : 0; }

inline unsigned total(const Mono& m) {
    unsigned t = 0;
    for (auto e : m) t += e;
    return t;
}

}  // namespace mono

struct MTerm {
    Mono m;
    Num c;
    bool operator==(const MTerm& o) const { return m == o.m && c == o.c; }
};

class MPoly {
public:
    MPoly() = default;
    MPoly(const Num& c) {
        if (!c.is_zero()) terms_.push_back({{}, c});
    }
    static MPoly from_terms(std::vector<MTerm> t) {
        MPoly p;
        p.terms_ = std::move(t);
        p.normalize();
        return p;
    }
    static MPoly variable(std::size_t v) {
        Mono m(v + 1, 0);
        m[v] = 1;
        MPoly p;
        p.terms_.push_back({std::move(m), Num(1)});
        return p;
    }

    const std::vector<MTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.empty()); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].m.empty() && terms_[0].c.is_one(); }
    Num constant_value() const {
        if (terms_.empty() || !terms_.back().m.empty()) return {};
        return terms_.back().c;
    }
    const MTerm& lead() const { return terms_.front(); }

    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    std::size_t num_vars() const {
        std::size_t n = 0;
        for (const auto& t : terms_) n = std::max(n, t.m.size());
        return n;
    }
    unsigned degree_in(std::size_t v) const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, mono::exp(t.m, v));
        return d;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, mono::total(t.m));
        return d;
    }
    /// Lowest-index variable present, or -1 for constants.
    int main_variable() const {
        int best = -1;
        for (const auto& t : terms_)
            for (std::size_t i = 0; i < t.m.size(); ++i)
                if (t.m[i] != 0) {
                    if (best < 0 || static_cast<int>(i) < best) best = static_cast<int>(i);
                    break;
                }
        return best;
    }

    // Sort decreasingly, merge equal monomials, drop zeros.
    void normalize() {
        for (auto& t : terms_) mono::trim(t.m);
        std::sort(terms_.begin(), terms_.end(),
                  [](const MTerm& a, const MTerm& b) { return a.m > b.m; });
        std::vector<MTerm> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().m == t.m) {
                out.back().c = nf::add(out.back().c, t.c);
            } else {
                out.push_back(std::move(t));
            }
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const MTerm& t) { return t.c.is_zero(); }),
                  out.end());
        terms_ = std::move(out);
    }

private:
    std::vector<MTerm> terms_;
};

namespace mpoly {

inline MPoly add(const MPoly& a, const MPoly& b) {
    const auto& x = a.terms();
    const auto& y = b.terms();
    std::vector<MTerm> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].m > y[j].m)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].m > x[i].m) {
            out.push_back(y[j++]);
        } else {
            Num c = nf::add(x[i].c, y[j].c);
            if (!c.is_zero()) out.push_back({x[i].m, std::move(c)});
            ++i;
            ++j;
        }
    }
    return MPoly::from_terms(std::move(out));
}

inline MPoly neg(const MPoly& a) {
    std::vector<MTerm> t = a.terms();
    for (auto& u : t) u.c = nf::neg(u.c);
    return MPoly::from_terms(std::move(t));
}

inline MPoly sub(const MPoly& a, const MPoly& b) { return add(a, neg(b)); }

inline MPoly scale(const MPoly& a, const Num& s, const QPoly& m) {
    if (s.is_zero()) return {};
    std::vector<MTerm> t = a.terms();
    for (auto& u : t) u.c = nf::mul(u.c, s, m);
    return MPoly::from_terms(std::move(t));
}

inline MPoly mul_term(const MPoly& a, const MTerm& s, const QPoly& m) {
    std::vector<MTerm> t;
    t.reserve(a.terms().size());
    for (const auto& u : a.terms()) t.push_back({mono::mul(u.m, s.m), nf::mul(u.c, s.c, m)});
    return MPoly::from_terms(std::move(t));
}

inline MPoly mul(const MPoly& a, const MPoly& b, const QPoly& m) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return scale(b, a.constant_value(), m);
    if (b.is_constant()) return scale(a, b.constant_value(), m);
    std::vector<MTerm> t;
    t.reserve(a.terms().size() * b.terms().size());
    for (const auto& u : a.terms())
        for (const auto& v : b.terms()) t.push_back({mono::mul(u.m, v.m), nf::mul(u.c, v.c, m)});
    return MPoly::from_terms(std::move(t));
}

inline MPoly pow(const MPoly& a, unsigned e, const QPoly& m) {
    MPoly r(Num(1)), base = a;
    while (e) {
        if (e & 1U) r = mul(r, base, m);
        e >>= 1U;
        if (e) base = mul(base, base, m);
    }
    return r;
}

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b, const QPoly& m) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.is_zero()) return MPoly();
    if (b.is_constant()) return scale(a, nf::inv(b.constant_value(), m), m);
    const std::size_t nv = std::max(a.num_vars(), b.num_vars());
    std::vector<unsigned> cap(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        unsigned da = a.degree_in(v), db = b.degree_in(v);
        if (db > da) return std::nullopt;
        cap[v] = da - db;
    }
    const MTerm& lb = b.lead();
    Num inv_lb = nf::inv(lb.c, m);
    std::vector<MTerm> q;
    MPoly r = a;
    while (!r.is_zero()) {
        const MTerm& lr = r.lead();
        auto qm = mono::div(lr.m, lb.m);
        if (!qm) return std::nullopt;
        for (std::size_t v = 0; v < qm->size(); ++v)
            if ((*qm)[v] > cap[v]) return std::nullopt;
        MTerm t{*qm, nf::mul(lr.c, inv_lb, m)};
        r = sub(r, mul_term(b, t, m));
        q.push_back(std::move(t));
    }
    return MPoly::from_terms(std::move(q));
}

/// Scale so the leading coefficient is 1.
inline MPoly monic(const MPoly& a, const QPoly& m) {
    if (a.is_zero() || a.lead().c.is_one()) return a;
    return scale(a, nf::inv(a.lead().c, m), m);
}

/// Coefficients of a as a polynomial in variable v (ascending powers).
inline std::vector<MPoly> split(const MPoly& a, std::size_t v) {
    std::vector<std::vector<MTerm>> parts(a.degree_in(v) + 1);
    for (const auto& t : a.terms()) {
        MTerm u = t;
        std::uint32_t e = mono::exp(u.m, v);
        if (v < u.m.size()) u.m[v] = 0;
        parts[e].push_back(std::move(u));
    }
    std::vector<MPoly> out;
    out.reserve(parts.size());
    for (auto& p : parts) out.push_back(MPoly::from_terms(std::move(p)));
    return out;
}

inline MPoly join(const std::vector<MPoly>& parts, std::size_t v) {
    std::vector<MTerm> t;
    for (std::size_t e = 0; e < parts.size(); ++e)
        for (const auto& u : parts[e].terms()) {
            MTerm w = u;
            if (e > 0) {
                if (w.m.size() <= v) w.m.resize(v + 1, 0);
                w.m[v] += static_cast<std::uint32_t>(e);
            }
            t.push_back(std::move(w));
        }
    return MPoly::from_terms(std::move(t));
}

MPoly gcd(const MPoly& a, const MPoly& b, const QPoly& m);

namespace detail {

inline MPoly content(const std::vector<MPoly>& coeffs, const QPoly& m) {
    MPoly g;
    for (const auto& c : coeffs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? monic(c, m) : gcd(g, c, m);
        if (g.is_constant()) return MPoly(Num(1));
    }
    return g;
}

// Pseudo-remainder of f by g as polynomials in variable v, both given split.
inline std::vector<MPoly> prem(std::vector<MPoly> f, const std::vector<MPoly>& g, const QPoly& m) {
    const std::size_t dg = g.size() - 1;
    const MPoly& lg = g.back();
    while (f.size() >= g.size()) {
        MPoly lf = f.back();
        const std::size_t shift = f.size() - g.size();
        for (auto& c : f) c = mul(c, lg, m);
        for (std::size_t i = 0; i <= dg; ++i) f[shift + i] = sub(f[shift + i], mul(lf, g[i], m));
        while (!f.empty() && f.back().is_zero()) f.pop_back();
    }
    return f;
}

inline std::vector<MPoly> primitive(const std::vector<MPoly>& f, const QPoly& m) {
    MPoly c = content(f, m);
    std::vector<MPoly> out;
    out.reserve(f.size());
    for (const auto& x : f) out.push_back(*divide_exact(x, c, m));
    return out;
}

}  // namespace detail

/// Monic gcd via recursive content / primitive part and primitive PRS.
inline MPoly gcd(const MPoly& a, const MPoly& b, const QPoly& m) {
    if (a.is_zero()) return monic(b, m);
    if (b.is_zero()) return monic(a, m);
    if (a.is_constant() || b.is_constant()) return MPoly(Num(1));
    if (a == b) return monic(a, m);
    int va = a.main_variable(), vb = b.main_variable();
    std::size_t v = static_cast<std::size_t>(std::min(va, vb));
    auto fa = split(a, v);
    auto fb = split(b, v);
    MPoly ca = detail::content(fa, m);
    MPoly cb = detail::content(fb, m);
    MPoly c = gcd(ca, cb, m);
    if (fa.size() == 1 || fb.size() == 1) return monic(c, m);
    auto pa = detail::primitive(fa, m);
    auto pb = detail::primitive(fb, m);
    if (pa.size() < pb.size()) std::swap(pa, pb);
    while (true) {
        auto r = detail::prem(pa, pb, m);
        if (r.empty()) break;
        if (r.size() == 1) return monic(c, m);
        pa = std::move(pb);
        pb = detail::primitive(r, m);
    }
    return monic(mul(c, join(pb, v), m), m);
}

/// Substitute values for some variables and renumber the survivors.
/// `values[v]` set means variable v is replaced; `new_index[v]` gives the
/// destination index of a surviving variable.
inline MPoly substitute(const MPoly& a, const std::vector<std::optional<Num>>& values,
                        const std::vector<std::size_t>& new_index, const QPoly& m) {
    std::vector<MTerm> out;
    out.reserve(a.terms().size());
    for (const auto& t : a.terms()) {
        Num c = t.c;
        Mono nm;
        for (std::size_t v = 0; v < t.m.size() && !c.is_zero(); ++v) {
            if (t.m[v] == 0) continue;
            if (v < values.size() && values[v]) {
                c = nf::mul(c, nf::pow(*values[v], t.m[v], m), m);
            } else {
                std::size_t j = v < new_index.size() ? new_index[v] : v;
                if (nm.size() <= j) nm.resize(j + 1, 0);
                nm[j] += t.m[v];
            }
        }
        if (!c.is_zero()) out.push_back({std::move(nm), std::move(c)});
    }
    return MPoly::from_terms(std::move(out));
}

/// Evaluate at a full assignment.
inline Num evaluate(const MPoly& a, const std::vector<Num>& values, const QPoly& m) {
    Num acc;
    for (const auto& t : a.terms()) {
        Num c = t.c;
        for (std::size_t v = 0; v < t.m.size(); ++v)
            if (t.m[v]) c = nf::mul(c, nf::pow(values.at(v), t.m[v], m), m);
        acc = nf::add(acc, c);
    }
    return acc;
}

/// Exact square root in Q(theta)[params], if one exists and is found.
inline std::optional<MPoly> sqrt(const MPoly& a, const FieldDescriptor& f) {
    const QPoly& m = f.minpoly;
    if (a.is_zero()) return MPoly();
    const MTerm& la = a.lead();
    Mono hm(la.m.size());
    for (std::size_t i = 0; i < la.m.size(); ++i) {
        if (la.m[i] % 2) return std::nullopt;
        hm[i] = la.m[i] / 2;
    }
    auto hc = nf::sqrt(la.c, f);
    if (!hc) return std::nullopt;
    const std::size_t nv = a.num_vars();
    std::vector<unsigned> cap(nv);
    for (std::size_t v = 0; v < nv; ++v) cap[v] = a.degree_in(v) / 2;
    MPoly g = MPoly::from_terms({MTerm{hm, *hc}});
    MTerm lg = g.lead();
    Num inv2lg = nf::inv(nf::scale(lg.c, 2), m);
    while (true) {
        MPoly r = sub(a, mul(g, g, m));
        if (r.is_zero()) return g;
        auto qm = mono::div(r.lead().m, lg.m);
        if (!qm) return std::nullopt;
        for (std::size_t v = 0; v < qm->size(); ++v)
            if ((*qm)[v] > cap[v]) return std::nullopt;
        MTerm t{*qm, nf::mul(r.lead().c, inv2lg, m)};
        g = add(g, MPoly::from_terms({t}));
    }
}

}  // namespace mpoly
}  // namespace diffirr
