#pragma once

// Rational functions in x over the scalar field: num/den with gcd 1 and den
// monic. This is the coefficient domain of differential operators.

#include <algorithm>
#include <utility>

#include "diffirr/algebra/unipoly.hpp"

namespace diffirr {

class RatFun {
public:
    RatFun() : den_(Scalar(1)) {}
    RatFun(long v) : num_(Scalar(v)), den_(Scalar(1)) {}
    RatFun(const Scalar& s) : num_(s), den_(Scalar(1).with_field(s.field())) {}
    RatFun(UniPoly p) : num_(std::move(p)), den_(Scalar(1).with_field(num_.field())) {}
    RatFun(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
        reduce();
    }

    static RatFun x(const Field& f = nullptr) { return RatFun(UniPoly::x(f)); }

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    Field field() const {
        if (auto f = num_.field()) return f;
        return den_.field();
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }
    Scalar constant_value() const { return num_.coeff(0); }

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.is_polynomial() && b.is_polynomial()) return RatFun(a.num_ + b.num_, a.den_, Raw{});
        if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
        // Henrici: only the cofactor gcd can cancel.
        UniPoly g = unipoly::gcd(a.den_, b.den_);
        UniPoly ad = unipoly::quo(a.den_, g), bd = unipoly::quo(b.den_, g);
        UniPoly n = a.num_ * bd + b.num_ * ad;
        UniPoly d = a.den_ * bd;
        if (g.degree() > 0) {
            UniPoly h = unipoly::gcd(n, g);
            if (h.degree() > 0) {
                n = unipoly::quo(n, h);
                d = unipoly::quo(d, h);
            }
        }
        return RatFun(std::move(n), std::move(d), Raw{});
    }
    friend RatFun operator-(const RatFun& a) { return RatFun(-a.num_, a.den_, Raw{}); }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        if (a.is_zero() || b.is_zero()) return RatFun();
        if (a.is_polynomial() && b.is_polynomial()) return RatFun(a.num_ * b.num_, a.den_, Raw{});
        UniPoly g1 = unipoly::gcd(a.num_, b.den_);
        UniPoly g2 = unipoly::gcd(b.num_, a.den_);
        UniPoly n = unipoly::quo(a.num_, g1) * unipoly::quo(b.num_, g2);
        UniPoly d = unipoly::quo(a.den_, g2) * unipoly::quo(b.den_, g1);
        return RatFun(std::move(n), std::move(d), Normalize{});
    }
    RatFun inverse() const {
        if (is_zero()) throw DivisionByZero("division by zero rational function");
        return RatFun(den_, num_, Normalize{});
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    RatFun pow(unsigned e) const {
        RatFun r(Scalar(1).with_field(field())), base = *this;
        while (e) {
            if (e & 1U) r *= base;
            e >>= 1U;
            if (e) base *= base;
        }
        return r;
    }

    RatFun derivative() const {
        if (is_polynomial()) return RatFun(num_.derivative(), den_, Raw{});
        // (n/d)' = (n' d - n d') / d^2; with d = g*h where g = gcd(d, d') the
        // common factor g cancels once.
        UniPoly dd = den_.derivative();
        UniPoly g = unipoly::gcd(den_, dd);
        UniPoly dg = unipoly::quo(den_, g);
        UniPoly n = num_.derivative() * dg - num_ * unipoly::quo(dd, g);
        return RatFun(std::move(n), den_ * dg);
    }

    /// Substitute x -> x + a.
    RatFun taylor_shift(const Scalar& a) const {
        return RatFun(num_.taylor_shift(a), den_.taylor_shift(a), Raw{});
    }

private:
    struct Raw {};
    struct Normalize {};
    RatFun(UniPoly n, UniPoly d, Raw) : num_(std::move(n)), den_(std::move(d)) {}
    RatFun(UniPoly n, UniPoly d, Normalize) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    void normalize() {
        if (num_.is_zero()) {
            den_ = UniPoly(Scalar(1).with_field(den_.field()));
            return;
        }
        if (!den_.lead().is_one()) {
            Scalar inv = den_.lead().inverse();
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }
    void reduce() {
        if (!num_.is_zero() && den_.degree() > 0) {
            UniPoly g = unipoly::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = unipoly::quo(num_, g);
                den_ = unipoly::quo(den_, g);
            }
        }
        normalize();
    }

    UniPoly num_;
    UniPoly den_;
};

/// max(deg num, deg den) in lowest terms; -1 for zero.
inline int rat_degree(const RatFun& f) {
    if (f.is_zero()) return -1;
    return std::max(f.num().degree(), f.den().degree());
}

/// Valuation at x = p and the leading Laurent coefficient there.
inline std::pair<int, Scalar> laurent_lead(const RatFun& f, const Scalar& p) {
    if (f.is_zero()) throw PreconditionError("valuation of zero");
    UniPoly n = f.num().taylor_shift(p), d = f.den().taylor_shift(p);
    int vn = n.low_degree(), vd = d.low_degree();
    return {vn - vd, n.coeff(static_cast<std::size_t>(vn)) / d.coeff(static_cast<std::size_t>(vd))};
}

/// Order at infinity, expressed as deg num - deg den, and the leading coefficient.
inline std::pair<int, Scalar> infinity_lead(const RatFun& f) {
    if (f.is_zero()) throw PreconditionError("degree of zero");
    return {f.num().degree() - f.den().degree(), f.num().lead() / f.den().lead()};
}

}  // namespace diffirr
