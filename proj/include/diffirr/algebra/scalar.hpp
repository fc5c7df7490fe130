#pragma once

// Elements of Q(theta)(t_1..t_m): reduced fractions of parameter polynomials.
// Canonical form: gcd(num, den) = 1 and den has leading coefficient 1, so two
// equal scalars compare equal coefficient by coefficient.

#include <optional>
#include <string>
#include <utility>

#include "diffirr/algebra/mpoly.hpp"

namespace diffirr {

class Scalar {
public:
    /// Zero with no field attached; combines with values of any field.
    Scalar() : den_(Num(1)) {}
    Scalar(long v) : num_(Num(v)), den_(Num(1)) {}
    Scalar(const Rational& q) : num_(Num(q)), den_(Num(1)) {}
    Scalar(Field f, const Num& c) : field_(std::move(f)), num_(c), den_(Num(1)) { }
    Scalar(Field f, MPoly num) : field_(std::move(f)), num_(std::move(num)), den_(Num(1)) {
    }
    Scalar(Field f, MPoly num, MPoly den) : field_(std::move(f)), num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero("scalar with zero denominator");
        reduce();
    }

    static Scalar generator(const Field& f) { return Scalar(f, nf::generator(*f)); }
    static Scalar param(const Field& f, std::size_t index) {
        if (index >= f->params.size()) throw FieldMismatch("parameter index out of range");
        return Scalar(f, MPoly::variable(index));
    }

    const Field& field() const { return field_; }
    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    /// Free of parameters (an element of Q(theta)).
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_rational() const { return is_constant() && num_.constant_value().is_rational(); }
    Num constant_value() const { return num_.constant_value(); }
    Rational rational() const { return num_.constant_value().rational(); }

    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        Field f = merge(a, b);
        const QPoly& m = minpoly(f);
        if (a.is_zero()) return b.with_field(f);
        if (b.is_zero()) return a.with_field(f);
        if (a.den_.is_one() && b.den_.is_one()) return Scalar(f, mpoly::add(a.num_, b.num_), Raw{});
        if (a.den_ == b.den_) return Scalar(f, mpoly::add(a.num_, b.num_), a.den_);
        MPoly g = mpoly::gcd(a.den_, b.den_, m);
        MPoly ad = *mpoly::divide_exact(a.den_, g, m);
        MPoly bd = *mpoly::divide_exact(b.den_, g, m);
        MPoly n = mpoly::add(mpoly::mul(a.num_, bd, m), mpoly::mul(b.num_, ad, m));
        return Scalar(f, std::move(n), mpoly::mul(a.den_, bd, m));
    }
    friend Scalar operator-(const Scalar& a) {
        Scalar r = a;
        r.num_ = mpoly::neg(a.num_);
        return r;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Field f = merge(a, b);
        const QPoly& m = minpoly(f);
        if (a.is_zero() || b.is_zero()) return Scalar().with_field(f);
        if (a.den_.is_one() && b.den_.is_one()) return Scalar(f, mpoly::mul(a.num_, b.num_, m), Raw{});
        // Cross-cancel so the product is reduced without a full gcd.
        MPoly g1 = mpoly::gcd(a.num_, b.den_, m);
        MPoly g2 = mpoly::gcd(b.num_, a.den_, m);
        MPoly n = mpoly::mul(*mpoly::divide_exact(a.num_, g1, m), *mpoly::divide_exact(b.num_, g2, m), m);
        MPoly d = mpoly::mul(*mpoly::divide_exact(a.den_, g2, m), *mpoly::divide_exact(b.den_, g1, m), m);
        Scalar r(f, std::move(n), std::move(d), Raw{});
        r.normalize_sign();
        return r;
    }
    Scalar inverse() const {
        if (is_zero()) throw DivisionByZero("division by zero");
        Scalar r(field_, den_, num_, Raw{});
        r.normalize_sign();
        return r;
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar pow(unsigned e) const {
        Scalar r(1), base = *this;
        while (e) {
            if (e & 1U) r *= base;
            e >>= 1U;
            if (e) base *= base;
        }
        return r.with_field(field_);
    }

    Scalar with_field(const Field& f) const {
        Scalar r = *this;
        if (f) r.field_ = f;
        return r;
    }

    /// Square root in the tower, if found.
    std::optional<Scalar> sqrt() const {
        if (is_zero()) return *this;
        const FieldDescriptor& fd = field_ ? *field_ : *rational_field();
        const QPoly& m = fd.minpoly;
        // sqrt(n/d) = sqrt(n*d)/d
        auto s = mpoly::sqrt(mpoly::mul(num_, den_, m), fd);
        if (!s) return std::nullopt;
        return Scalar(field_, *s, den_);
    }

    static const QPoly& minpoly(const Field& f) {
        static const QPoly empty;
        return f ? f->minpoly : empty;
    }

    static Field merge(const Scalar& a, const Scalar& b) {
        if (!a.field_) return b.field_;
        if (!b.field_) return a.field_;
        if (!same_field(a.field_, b.field_)) throw FieldMismatch("operands belong to different fields");
        return a.field_;
    }

private:
    struct Raw {};
    Scalar(Field f, MPoly num, Raw) : field_(std::move(f)), num_(std::move(num)), den_(Num(1)) {}
    Scalar(Field f, MPoly num, MPoly den, Raw) : field_(std::move(f)), num_(std::move(num)), den_(std::move(den)) {}


    void normalize_sign() {
        const QPoly& m = minpoly(field_);
        if (num_.is_zero()) {
            den_ = MPoly(Num(1));
            return;
        }
        if (den_.is_constant()) {
            num_ = mpoly::scale(num_, nf::inv(den_.constant_value(), m), m);
            den_ = MPoly(Num(1));
            return;
        }
        const Num& lc = den_.lead().c;
        if (!lc.is_one()) {
            Num inv = nf::inv(lc, m);
            num_ = mpoly::scale(num_, inv, m);
            den_ = mpoly::scale(den_, inv, m);
        }
    }

    void reduce() {
        const QPoly& m = minpoly(field_);
        if (num_.is_zero()) {
            den_ = MPoly(Num(1));
            return;
        }
        if (!den_.is_constant()) {
            MPoly g = mpoly::gcd(num_, den_, m);
            if (!g.is_constant()) {
                num_ = *mpoly::divide_exact(num_, g, m);
                den_ = *mpoly::divide_exact(den_, g, m);
            }
        }
        normalize_sign();
    }

    Field field_;
    MPoly num_;
    MPoly den_;
};

}  // namespace diffirr
