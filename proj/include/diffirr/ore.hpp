#pragma once

// The Ore ring K(x)[D] with D x = x D + 1. Operators are immutable values;
// coefficients are stored ascending in D with the top one nonzero.

#include <utility>
#include <vector>

#include "diffirr/algebra/ratfun.hpp"

namespace diffirr {

class DiffOp {
public:
    DiffOp() = default;
    DiffOp(const RatFun& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    explicit DiffOp(std::vector<RatFun> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// c * D^k.
    static DiffOp monomial(const RatFun& c, std::size_t k) {
        if (c.is_zero()) return {};
        std::vector<RatFun> v(k + 1);
        v[k] = c;
        return DiffOp(std::move(v));
    }
    static DiffOp D(const Field& f = nullptr) { return monomial(RatFun(Scalar(1).with_field(f)), 1); }

    /// -1 for the zero operator.
    int order() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<RatFun>& coeffs() const { return c_; }
    RatFun coeff(std::size_t k) const { return k < c_.size() ? c_[k] : RatFun(); }
    const RatFun& lead() const { return c_.back(); }
    Field field() const {
        for (const auto& r : c_)
            if (auto f = r.field()) return f;
        return nullptr;
    }

    bool operator==(const DiffOp& o) const { return c_ == o.c_; }
    bool operator!=(const DiffOp& o) const { return c_ != o.c_; }

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
        std::vector<RatFun> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return DiffOp(std::move(r));
    }
    friend DiffOp operator-(const DiffOp& a) {
        std::vector<RatFun> r;
        r.reserve(a.c_.size());
        for (const auto& c : a.c_) r.push_back(-c);
        return DiffOp(std::move(r));
    }
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }
    /// Left multiplication by a function: f * L.
    friend DiffOp operator*(const RatFun& f, const DiffOp& a) {
        if (f.is_zero()) return {};
        std::vector<RatFun> r;
        r.reserve(a.c_.size());
        for (const auto& c : a.c_) r.push_back(f * c);
        return DiffOp(std::move(r));
    }
    DiffOp& operator+=(const DiffOp& o) { return *this = *this + o; }
    DiffOp& operator-=(const DiffOp& o) { return *this = *this - o; }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<RatFun> c_;
};

namespace ore {

/// D o M, by the Leibniz rule D c = c D + c'.
inline DiffOp d_times(const DiffOp& m) {
    if (m.is_zero()) return {};
    const auto& c = m.coeffs();
    std::vector<RatFun> r(c.size() + 1);
    for (std::size_t j = 0; j < c.size(); ++j) {
        r[j] += c[j].derivative();
        r[j + 1] += c[j];
    }
    return DiffOp(std::move(r));
}

/// Operator product L o M.
inline DiffOp mul(const DiffOp& l, const DiffOp& m) {
    if (l.is_zero() || m.is_zero()) return {};
    Scalar::merge(Scalar().with_field(l.field()), Scalar().with_field(m.field()));
    DiffOp acc, dm = m;
    for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
        if (i > 0) dm = d_times(dm);
        if (!l.coeffs()[i].is_zero()) acc += l.coeffs()[i] * dm;
    }
    return acc;
}

/// D^k o M for k = 0..kmax.
inline std::vector<DiffOp> d_powers_times(const DiffOp& m, std::size_t kmax) {
    std::vector<DiffOp> out{m};
    for (std::size_t k = 1; k <= kmax; ++k) out.push_back(d_times(out.back()));
    return out;
}

inline RatFun apply(const DiffOp& l, const RatFun& f) {
    RatFun acc, d = f;
    for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
        if (i > 0) d = d.derivative();
        if (d.is_zero()) break;
        if (!l.coeffs()[i].is_zero()) acc += l.coeffs()[i] * d;
    }
    return acc;
}

struct Division {
    DiffOp quo;
    DiffOp rem;
};

/// Right division: L = quo * P + rem with ord rem < ord P.
inline Division rdivide(const DiffOp& l, const DiffOp& p) {
    if (p.is_zero()) throw DivisionByZeroOperator("right division by the zero operator");
    Division res{{}, l};
    if (l.order() < p.order()) return res;
    const std::size_t gap = static_cast<std::size_t>(l.order() - p.order());
    auto shifted = d_powers_times(p, gap);
    const RatFun lp_inv = p.lead().inverse();
    std::vector<RatFun> q(gap + 1);
    while (!res.rem.is_zero() && res.rem.order() >= p.order()) {
        const std::size_t k = static_cast<std::size_t>(res.rem.order() - p.order());
        RatFun c = res.rem.lead() * lp_inv;
        res.rem -= c * shifted[k];
        q[k] = c;
    }
    res.quo = DiffOp(std::move(q));
    return res;
}

inline DiffOp rem(const DiffOp& l, const DiffOp& p) { return rdivide(l, p).rem; }
inline DiffOp quo(const DiffOp& l, const DiffOp& p) { return rdivide(l, p).quo; }

inline DiffOp monic(const DiffOp& l) {
    if (l.is_zero()) throw ZeroOperator("monic of the zero operator");
    if (l.lead().is_one()) return l;
    return l.lead().inverse() * l;
}

/// Monic greatest common right divisor; gcrd(0, 0) = 0.
inline DiffOp gcrd(DiffOp a, DiffOp b) {
    if (a.is_zero() && b.is_zero()) return {};
    if (a.order() < b.order()) std::swap(a, b);
    while (!b.is_zero()) {
        DiffOp r = rem(a, b);
        a = std::move(b);
        b = r.is_zero() ? r : monic(r);
    }
    return monic(a);
}

inline bool right_divides(const DiffOp& p, const DiffOp& l) { return rem(l, p).is_zero(); }

}  // namespace ore
}  // namespace diffirr
