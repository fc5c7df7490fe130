#pragma once

// Univariate polynomials in x over the scalar field, ascending coefficients.

#include <utility>
#include <vector>

#include "diffirr/algebra/scalar.hpp"

namespace diffirr {

class UniPoly {
public:
    UniPoly() = default;
    UniPoly(const Scalar& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    explicit UniPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly x(const Field& f = nullptr) { return UniPoly({Scalar().with_field(f), Scalar(1).with_field(f)}); }
    static UniPoly monomial(const Scalar& c, std::size_t k) {
        if (c.is_zero()) return {};
        std::vector<Scalar> v(k + 1, Scalar().with_field(c.field()));
        v[k] = c;
        return UniPoly(std::move(v));
    }

    const std::vector<Scalar>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    Scalar coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar().with_field(field()); }
    const Scalar& lead() const { return c_.back(); }
    Field field() const {
        for (const auto& s : c_)
            if (s.field()) return s.field();
        return nullptr;
    }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return c_ != o.c_; }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size() && i < b.c_.size()) r[i] = a.c_[i] + b.c_[i];
            else if (i < a.c_.size()) r[i] = a.c_[i];
            else r[i] = b.c_[i];
        }
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a) {
        std::vector<Scalar> r;
        r.reserve(a.c_.size());
        for (const auto& s : a.c_) r.push_back(-s);
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const Scalar& s, const UniPoly& a) {
        if (s.is_zero()) return {};
        std::vector<Scalar> r;
        r.reserve(a.c_.size());
        for (const auto& c : a.c_) r.push_back(s * c);
        return UniPoly(std::move(r));
    }
    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    UniPoly pow(unsigned e) const {
        UniPoly r(Scalar(1).with_field(field())), base = *this;
        while (e) {
            if (e & 1U) r *= base;
            e >>= 1U;
            if (e) base *= base;
        }
        return r;
    }

    /// Multiply by x^k.
    UniPoly shift_up(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<Scalar> r(k, Scalar().with_field(field()));
        r.insert(r.end(), c_.begin(), c_.end());
        return UniPoly(std::move(r));
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Scalar> r;
        r.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(Scalar(static_cast<long>(i)) * c_[i]);
        return UniPoly(std::move(r));
    }

    Scalar eval(const Scalar& x) const {
        Scalar acc = Scalar().with_field(field());
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// p(x + a), by repeated synthetic division.
    UniPoly taylor_shift(const Scalar& a) const {
        std::vector<Scalar> r = c_;
        const std::size_t n = r.size();
        if (a.is_zero() || n <= 1) return *this;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j-- > i;) r[j] += a * r[j + 1];
        return UniPoly(std::move(r));
    }

    UniPoly monic() const {
        if (is_zero() || lead().is_one()) return *this;
        return lead().inverse() * *this;
    }

    /// Lowest index with nonzero coefficient (valuation at 0); -1 for zero.
    int low_degree() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<int>(i);
        return -1;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Scalar> c_;
};

namespace unipoly {

inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly(), a};
    std::vector<Scalar> r = a.coeffs();
    std::vector<Scalar> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const Scalar lb_inv = b.lead().inverse();
    const auto& bc = b.coeffs();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        const Scalar& top = r[static_cast<std::size_t>(k) + bc.size() - 1];
        if (top.is_zero()) continue;
        Scalar c = top * lb_inv;
        for (std::size_t j = 0; j < bc.size(); ++j) r[static_cast<std::size_t>(k) + j] -= c * bc[j];
        q[static_cast<std::size_t>(k)] = c;
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

inline UniPoly quo(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
inline UniPoly rem(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

/// Monic gcd; gcd(0, 0) = 0.
inline UniPoly gcd(UniPoly a, UniPoly b) {
    if (a.degree() < b.degree()) std::swap(a, b);
    if (b.is_zero()) return a.monic();
    if (b.degree() == 0) return UniPoly(Scalar(1).with_field(a.field()));
    while (!b.is_zero()) {
        UniPoly r = rem(a, b);
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

inline UniPoly lcm(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return (quo(a, gcd(a, b)) * b).monic();
}

inline UniPoly squarefree_part(const UniPoly& a) {
    if (a.degree() <= 0) return a.monic();
    return quo(a, gcd(a, a.derivative())).monic();
}

/// Yun's algorithm: a = lc * prod_i f_i^i with f_i squarefree and coprime.
/// Entry i-1 holds f_i (monic; 1 when absent).
inline std::vector<UniPoly> squarefree_decomposition(const UniPoly& a) {
    std::vector<UniPoly> out;
    if (a.degree() <= 0) return out;
    UniPoly f = a.monic();
    UniPoly d = f.derivative();
    UniPoly g = gcd(f, d);
    UniPoly b = quo(f, g);
    UniPoly c = quo(d, g);
    UniPoly e = c - b.derivative();
    while (b.degree() > 0) {
        UniPoly h = gcd(b, e);
        out.push_back(h);
        b = quo(b, h);
        c = quo(e, h);
        e = c - b.derivative();
    }
    while (!out.empty() && out.back().is_one()) out.pop_back();
    return out;
}

}  // namespace unipoly
}  // namespace diffirr
