#pragma once

// Text form of operators. Grammar (ASCII, whitespace ignored):
//   sum     := ['-'] product (('+'|'-') product)*
//   product := power (('*'|'/') power)*
//   power   := atom ('^' natural)?
//   atom    := 'D' | 'x' | name | natural | '(' sum ')'
// '*' is the noncommutative product; '/' divides by an order-0 expression.
// The printer emits text that parses back to the identical operator.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "diffirr/ore.hpp"

namespace diffirr {

namespace detail {

class OpParser {
public:
    OpParser(std::string_view text, const Field& field) : s_(text), field_(field) {}

    DiffOp parse() {
        DiffOp r = sum();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return r;
    }

private:
    static constexpr int kMaxDepth = 256;
    static constexpr unsigned long kMaxExponent = 4096;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        if (pos_ >= s_.size()) throw ParseError(what + " (unexpected end of input)", pos_);
        throw ParseError(what, pos_);
    }

    DiffOp sum() {
        if (++depth_ > kMaxDepth) fail("expression nested too deeply");
        skip_ws();
        bool negate = eat('-');
        DiffOp acc = product();
        if (negate) acc = -acc;
        for (;;) {
            if (eat('+')) acc += product();
            else if (eat('-')) acc -= product();
            else break;
        }
        --depth_;
        return acc;
    }

    DiffOp product() {
        DiffOp acc = power();
        for (;;) {
            skip_ws();
            std::size_t at = pos_;
            if (eat('*')) {
                acc = ore::mul(acc, power());
            } else if (eat('/')) {
                DiffOp d = power();
                if (d.order() > 0) throw ParseError("division by an operator of positive order", at);
                if (d.is_zero()) throw ParseError("division by zero", at);
                if (acc.order() > 0) throw ParseError("only order-0 expressions can be divided", at);
                acc = DiffOp(acc.coeff(0) / d.coeff(0));
            } else {
                break;
            }
        }
        return acc;
    }

    DiffOp power() {
        DiffOp base = atom();
        skip_ws();
        if (!eat('^')) return base;
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw NonIntegerExponent("exponent must be a nonnegative integer literal", at);
        std::string digits = read_digits();
        if (digits.size() > 6 || std::stoul(digits) > kMaxExponent) throw ParseError("exponent too large", at);
        unsigned long e = std::stoul(digits);
        DiffOp r(RatFun(Scalar(1).with_field(field_)));
        DiffOp b = base;
        while (e) {
            if (e & 1UL) r = ore::mul(r, b);
            e >>= 1U;
            if (e) b = ore::mul(b, b);
        }
        return r;
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    DiffOp atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected an operand");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            DiffOp r = sum();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer v(read_digits(), 10);  // base 0 would read a leading 0 as octal
            return DiffOp(RatFun(Scalar(Rational(v)).with_field(field_)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (name == "D") return DiffOp::D(field_);
            if (name == "x") return DiffOp(RatFun::x(field_));
            if (field_) {
                if (field_->has_generator() && name == field_->generator)
                    return DiffOp(RatFun(Scalar::generator(field_)));
                int idx = field_->param_index(name);
                if (idx >= 0) return DiffOp(RatFun(Scalar::param(field_, static_cast<std::size_t>(idx))));
            }
            throw UnknownSymbol("unknown symbol '" + name + "'", start);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    Field field_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

}  // namespace detail

inline DiffOp parse_op(std::string_view text, const Field& field = nullptr) {
    return detail::OpParser(text, field).parse();
}

inline RatFun parse_ratfun(std::string_view text, const Field& field = nullptr) {
    DiffOp op = parse_op(text, field);
    if (op.order() > 0) throw ParseError("expected a function of x, got an operator", 0);
    return op.coeff(0);
}

/// An element of the constant tower (free of x).
inline Scalar parse_scalar(std::string_view text, const Field& field = nullptr) {
    RatFun f = parse_ratfun(text, field);
    if (!f.is_constant()) throw ParseError("expected a constant, got a function of x", 0);
    return f.constant_value().with_field(field);
}

/// Minimal polynomial text in the generator's own name, e.g. "i^2 + 1".
inline QPoly parse_minpoly(std::string_view text, const std::string& generator) {
    Field tmp = make_field("", {}, {generator});
    Scalar s = parse_scalar(text, tmp);
    if (!s.is_polynomial()) throw ParseError("minimal polynomial must be a polynomial", 0);
    QPoly q;
    for (const auto& t : s.num().terms()) {
        std::size_t e = mono::exp(t.m, 0);
        if (q.size() <= e) q.resize(e + 1);
        q[e] = t.c.rational();
    }
    return q;
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

/// One summand: sign and unsigned text.
struct PTerm {
    bool neg = false;
    std::string text;
};

inline std::string join_sum(const std::vector<PTerm>& ts) {
    if (ts.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i == 0) out += ts[i].neg ? "-" : "";
        else out += ts[i].neg ? " - " : " + ";
        out += ts[i].text;
    }
    return out;
}

inline std::vector<PTerm> negate_all(std::vector<PTerm> ts) {
    for (auto& t : ts) t.neg = !t.neg;
    return ts;
}

/// A sum used as a coefficient: single terms stay bare, sums are
/// parenthesized with the sign of their first term pulled out.
inline PTerm as_factor(const std::vector<PTerm>& ts) {
    if (ts.size() == 1) return ts[0];
    if (!ts.empty() && ts[0].neg) return {true, "(" + join_sum(negate_all(ts)) + ")"};
    return {false, "(" + join_sum(ts) + ")"};
}

inline std::string times(const std::string& coef, const std::string& mono) {
    if (mono.empty()) return coef;
    if (coef == "1") return mono;
    return coef + "*" + mono;
}

inline std::string power_text(const std::string& name, std::size_t e) {
    return e == 1 ? name : name + "^" + std::to_string(e);
}

inline std::string rational_text(const Rational& q) {
    Rational a = abs(q);
    return a.get_str();
}

inline std::vector<PTerm> num_terms(const Num& n, const Field& f) {
    std::vector<PTerm> out;
    for (std::size_t j = n.c.size(); j-- > 0;) {
        const Rational& q = n.c[j];
        if (sgn(q) == 0) continue;
        std::string mono = j == 0 ? "" : power_text(f ? f->generator : std::string("theta"), j);
        out.push_back({sgn(q) < 0, times(rational_text(q), mono)});
    }
    return out;
}

inline std::string mono_text(const Mono& m, const Field& f) {
    std::string out;
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v] == 0) continue;
        if (!out.empty()) out += "*";
        std::string name = f && v < f->params.size() ? f->params[v] : "t" + std::to_string(v);
        out += power_text(name, m[v]);
    }
    return out;
}

inline std::vector<PTerm> mpoly_terms(const MPoly& p, const Field& f) {
    std::vector<PTerm> out;
    for (const auto& t : p.terms()) {
        PTerm c = as_factor(num_terms(t.c, f));
        out.push_back({c.neg, times(c.text, mono_text(t.m, f))});
    }
    return out;
}

inline bool needs_den_parens(const std::string& d) {
    return d.find_first_of("+-*/ ") != std::string::npos;
}

/// Fraction text n/d from numerator and denominator summands.
inline PTerm fraction(std::vector<PTerm> num, const std::vector<PTerm>& den) {
    bool neg = false;
    if (!num.empty() && num[0].neg) {
        neg = true;
        num = negate_all(std::move(num));
    }
    std::string n = num.size() == 1 ? num[0].text : "(" + join_sum(num) + ")";
    if (num.size() == 1 && n.find('/') != std::string::npos) n = "(" + n + ")";
    std::string d = join_sum(den);
    if (needs_den_parens(d)) d = "(" + d + ")";
    return {neg, n + "/" + d};
}

/// Scalar as summands; a fraction is a single summand.
inline std::vector<PTerm> scalar_terms(const Scalar& s) {
    if (s.is_polynomial()) return mpoly_terms(s.num(), s.field());
    return {fraction(mpoly_terms(s.num(), s.field()), mpoly_terms(s.den(), s.field()))};
}

inline PTerm scalar_factor(const Scalar& s) {
    if (s.is_polynomial()) return as_factor(scalar_terms(s));
    PTerm t = scalar_terms(s)[0];
    t.text = "(" + t.text + ")";
    return t;
}

inline std::vector<PTerm> unipoly_terms(const UniPoly& p) {
    std::vector<PTerm> out;
    const auto& c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k].is_zero()) continue;
        if (k == 0) {
            for (auto& t : scalar_terms(c[k])) out.push_back(t);
            continue;
        }
        PTerm f = scalar_factor(c[k]);
        out.push_back({f.neg, times(f.text, power_text("x", k))});
    }
    return out;
}

/// Numerator with a rational content p/q printed as p*(...) over q*den.
inline PTerm ratfun_fraction(const RatFun& r) {
    std::vector<PTerm> num = unipoly_terms(r.num());
    std::vector<PTerm> den = unipoly_terms(r.den());
    if (r.num().degree() >= 0 && num.size() == 1) {
        // Single-term numerator c*x^k with rational c = p/q: move q below.
        const UniPoly& n = r.num();
        const Scalar& c = n.lead();
        if (c.is_rational() && c.rational().get_den() != 1) {
            Rational q = c.rational();
            Integer p = q.get_num(), dq = q.get_den();
            std::string mono = n.degree() == 0 ? "" : power_text("x", static_cast<std::size_t>(n.degree()));
            Integer ap = abs(p);
            std::string ntext = times(ap.get_str(), mono);
            std::string d = join_sum(den);
            if (den.size() > 1) d = "(" + d + ")";
            std::string dtext = dq.get_str() + "*" + d;
            return {sgn(p) < 0, ntext + "/(" + dtext + ")"};
        }
    }
    return fraction(std::move(num), den);
}

inline std::vector<PTerm> ratfun_terms(const RatFun& r) {
    if (r.is_polynomial()) {
        const Scalar& d = r.den().coeff(0);
        if (d.is_one()) return unipoly_terms(r.num());
    }
    return {ratfun_fraction(r)};
}

}  // namespace detail

inline std::string print_num(const Num& n, const Field& f) { return detail::join_sum(detail::num_terms(n, f)); }
inline std::string print_mpoly(const MPoly& p, const Field& f) { return detail::join_sum(detail::mpoly_terms(p, f)); }
inline std::string print_scalar(const Scalar& s) { return detail::join_sum(detail::scalar_terms(s)); }
inline std::string print_poly(const UniPoly& p) { return detail::join_sum(detail::unipoly_terms(p)); }
inline std::string print_ratfun(const RatFun& r) { return detail::join_sum(detail::ratfun_terms(r)); }

/// Canonical descending form, e.g. "D^2 + (1/x)*D + ((x^2 - a^2)/x^2)".
inline std::string print_op(const DiffOp& l) {
    using namespace detail;
    std::vector<PTerm> out;
    const auto& c = l.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        const RatFun& b = c[k];
        if (b.is_zero()) continue;
        if (k == 0) {
            if (b.is_polynomial()) {
                for (auto& t : ratfun_terms(b)) out.push_back(t);
            } else {
                PTerm t = ratfun_fraction(b);
                out.push_back({t.neg, "(" + t.text + ")"});
            }
            continue;
        }
        std::string dk = power_text("D", k);
        if (b.is_polynomial()) {
            PTerm f = as_factor(ratfun_terms(b));
            out.push_back({f.neg, times(f.text, dk)});
        } else {
            PTerm f = ratfun_fraction(b);
            out.push_back({f.neg, "(" + f.text + ")*" + dk});
        }
    }
    return join_sum(out);
}

}  // namespace diffirr
