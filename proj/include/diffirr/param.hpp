#pragma once

// Operators with parameters: specialization at points, generic right
// division by a factor with indeterminate coefficients, and the resulting
// polynomial system W whose common zeros encode order-s right factors.

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "diffirr/bounds.hpp"
#include "diffirr/opexpr.hpp"

namespace diffirr {

/// Values for every parameter of a field, in declaration order.
struct SpecPoint {
    std::vector<Num> values;
};

namespace param {

/// The same constant field without parameters.
inline Field specialized_field(const Field& f, std::vector<std::string> keep = {}) {
    if (!f) return make_field("", {}, std::move(keep));
    return make_field(f->generator, f->minpoly, std::move(keep));
}

/// Builds a point from name/value pairs; every parameter must be assigned
/// and every value must be free of parameters.
inline SpecPoint make_point(const Field& f, const std::map<std::string, Scalar>& assignment) {
    SpecPoint pt;
    const std::size_t np = f ? f->params.size() : 0;
    for (const auto& [name, v] : assignment)
        if (!f || f->param_index(name) < 0) throw PreconditionError("'" + name + "' is not a parameter");
    for (std::size_t i = 0; i < np; ++i) {
        auto it = assignment.find(f->params[i]);
        if (it == assignment.end()) throw PreconditionError("parameter '" + f->params[i] + "' is not assigned");
        if (!it->second.is_constant()) throw PreconditionError("point values must be free of parameters");
        pt.values.push_back(it->second.constant_value());
    }
    return pt;
}

namespace detail {

inline MPoly mpoly_lcm(const MPoly& a, const MPoly& b, const QPoly& m) {
    MPoly g = mpoly::gcd(a, b, m);
    return mpoly::mul(*mpoly::divide_exact(a, g, m), b, m);
}

/// num/den rewritten with coefficients in the parameter polynomial ring and
/// no common parameter content.
inline std::pair<std::vector<MPoly>, std::vector<MPoly>> ring_form(const RatFun& r) {
    const QPoly& m = Scalar::minpoly(r.field());
    MPoly l(Num(1));
    for (const auto* p : {&r.num(), &r.den()})
        for (const auto& c : p->coeffs())
            if (!c.den().is_one()) l = mpoly_lcm(l, c.den(), m);
    auto lift = [&](const UniPoly& p) {
        std::vector<MPoly> out;
        for (const auto& c : p.coeffs())
            out.push_back(mpoly::mul(c.num(), *mpoly::divide_exact(l, c.den(), m), m));
        return out;
    };
    auto n = lift(r.num()), d = lift(r.den());
    MPoly g;
    for (const auto* v : {&n, &d})
        for (const auto& c : *v)
            if (!c.is_zero()) g = g.is_zero() ? c : mpoly::gcd(g, c, m);
    if (!g.is_constant())
        for (auto* v : {&n, &d})
            for (auto& c : *v)
                if (!c.is_zero()) c = *mpoly::divide_exact(c, g, m);
    return {n, d};
}

inline UniPoly eval_coeffs(const std::vector<MPoly>& cs, const SpecPoint& c, const Field& target, const QPoly& m) {
    std::vector<Scalar> out;
    for (const auto& p : cs) out.push_back(Scalar(target, mpoly::evaluate(p, c.values, m)));
    return UniPoly(std::move(out));
}

}  // namespace detail

inline std::string coefficient_name(std::size_t i) { return i == 0 ? "1" : "D^" + std::to_string(i); }

/// Coefficient-wise evaluation at a point. Raises NotWellDefined when a
/// denominator or the leading coefficient vanishes.
inline DiffOp specialize(const DiffOp& l, const SpecPoint& c) {
    const Field f = l.field();
    const std::size_t np = f ? f->params.size() : 0;
    if (c.values.size() != np) throw PreconditionError("specialization point must assign every parameter");
    const Field target = specialized_field(f);
    const QPoly& m = Scalar::minpoly(f);
    std::vector<RatFun> out;
    for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
        const RatFun& b = l.coeffs()[i];
        if (b.is_zero()) {
            out.emplace_back();
            continue;
        }
        auto [n, d] = detail::ring_form(b);
        UniPoly dc = detail::eval_coeffs(d, c, target, m);
        if (dc.is_zero())
            throw NotWellDefined("denominator of the coefficient of " + coefficient_name(i) + " (" +
                                 print_poly(b.den()) + ") vanishes");
        UniPoly nc = detail::eval_coeffs(n, c, target, m);
        if (i + 1 == l.coeffs().size() && nc.is_zero())
            throw NotWellDefined("leading coefficient (" + print_ratfun(b) + ") vanishes");
        out.emplace_back(std::move(nc), std::move(dc));
    }
    return DiffOp(std::move(out));
}

// ---------------------------------------------------------------------------
// Generic division

/// sum_i num[i] / q^m D^i, numerators polynomial in (parameters, T, x).
struct QForm {
    std::vector<UniPoly> num;
    unsigned m = 0;

    int order() const {
        for (std::size_t i = num.size(); i-- > 0;)
            if (!num[i].is_zero()) return static_cast<int>(i);
        return -1;
    }
};

struct GenericFactorSystem {
    int s = 0;
    int nu = 0;
    Field base;                    // field of L
    Field ext;                     // parameters of L followed by the T grid
    std::vector<std::string> t_names;
    UniPoly q;                     // sum_j t_{s,j} x^j
    std::vector<UniPoly> p;        // p_i = sum_j t_{i,j} x^j, i < s
    UniPoly a;                     // clearing factor, a L polynomial
    QForm quo;                     // exponent m1
    QForm rem;                     // exponent m2
    std::vector<Scalar> w;         // x-coefficients of the remainder numerators
    std::string policy;
};

inline std::string t_name(int i, int j) { return "t_" + std::to_string(i) + "_" + std::to_string(j); }

namespace detail {

inline UniPoly lift(const UniPoly& p, const Field& f) {
    std::vector<Scalar> cs;
    for (const auto& c : p.coeffs()) cs.push_back(c.with_field(f));
    return UniPoly(std::move(cs));
}

inline UniPoly qpow(const UniPoly& q, unsigned e, std::vector<UniPoly>& cache) {
    while (cache.size() <= e) cache.push_back(cache.empty() ? UniPoly(Scalar(1).with_field(q.field())) : cache.back() * q);
    return cache[e];
}

/// D o (sum r_i / q^m D^i) in the same representation, exponent m + 1.
inline QForm d_step(const QForm& f, const UniPoly& q, const UniPoly& dq) {
    QForm r;
    r.m = f.m + 1;
    r.num.resize(f.num.size() + 1);
    const Scalar mm(static_cast<long>(f.m));
    for (std::size_t i = 0; i < f.num.size(); ++i) {
        const UniPoly& ri = f.num[i];
        if (ri.is_zero()) continue;
        r.num[i] += ri.derivative() * q;
        if (f.m != 0) r.num[i] -= mm * (ri * dq);
        r.num[i + 1] += ri * q;
    }
    return r;
}

struct DivisionResult {
    QForm quo;
    QForm rem;
};

/// The recursion: with k = ord L~ >= s, L' = q^(k-s+1) L~ - l_k D^(k-s) P
/// has lower order; recurse and assemble the quotient.
inline DivisionResult divide(QForm l, const QForm& pform, const UniPoly& q, int s, std::vector<UniPoly>& qcache) {
    const int k = l.order();
    if (k < s) {
        l.num.resize(static_cast<std::size_t>(s));
        return {QForm{}, std::move(l)};
    }
    const UniPoly dq = q.derivative();
    QForm e = pform;
    for (int j = 0; j < k - s; ++j) e = d_step(e, q, dq);
    const unsigned step = static_cast<unsigned>(k - s + 1);
    const UniPoly lk = l.num[static_cast<std::size_t>(k)];
    const UniPoly qs = qpow(q, step, qcache);
    QForm next;
    next.m = l.m + step;
    next.num.resize(static_cast<std::size_t>(k) + 1);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(k); ++i) {
        UniPoly v = l.num[i].is_zero() ? UniPoly() : l.num[i] * qs;
        if (i < e.num.size() && !e.num[i].is_zero()) v -= lk * e.num[i];
        next.num[i] = std::move(v);
    }
    if (!next.num[static_cast<std::size_t>(k)].is_zero()) throw Error("generic division: leading term did not cancel");
    DivisionResult sub = divide(std::move(next), pform, q, s, qcache);
    DivisionResult res;
    res.rem = std::move(sub.rem);
    const unsigned mq = std::max(l.m, sub.quo.m);
    res.quo.m = mq;
    res.quo.num.resize(std::max<std::size_t>(static_cast<std::size_t>(k - s) + 1, sub.quo.num.size()));
    res.quo.num[static_cast<std::size_t>(k - s)] = lk * qpow(q, mq - l.m, qcache);
    for (std::size_t i = 0; i < sub.quo.num.size(); ++i)
        if (!sub.quo.num[i].is_zero()) res.quo.num[i] += sub.quo.num[i] * qpow(q, mq - sub.quo.m, qcache);
    return res;
}

/// Clearing factor a in the parameter polynomial ring [x] with a L polynomial.
inline UniPoly clearing_factor(const DiffOp& l) {
    const Field f = l.field();
    const QPoly& m = Scalar::minpoly(f);
    UniPoly a(Scalar(1).with_field(f));
    for (const auto& c : l.coeffs())
        if (!c.is_zero() && c.den().degree() > 0) a = unipoly::lcm(a, c.den());
    auto scalar_den_lcm = [&](const std::vector<UniPoly>& ps) {
        MPoly d(Num(1));
        for (const auto& p : ps)
            for (const auto& s : p.coeffs())
                if (!s.den().is_one()) d = mpoly_lcm(d, s.den(), m);
        return d;
    };
    // Polynomial in the parameters, then primitive over them.
    MPoly d = scalar_den_lcm({a});
    if (!d.is_one()) a = Scalar(f, d) * a;
    MPoly g;
    for (const auto& s : a.coeffs()) g = g.is_zero() ? s.num() : mpoly::gcd(g, s.num(), m);
    if (!g.is_constant() || !g.is_one()) a = Scalar(f, MPoly(Num(1)), g) * a;
    for (;;) {
        std::vector<UniPoly> prod;
        for (const auto& c : l.coeffs())
            prod.push_back(c.is_zero() ? UniPoly() : unipoly::quo(a * c.num(), c.den()));
        MPoly extra = scalar_den_lcm(prod);
        if (extra.is_one()) break;
        a = Scalar(f, extra) * a;
    }
    return a;
}

inline std::vector<UniPoly> times_clearing(const DiffOp& l, const UniPoly& a) {
    std::vector<UniPoly> out;
    for (const auto& c : l.coeffs()) out.push_back(c.is_zero() ? UniPoly() : unipoly::quo(a * c.num(), c.den()));
    return out;
}

/// Grid polynomials q and p_i in a field whose variables t_{i,j} start at `offset`.
inline std::pair<UniPoly, std::vector<UniPoly>> grid(const Field& ext, std::size_t offset, int s, int nu) {
    auto poly = [&](int i) {
        std::vector<Scalar> cs;
        for (int j = 0; j <= nu; ++j)
            cs.push_back(Scalar::param(ext, offset + static_cast<std::size_t>(j) * static_cast<std::size_t>(s + 1) +
                                                static_cast<std::size_t>(i)));
        return UniPoly(std::move(cs));
    };
    std::vector<UniPoly> ps;
    for (int i = 0; i < s; ++i) ps.push_back(poly(i));
    return {poly(s), ps};
}

inline QForm p_form(const UniPoly& q, const std::vector<UniPoly>& ps) {
    QForm f;
    f.m = 1;
    f.num = ps;
    f.num.push_back(q);
    return f;
}

inline std::vector<Scalar> collect_w(const QForm& rem) {
    std::vector<Scalar> w;
    for (const auto& r : rem.num)
        for (const auto& c : r.coeffs())
            if (!c.is_zero() && std::find(w.begin(), w.end(), c) == w.end()) w.push_back(c);
    return w;
}

}  // namespace detail

/// Default coefficient degree n^4 b_sound(L), capped.
inline int default_nu(const DiffOp& l, int cap, const CyclicPolicy& policy = {}) {
    auto rep = bounds::b_of(l, BoundMode::Sound, policy);
    const long n = l.order();
    long nu = n * n * n * n * rep.b_value;
    return static_cast<int>(std::min<long>(nu, cap));
}

/// Right division of a L by P = D^s + sum_{i<s} p_i/q D^i with indeterminate
/// coefficients, following the order-reduction recursion. nu = -1 selects
/// the default degree, capped at nu_cap.
inline GenericFactorSystem generic_division(const DiffOp& l, int s, int nu, int nu_cap = 12,
                                            const CyclicPolicy& policy = {}) {
    const int n = l.order();
    if (s < 1 || s >= n) throw BadOrder("generic division needs 1 <= s < ord L");
    if (nu < -1) throw BadOrder("nu must be >= 0, or -1 for the default");
    GenericFactorSystem sys;
    sys.s = s;
    sys.nu = nu < 0 ? default_nu(l, nu_cap, policy) : nu;
    sys.policy = policy.fingerprint();
    sys.base = l.field();
    std::vector<std::string> names = sys.base ? sys.base->params : std::vector<std::string>{};
    const std::size_t offset = names.size();
    for (int j = 0; j <= sys.nu; ++j)
        for (int i = 0; i <= s; ++i) sys.t_names.push_back(t_name(i, j));
    for (const auto& t : sys.t_names) names.push_back(t);
    sys.ext = sys.base ? make_field(sys.base->generator, sys.base->minpoly, names) : make_field("", {}, names);
    std::tie(sys.q, sys.p) = detail::grid(sys.ext, offset, s, sys.nu);
    sys.a = detail::clearing_factor(l);
    QForm lt;
    for (const auto& c : detail::times_clearing(l, sys.a)) lt.num.push_back(detail::lift(c, sys.ext));
    std::vector<UniPoly> cache;
    auto res = detail::divide(std::move(lt), detail::p_form(sys.q, sys.p), sys.q, s, cache);
    sys.quo = std::move(res.quo);
    sys.rem = std::move(res.rem);
    sys.w = detail::collect_w(sys.rem);
    return sys;
}

/// QForm as an operator over the extended field.
inline DiffOp to_diffop(const QForm& f, const UniPoly& q) {
    const UniPoly qm = q.pow(f.m);
    std::vector<RatFun> cs;
    for (const auto& r : f.num) cs.push_back(r.is_zero() ? RatFun() : RatFun(r, qm));
    return DiffOp(std::move(cs));
}

/// The factor P over the extended field.
inline DiffOp factor_op(const GenericFactorSystem& sys) {
    return to_diffop(detail::p_form(sys.q, sys.p), sys.q);
}

namespace detail {

/// Substitutes the parameters of a T-grid polynomial, keeping T.
inline UniPoly specialize_grid_poly(const UniPoly& p, const SpecPoint& c, std::size_t np, const Field& target) {
    const QPoly& m = Scalar::minpoly(target);
    std::vector<std::optional<Num>> vals(np);
    for (std::size_t i = 0; i < np; ++i) vals[i] = c.values[i];
    std::vector<std::size_t> idx;
    for (std::size_t v = 0; v < np; ++v) idx.push_back(0);
    std::vector<Scalar> out;
    for (const auto& s : p.coeffs()) {
        std::size_t nv = np + target->params.size();
        idx.resize(nv);
        for (std::size_t v = np; v < nv; ++v) idx[v] = v - np;
        if (!s.den().is_one()) throw Error("grid polynomial with a parameter denominator");
        out.push_back(Scalar(target, mpoly::substitute(s.num(), vals, idx, m)));
    }
    return UniPoly(std::move(out));
}

inline bool same_quotient_form(const QForm& x, const QForm& y, const UniPoly& q, std::size_t len) {
    const UniPoly qx = q.pow(y.m), qy = q.pow(x.m);
    for (std::size_t i = 0; i < len; ++i) {
        UniPoly a = i < x.num.size() ? x.num[i] : UniPoly();
        UniPoly b = i < y.num.size() ? y.num[i] : UniPoly();
        if (a * qx != b * qy) return false;
    }
    return true;
}

}  // namespace detail

/// Specializing the generic quotient and remainder at c agrees with the
/// generic division of a^c L^c by the same indeterminate factor.
inline bool spec_commute_check(const DiffOp& l, const GenericFactorSystem& sys, const SpecPoint& c) {
    const DiffOp lc = specialize(l, c);
    const std::size_t np = sys.base ? sys.base->params.size() : 0;
    const Field target = specialized_field(sys.base, sys.t_names);
    const Field plain = specialized_field(sys.base);
    const QPoly& m = Scalar::minpoly(sys.base);
    std::vector<Scalar> ac_cs;
    for (const auto& s : sys.a.coeffs()) {
        auto [n, d] = std::pair{s.num(), s.den()};
        Num dv = np ? mpoly::evaluate(d, c.values, m) : d.constant_value();
        if (dv.is_zero()) throw NotWellDefined("clearing factor is not defined at the point");
        Num nv = np ? mpoly::evaluate(n, c.values, m) : n.constant_value();
        ac_cs.push_back(Scalar(plain, nf::div(nv, dv, m)));
    }
    UniPoly ac(std::move(ac_cs));
    if (ac.is_zero()) throw PreconditionError("clearing factor vanishes at the point");
    auto [q, ps] = detail::grid(target, 0, sys.s, sys.nu);
    QForm lt;
    for (const auto& b : lc.coeffs()) {
        RatFun v = RatFun(ac) * b;
        if (!v.is_polynomial()) throw Error("specialized clearing factor does not clear the operator");
        lt.num.push_back(detail::lift(v.num(), target));
    }
    std::vector<UniPoly> cache;
    auto direct = detail::divide(std::move(lt), detail::p_form(q, ps), q, sys.s, cache);
    auto spec = [&](const QForm& f) {
        QForm r;
        r.m = f.m;
        for (const auto& p : f.num) r.num.push_back(detail::specialize_grid_poly(p, c, np, target));
        return r;
    };
    const QForm sq = spec(sys.quo), sr = spec(sys.rem);
    const std::size_t qlen = std::max(sq.num.size(), direct.quo.num.size());
    return detail::same_quotient_form(sq, direct.quo, q, qlen) &&
           detail::same_quotient_form(sr, direct.rem, q, static_cast<std::size_t>(sys.s));
}

/// Evaluates W at a factor D^s + sum c_i D^i of the specialization at `c`,
/// with the grid set from q = lcm of the denominators. Needs deg q <= nu.
inline std::vector<Scalar> evaluate_w_at_factor(const GenericFactorSystem& sys, const SpecPoint& c, const DiffOp& factor) {
    if (factor.order() != sys.s) throw BadOrder("factor order differs from the system's s");
    DiffOp f = ore::monic(factor);
    UniPoly q(Scalar(1).with_field(f.field()));
    for (int i = 0; i < sys.s; ++i)
        if (!f.coeff(static_cast<std::size_t>(i)).is_zero()) q = unipoly::lcm(q, f.coeff(static_cast<std::size_t>(i)).den());
    if (q.degree() > sys.nu) throw PreconditionError("factor denominators exceed the grid degree");
    const QPoly& m = Scalar::minpoly(sys.base);
    std::vector<Num> vals = c.values;
    vals.resize(vals.size() + sys.t_names.size());
    const std::size_t np = c.values.size();
    for (int i = 0; i <= sys.s; ++i) {
        UniPoly pi = i == sys.s ? q : unipoly::quo(f.coeff(static_cast<std::size_t>(i)).num() * q, f.coeff(static_cast<std::size_t>(i)).den());
        for (int j = 0; j <= sys.nu; ++j) {
            Scalar cj = pi.coeff(static_cast<std::size_t>(j));
            if (!cj.is_constant()) throw PreconditionError("factor coefficients must be free of parameters");
            vals[np + static_cast<std::size_t>(j) * static_cast<std::size_t>(sys.s + 1) + static_cast<std::size_t>(i)] =
                cj.constant_value();
        }
    }
    std::vector<Scalar> out;
    for (const auto& w : sys.w) out.push_back(Scalar(specialized_field(sys.base), mpoly::evaluate(w.num(), vals, m)));
    return out;
}

// ---------------------------------------------------------------------------
// Export

inline nlohmann::json to_json(const GenericFactorSystem& sys) {
    nlohmann::json j;
    j["s"] = sys.s;
    j["nu"] = sys.nu;
    j["indeterminates"] = sys.t_names;
    j["params"] = sys.base ? sys.base->params : std::vector<std::string>{};
    nlohmann::json fld = nlohmann::json::object();
    if (sys.base && sys.base->has_generator()) {
        fld["generator"] = sys.base->generator;
        Field g = make_field("", {}, {sys.base->generator});
        std::vector<MTerm> ts;
        for (std::size_t e = 0; e < sys.base->minpoly.size(); ++e)
            if (sgn(sys.base->minpoly[e]) != 0) ts.push_back({e ? Mono{static_cast<std::uint32_t>(e)} : Mono{}, Num(sys.base->minpoly[e])});
        fld["minpoly"] = print_mpoly(MPoly::from_terms(std::move(ts)), g);
    }
    j["field"] = fld;
    j["clearing_factor"] = print_poly(sys.a);
    j["q_exponent"] = sys.rem.m;
    nlohmann::json w = nlohmann::json::array();
    for (const auto& p : sys.w) w.push_back({{"poly", print_scalar(p)}});
    j["W"] = w;
    nlohmann::json side = nlohmann::json::array();
    for (int jj = 0; jj <= sys.nu; ++jj) side.push_back({{"nonzero", t_name(sys.s, jj)}});
    j["side_conditions"] = side;
    j["policy"] = sys.policy;
    return j;
}

inline void export_system(const GenericFactorSystem& sys, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << to_json(sys).dump(2) << "\n";
    if (!out) throw IoError("write to '" + path + "' failed");
}

/// W polynomials of an exported system, parsed in the field it describes.
struct ImportedSystem {
    Field ext;
    std::vector<Scalar> w;
};

inline ImportedSystem import_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed system file: ") + e.what());
    }
    std::vector<std::string> names = j.at("params").get<std::vector<std::string>>();
    for (const auto& t : j.at("indeterminates")) names.push_back(t.get<std::string>());
    ImportedSystem sys;
    const auto& fld = j.at("field");
    if (fld.contains("generator")) {
        std::string g = fld.at("generator").get<std::string>();
        sys.ext = make_field(g, parse_minpoly(fld.at("minpoly").get<std::string>(), g), names);
    } else {
        sys.ext = make_field("", {}, names);
    }
    for (const auto& w : j.at("W")) sys.w.push_back(parse_scalar(w.at("poly").get<std::string>(), sys.ext));
    return sys;
}

}  // namespace param
}  // namespace diffirr
