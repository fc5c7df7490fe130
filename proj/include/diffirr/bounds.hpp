#pragma once

// Degree invariants of an operator: d(L), exponential bounds, the exterior
// quantity b(L) and the right-factor degree bound n^3 b(L).

#include <string>
#include <vector>

#include "diffirr/exterior.hpp"
#include "diffirr/riccati.hpp"

namespace diffirr {

enum class BoundMode { Empirical, Sound };

inline const char* to_string(BoundMode m) { return m == BoundMode::Sound ? "sound" : "empirical"; }

struct WedgeRow {
    int s = 0;
    std::uint64_t binom = 0;
    int deg_t = 0;
    long exp_bound = 0;
    long term = 0;
    DiffOp scalar_op;
};

struct BoundReport {
    std::vector<WedgeRow> rows;
    long b_value = 0;
    long factor_bound = 0;  // n^3 * b_value
    int order = 0;
    BoundMode mode = BoundMode::Sound;
    std::string policy;
};

namespace bounds {

/// max over i < n of rat_degree(b_i / b_n).
inline int op_degree(const DiffOp& l) {
    if (l.is_zero()) throw ZeroOperator("degree of the zero operator");
    int d = 0;
    const RatFun inv = l.lead().inverse();
    for (std::size_t i = 0; i + 1 < l.coeffs().size(); ++i) d = std::max(d, rat_degree(l.coeffs()[i] * inv));
    return d;
}

/// Empirical: max certificate degree over a complete search (0 when there are
/// none). Sound: S + D + B from the search structure, never below any
/// certificate actually found.
inline long exponential_bound(const ExpSolsReport& rep, BoundMode mode) {
    long found = 0;
    for (const auto& c : rep.certificates) found = std::max<long>(found, rat_degree(c.a));
    if (mode == BoundMode::Empirical) {
        if (!rep.complete) throw IncompleteSearch("empirical exponential bound needs a complete search");
        return found;
    }
    long structural = static_cast<long>(rep.singular_degree) + rep.poly_part_degree + std::max(0, rep.polysol_degree);
    return std::max(found, structural);
}

inline long exponential_bound(const DiffOp& l, BoundMode mode) {
    return exponential_bound(riccati::expsols(l), mode);
}

inline BoundReport b_of(const DiffOp& l, BoundMode mode, const CyclicPolicy& policy = {}) {
    if (l.order() < 1) throw OrderZero("b(L) needs order >= 1");
    BoundReport rep;
    rep.mode = mode;
    rep.order = l.order();
    rep.policy = policy.fingerprint();
    const std::size_t n = static_cast<std::size_t>(l.order());
    const MatrixRF a = exterior::companion(l);
    for (std::size_t s = 1; s <= n; ++s) {
        auto red = exterior::cyclic_to_scalar(exterior::wedge_system(a, static_cast<int>(s)), policy);
        WedgeRow row;
        row.s = static_cast<int>(s);
        row.binom = exterior::binomial(n, s);
        row.deg_t = std::max(0, exterior::matrix_degree(red.transform));
        row.exp_bound = exponential_bound(red.scalar_op, mode);
        const long c = static_cast<long>(row.binom);
        row.term = 2 * c * row.deg_t + c * (c - 1) * row.exp_bound;
        row.scalar_op = red.scalar_op;
        rep.b_value = std::max(rep.b_value, row.term);
        rep.rows.push_back(std::move(row));
    }
    const long n3 = static_cast<long>(n * n * n);
    rep.factor_bound = n3 * rep.b_value;
    return rep;
}

/// d(monic P) <= factor bound, for a proper right divisor P of L.
inline bool check_factor_bound(const DiffOp& l, const DiffOp& p, const BoundReport& report) {
    if (p.is_zero()) throw ZeroOperator("factor is the zero operator");
    if (p.order() >= l.order()) throw PreconditionError("factor must have lower order than the operator");
    if (!ore::right_divides(p, l)) throw NotADivisor("P does not right-divide L");
    return op_degree(ore::monic(p)) <= report.factor_bound;
}

}  // namespace bounds
}  // namespace diffirr
