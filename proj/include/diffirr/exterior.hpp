#pragma once

// Companion systems, exterior powers of a system matrix, and reduction of a
// first-order system to a scalar operator by a cyclic covector.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "diffirr/algebra/linalg.hpp"
#include "diffirr/ore.hpp"

namespace diffirr {

using MatrixRF = Matrix<RatFun>;

struct ExteriorReduction {
    int s = 0;
    MatrixRF system;
    DiffOp scalar_op;             // monic, order = system size
    MatrixRF transform;           // rows r_0..r_{m-1}
    std::vector<RatFun> cyclic_row;
    std::string policy;           // fingerprint of the covector search
};

/// Deterministic covector search: unit rows first, then seeded random rows
/// with polynomial entries.
struct CyclicPolicy {
    std::uint32_t seed = 20231014;
    int random_tries = 25;
    int max_degree = 2;
    int coeff_bound = 2;

    std::string fingerprint() const {
        return "unit-rows+mt19937(seed=" + std::to_string(seed) + ",tries=" + std::to_string(random_tries) +
               ",deg<=" + std::to_string(max_degree) + ",coeffs in [-" + std::to_string(coeff_bound) + "," +
               std::to_string(coeff_bound) + "])";
    }
};

namespace exterior {

/// Rows e_1..e_{n-1} shifted, last row (-b_0/b_n, ..., -b_{n-1}/b_n).
inline MatrixRF companion(const DiffOp& l) {
    if (l.order() < 1) throw OrderZero("companion matrix needs order >= 1");
    const std::size_t n = static_cast<std::size_t>(l.order());
    MatrixRF a(n, n);
    const RatFun one(Scalar(1).with_field(l.field()));
    for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = one;
    const RatFun inv = l.lead().inverse();
    for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = -(l.coeff(j) * inv);
    return a;
}

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// All s-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t s) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(s);
    for (std::size_t i = 0; i < s; ++i) cur[i] = i;
    if (s > n) return out;
    for (;;) {
        out.push_back(cur);
        std::size_t i = s;
        while (i > 0 && cur[i - 1] == n - s + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < s; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

/// Matrix of the derivation extension of A to the s-th exterior power, in
/// the basis e_I with I ranging over s-subsets in lexicographic order.
inline MatrixRF wedge_system(const MatrixRF& a, int s) {
    if (a.rows() != a.cols()) throw BadDimension("wedge_system needs a square matrix");
    const std::size_t n = a.rows();
    if (s < 1 || static_cast<std::size_t>(s) > n) throw BadDimension("wedge order out of range");
    auto basis = subsets(n, static_cast<std::size_t>(s));
    const std::size_t dim = basis.size();
    MatrixRF w(dim, dim);
    auto index_of = [&](const std::vector<std::size_t>& I) {
        // Lexicographic rank of a sorted subset.
        std::size_t lo = 0, hi = dim;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (basis[mid] < I) lo = mid + 1;
            else hi = mid;
        }
        return lo;
    };
    for (std::size_t col = 0; col < dim; ++col) {
        const auto& I = basis[col];
        for (std::size_t k = 0; k < I.size(); ++k) {
            const std::size_t ik = I[k];
            for (std::size_t r = 0; r < n; ++r) {
                const RatFun& coef = a(r, ik);
                if (coef.is_zero()) continue;
                bool clash = false;
                for (std::size_t j = 0; j < I.size(); ++j)
                    if (j != k && I[j] == r) clash = true;
                if (clash) continue;
                // Replace slot k by r, then sort counting transpositions.
                std::vector<std::size_t> J = I;
                J[k] = r;
                std::size_t pos = k;
                int sign = 1;
                while (pos > 0 && J[pos - 1] > J[pos]) {
                    std::swap(J[pos - 1], J[pos]);
                    --pos;
                    sign = -sign;
                }
                while (pos + 1 < J.size() && J[pos] > J[pos + 1]) {
                    std::swap(J[pos], J[pos + 1]);
                    ++pos;
                    sign = -sign;
                }
                RatFun& dst = w(index_of(J), col);
                dst = sign > 0 ? dst + coef : dst - coef;
            }
        }
    }
    return w;
}

inline RatFun trace(const MatrixRF& a) {
    RatFun t;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
    return t;
}

/// max rat_degree over the entries; -1 for the zero matrix.
inline int matrix_degree(const MatrixRF& t) {
    int d = -1;
    for (const auto& e : t.data()) d = std::max(d, rat_degree(e));
    return d;
}

namespace detail {

inline std::vector<RatFun> row_step(const std::vector<RatFun>& r, const MatrixRF& m) {
    std::vector<RatFun> next = linalg::vec_mul(r, m);
    for (std::size_t j = 0; j < r.size(); ++j) next[j] += r[j].derivative();
    return next;
}

/// Attempts the reduction with covector w; nullopt when w is not cyclic.
inline std::optional<ExteriorReduction> try_covector(const MatrixRF& m, const std::vector<RatFun>& w) {
    const std::size_t n = m.rows();
    MatrixRF t(n, n);
    std::vector<RatFun> r = w;
    for (std::size_t k = 0; k < n; ++k) {
        t.set_row(k, r);
        r = row_step(r, m);
    }
    std::vector<RatFun> rhs(n);
    for (std::size_t j = 0; j < n; ++j) rhs[j] = -r[j];
    auto c = linalg::solve_left(t, rhs);
    if (!c) return std::nullopt;
    std::vector<RatFun> coeffs = *c;
    Field f;
    for (const auto& e : m.data())
        if (e.field()) f = e.field();
    coeffs.push_back(RatFun(Scalar(1).with_field(f)));
    ExteriorReduction red;
    red.system = m;
    red.scalar_op = DiffOp(std::move(coeffs));
    red.transform = std::move(t);
    red.cyclic_row = w;
    return red;
}

}  // namespace detail

/// Reduces dY = M Y to a monic scalar operator annihilating w.Y.
inline ExteriorReduction cyclic_to_scalar(const MatrixRF& m, const CyclicPolicy& policy = {}) {
    if (m.rows() != m.cols() || m.rows() == 0) throw BadDimension("cyclic_to_scalar needs a nonempty square matrix");
    const std::size_t n = m.rows();
    Field f;
    for (const auto& e : m.data())
        if (e.field()) f = e.field();
    const RatFun one(Scalar(1).with_field(f));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<RatFun> w(n);
        w[i] = one;
        if (auto red = detail::try_covector(m, w)) {
            red->policy = policy.fingerprint();
            return *red;
        }
    }
    std::mt19937 rng(policy.seed);
    std::uniform_int_distribution<int> coef(-policy.coeff_bound, policy.coeff_bound);
    for (int attempt = 0; attempt < policy.random_tries; ++attempt) {
        std::vector<RatFun> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Scalar> cs;
            for (int j = 0; j <= policy.max_degree; ++j) cs.push_back(Scalar(static_cast<long>(coef(rng))).with_field(f));
            w[i] = RatFun(UniPoly(std::move(cs)));
        }
        if (auto red = detail::try_covector(m, w)) {
            red->policy = policy.fingerprint();
            return *red;
        }
    }
    throw NoCyclicVectorFound("no cyclic covector found under policy " + policy.fingerprint());
}

/// cyclic_to_scalar(wedge_system(companion(L), s)).
inline ExteriorReduction reduce(const DiffOp& l, int s, const CyclicPolicy& policy = {}) {
    auto red = cyclic_to_scalar(wedge_system(companion(l), s), policy);
    red.s = s;
    return red;
}

}  // namespace exterior
}  // namespace diffirr
