#pragma once

// Irreducibility of operators of order <= 3: a proper factor of such an
// operator has order 1 or n - 1, and order n - 1 right factors of L
// correspond to first-order right factors of the adjoint.

#include <optional>
#include <string>
#include <vector>

#include "diffirr/riccati.hpp"

namespace diffirr {

enum class IrredStatus { Irreducible, Reducible, Inconclusive };

inline const char* to_string(IrredStatus s) {
    switch (s) {
        case IrredStatus::Irreducible: return "Irreducible";
        case IrredStatus::Reducible: return "Reducible";
        default: return "Inconclusive";
    }
}

/// L = quotient * factor, verified.
struct Witness {
    DiffOp factor;
    DiffOp quotient;
};

struct IrredVerdict {
    IrredStatus status = IrredStatus::Inconclusive;
    std::optional<Witness> witness;
    std::vector<DiffOp> factors;            // every verified right factor found
    std::vector<Certificate> certificates;  // first-order factors D - a of L
    std::vector<std::string> diagnostics;
};

struct FactorSearch {
    std::vector<DiffOp> factors;
    std::vector<Certificate> certificates;
    bool complete = true;
    std::vector<std::string> reasons;
};

namespace irred {

/// sum_i (-1)^i D^i o b_i.
inline DiffOp adjoint(const DiffOp& l) {
    DiffOp acc;
    for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
        const RatFun& b = l.coeffs()[i];
        if (b.is_zero()) continue;
        DiffOp t(b);
        for (std::size_t k = 0; k < i; ++k) t = ore::d_times(t);
        if (i % 2) acc -= t;
        else acc += t;
    }
    return acc;
}

inline bool verify_factorization(const DiffOp& l, const DiffOp& q, const DiffOp& p) { return ore::mul(q, p) == l; }

/// Monic right factors of order s in {1, ord L - 1}, each verified.
inline FactorSearch right_factor(const DiffOp& l, int s) {
    const int n = l.order();
    FactorSearch out;
    const Field f = l.field();
    const RatFun one(Scalar(1).with_field(f));
    auto add = [&](const DiffOp& p) {
        for (const auto& g : out.factors)
            if (g == p) return;
        if (ore::right_divides(p, l)) out.factors.push_back(p);
    };
    if (s == 1) {
        auto rep = riccati::expsols(l);
        out.complete = rep.complete;
        out.reasons = rep.reasons;
        for (const auto& c : rep.certificates) {
            DiffOp p(std::vector<RatFun>{-c.a, one});
            const std::size_t before = out.factors.size();
            add(p);
            if (out.factors.size() > before) out.certificates.push_back(c);
        }
        return out;
    }
    if (s == n - 1 && s >= 1) {
        const DiffOp adj = adjoint(l);
        auto rep = riccati::expsols(adj);
        out.complete = rep.complete;
        for (const auto& r : rep.reasons) out.reasons.push_back("adjoint: " + r);
        for (const auto& c : rep.certificates) {
            DiffOp p(std::vector<RatFun>{-c.a, one});
            auto div = ore::rdivide(adj, p);
            if (!div.rem.is_zero()) continue;
            add(ore::monic(adjoint(div.quo)));
        }
        return out;
    }
    throw UnsupportedOrderGap("right factors are searched only for orders 1 and ord L - 1");
}

inline IrredVerdict irreducible(const DiffOp& l) {
    const int n = l.order();
    if (n < 1) throw PreconditionError("irreducibility needs order >= 1");
    if (n >= 4) throw UnsupportedOrder("irreducibility is decided only for order <= 3");
    IrredVerdict v;
    if (n == 1) {
        v.status = IrredStatus::Irreducible;
        return v;
    }
    bool complete = true;
    std::vector<int> orders{1};
    if (n == 3) orders.push_back(2);
    for (int s : orders) {
        auto fs = right_factor(l, s);
        complete = complete && fs.complete;
        for (auto& r : fs.reasons) v.diagnostics.push_back(std::move(r));
        for (auto& p : fs.factors) v.factors.push_back(std::move(p));
        for (auto& c : fs.certificates) v.certificates.push_back(std::move(c));
    }
    if (!v.factors.empty()) {
        const DiffOp& p = v.factors.front();
        DiffOp q = ore::quo(l, p);
        if (!verify_factorization(l, q, p)) throw Error("internal: factorization witness failed verification");
        v.witness = Witness{p, q};
        v.status = IrredStatus::Reducible;
    } else {
        v.status = complete ? IrredStatus::Irreducible : IrredStatus::Inconclusive;
    }
    return v;
}

}  // namespace irred
}  // namespace diffirr
