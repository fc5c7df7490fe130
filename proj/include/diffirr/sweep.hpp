#pragma once

// Specialization sweeps: one row per sample value of a single parameter,
// evaluated in parallel and merged in input order.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "diffirr/bounds.hpp"
#include "diffirr/irred.hpp"
#include "diffirr/param.hpp"

namespace diffirr {

struct SweepRow {
    std::string value;
    std::string status;  // reducible | irreducible | inconclusive | not-well-defined | unsupported | error
    std::vector<std::string> certificates;
    std::optional<int> factor_degree;
    std::optional<bool> bound_ok_parametric;
    std::optional<bool> bound_ok_specialized;
    std::optional<long> factor_bound_parametric;
    std::optional<long> factor_bound_specialized;
    std::string detail;
    std::vector<DiffOp> factors;  // verified right factors of the specialization
    double ms = 0;
};

/// Text of a right factor: D - (a) for first-order factors from certificates.
inline std::string factor_text(const DiffOp& p, const std::vector<Certificate>& certs) {
    if (p.order() == 1) {
        RatFun a = -p.coeff(0);
        for (const auto& c : certs)
            if (c.a == a) return "D - (" + riccati::print_certificate(c) + ")";
    }
    return print_op(p);
}

namespace sweep_detail {

inline SweepRow evaluate_point(const DiffOp& l, const std::string& param, const std::string& value,
                               const std::map<std::string, Scalar>& fixed, const std::optional<BoundReport>& parametric,
                               const std::string& parametric_error) {
    SweepRow row;
    row.value = value;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Field f = l.field();
        std::map<std::string, Scalar> assign = fixed;
        assign[param] = parse_scalar(value, param::specialized_field(f));
        const DiffOp lc = param::specialize(l, param::make_point(f, assign));
        const IrredVerdict v = irred::irreducible(lc);
        row.status = v.status == IrredStatus::Reducible     ? "reducible"
                     : v.status == IrredStatus::Irreducible ? "irreducible"
                                                            : "inconclusive";
        if (v.status == IrredStatus::Reducible) {
            row.factors = v.factors;
            for (const auto& p : v.factors) row.certificates.push_back(factor_text(p, v.certificates));
            const DiffOp& p = v.witness->factor;
            row.factor_degree = bounds::op_degree(ore::monic(p));
            if (parametric) {
                row.bound_ok_parametric = bounds::check_factor_bound(lc, p, *parametric);
                row.factor_bound_parametric = parametric->factor_bound;
            } else {
                row.detail = parametric_error;
            }
            try {
                auto spec = bounds::b_of(lc, BoundMode::Sound);
                row.bound_ok_specialized = bounds::check_factor_bound(lc, p, spec);
                row.factor_bound_specialized = spec.factor_bound;
            } catch (const Error& e) {
                row.detail = e.what();
            }
        } else {
            for (const auto& d : v.diagnostics) row.detail += (row.detail.empty() ? "" : "; ") + d;
        }
    } catch (const NotWellDefined& e) {
        row.status = "not-well-defined";
        row.detail = e.what();
    } catch (const Unsupported& e) {
        row.status = "unsupported";
        row.detail = e.what();
    } catch (const Error& e) {
        row.status = "error";
        row.detail = e.what();
    }
    row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

}  // namespace sweep_detail

/// Evaluates every value; `fixed` assigns the remaining parameters. Rows
/// come back in input order regardless of `jobs`.
inline std::vector<SweepRow> sweep(const DiffOp& l, const std::string& param, const std::vector<std::string>& values,
                                   unsigned jobs = 1, const std::map<std::string, Scalar>& fixed = {}) {
    const Field f = l.field();
    if (!f || f->param_index(param) < 0) throw PreconditionError("'" + param + "' is not a parameter of the operator");
    std::optional<BoundReport> parametric;
    std::string parametric_error;
    try {
        parametric = bounds::b_of(l, BoundMode::Sound);
    } catch (const Error& e) {
        parametric_error = std::string("parametric bound unavailable: ") + e.what();
    }
    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < values.size(); i = next++)
            rows[i] = sweep_detail::evaluate_point(l, param, values[i], fixed, parametric, parametric_error);
    };
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(values.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

namespace sweep_detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string opt_bool(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; }

}  // namespace sweep_detail

/// CSV with header value,status,certificates,factor_degree,bound_ok_parametric,bound_ok_specialized,ms.
/// With timing off the ms column is left empty so output is reproducible.
inline std::string sweep_csv(const std::vector<SweepRow>& rows, bool timing = true) {
    using namespace sweep_detail;
    std::ostringstream out;
    out << "value,status,certificates,factor_degree,bound_ok_parametric,bound_ok_specialized,ms\n";
    for (const auto& r : rows) {
        std::string certs;
        for (std::size_t i = 0; i < r.certificates.size(); ++i) certs += (i ? ";" : "") + r.certificates[i];
        char ms[32] = "";
        if (timing) std::snprintf(ms, sizeof ms, "%.3f", r.ms);
        out << csv_field(r.value) << ',' << r.status << ',' << csv_field(certs) << ','
            << (r.factor_degree ? std::to_string(*r.factor_degree) : "") << ',' << opt_bool(r.bound_ok_parametric)
            << ',' << opt_bool(r.bound_ok_specialized) << ',' << ms << '\n';
    }
    return out.str();
}

inline std::string sweep_summary(const std::vector<SweepRow>& rows) {
    std::size_t nred = 0;
    std::string list;
    for (const auto& r : rows)
        if (r.status == "reducible") {
            list += (nred++ ? ", " : "") + r.value;
        }
    return "reducible " + std::to_string(nred) + "/" + std::to_string(rows.size()) + ": {" + list + "}";
}

}  // namespace diffirr
