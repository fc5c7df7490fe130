#pragma once

// Command dispatch for the diffirr executable. Exit codes: 0 ok, 1 other
// failure, 2 parse or usage error, 3 unsupported construction, 4
// specialization not well defined.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diffirr/bounds.hpp"
#include "diffirr/exterior.hpp"
#include "diffirr/irred.hpp"
#include "diffirr/opexpr.hpp"
#include "diffirr/param.hpp"
#include "diffirr/sweep.hpp"

namespace diffirr {

namespace presets {
inline constexpr const char* kBessel = "D^2 + (1/x)*D + (x^2 - a^2)/x^2";
}  // namespace presets

namespace app_detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

struct Common {
    std::string field;
    std::string params;
    std::string preset;
    std::vector<std::string> at;
    unsigned jobs = 1;
};

inline Field build_field(const Common& c) {
    std::vector<std::string> params;
    if (!c.params.empty())
        for (auto& p : split(c.params, ',')) params.push_back(trim(p));
    if (c.preset == "bessel" && std::find(params.begin(), params.end(), "a") == params.end()) params.push_back("a");
    if (c.field.empty()) return make_field("", {}, params);
    auto colon = c.field.find(':');
    if (colon == std::string::npos) throw ParseError("--field expects gen:minpoly", 0);
    std::string gen = trim(c.field.substr(0, colon));
    return make_field(gen, parse_minpoly(c.field.substr(colon + 1), gen), params);
}

inline std::string operator_text(const Common& c, const std::vector<std::string>& pos, std::size_t i) {
    if (i < pos.size()) return pos[i];
    if (i == 0 && c.preset == "bessel") return presets::kBessel;
    if (!c.preset.empty() && c.preset != "bessel") throw ParseError("unknown preset '" + c.preset + "'", 0);
    throw ParseError("missing operator argument", 0);
}

inline std::map<std::string, Scalar> parse_assignments(const std::vector<std::string>& at, const Field& f) {
    std::map<std::string, Scalar> out;
    const Field plain = param::specialized_field(f);
    for (const auto& item : at)
        for (const auto& part : split(item, ',')) {
            auto eq = part.find('=');
            if (eq == std::string::npos) throw ParseError("--at expects name=value", 0);
            out[trim(part.substr(0, eq))] = parse_scalar(part.substr(eq + 1), plain);
        }
    return out;
}

inline void print_matrix(std::ostream& out, const MatrixRF& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << "  [";
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << print_ratfun(m(i, j));
        out << "]\n";
    }
}

inline void print_verdict(std::ostream& out, const IrredVerdict& v) {
    if (v.status != IrredStatus::Reducible) {
        out << to_string(v.status) << "\n";
        for (const auto& d : v.diagnostics) out << "# " << d << "\n";
        return;
    }
    out << "Reducible: " << factor_text(v.factors.front(), v.certificates) << "\n";
    for (std::size_t i = 1; i < v.factors.size(); ++i) out << "factor: " << factor_text(v.factors[i], v.certificates) << "\n";
    out << "quotient: " << print_op(v.witness->quotient) << "\n";
}

inline void print_bound(std::ostream& out, const DiffOp& l, const BoundReport& r) {
    out << "mode: " << to_string(r.mode) << "\n";
    out << "d(L): " << bounds::op_degree(l) << "\n";
    out << "s,binom,deg_T,N,term\n";
    for (const auto& row : r.rows)
        out << row.s << "," << row.binom << "," << row.deg_t << "," << row.exp_bound << "," << row.term << "\n";
    out << "b: " << r.b_value << "\n";
    out << "factor_bound: " << r.factor_bound << "\n";
    out << "policy: " << r.policy << "\n";
}

}  // namespace app_detail

/// Runs one command; args excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace app_detail;
    CLI::App app("Exact linear differential operators: arithmetic, factors, bounds, sweeps", "diffirr");
    app.require_subcommand(1);
    Common common;
    app.add_option("--field", common.field, "constant field extension as gen:minpoly, e.g. i:i^2+1");
    app.add_option("--params", common.params, "comma-separated parameter names");
    app.add_option("--preset", common.preset, "built-in operator (bessel)");
    app.add_option("--at", common.at, "parameter assignment name=value");
    app.add_option("--jobs", common.jobs, "worker threads for sweeps");
    std::vector<std::string> pos;

    auto binary = [&](const char* name, const char* help) {
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("operands", pos, "operator expressions");
        return sc;
    };
    auto* c_mul = binary("mul", "product L*M");
    auto* c_rem = binary("rem", "right remainder of L by P");
    auto* c_quo = binary("quo", "right quotient of L by P");
    auto* c_gcrd = binary("gcrd", "greatest common right divisor");
    auto* c_apply = binary("apply", "apply L to a rational function");
    auto* c_exp = binary("expsols", "exponential solution certificates");
    auto* c_irr = binary("irreducible", "irreducibility verdict (order <= 3)");
    auto* c_ext = binary("exterior", "exterior system reduction");
    int ext_s = 1;
    c_ext->add_option("--s", ext_s, "wedge order")->required();
    auto* c_bound = binary("bound", "degree bound report");
    std::string mode = "sound";
    c_bound->add_option("--mode", mode, "sound|empirical")->check(CLI::IsMember({"sound", "empirical"}));
    auto* c_spec = binary("specialize", "specialize parameters");
    auto* c_sweep = binary("sweep", "specialization sweep to CSV");
    std::string sw_param, sw_values, sw_out;
    bool no_timing = false;
    c_sweep->add_option("--param", sw_param, "swept parameter")->required();
    c_sweep->add_option("--values", sw_values, "comma-separated values")->required();
    c_sweep->add_option("--out", sw_out, "CSV output file")->required();
    c_sweep->add_flag("--no-timing", no_timing, "leave the ms column empty");
    auto* c_gen = binary("generic-system", "generic factor system export");
    int g_s = 1, g_nu = -1, g_cap = 12;
    std::string g_out;
    c_gen->add_option("--s", g_s, "factor order")->required();
    c_gen->add_option("--nu", g_nu, "coefficient degree (-1: default)");
    c_gen->add_option("--nu-cap", g_cap, "cap for the default degree");
    c_gen->add_option("--out", g_out, "JSON output file")->required();

    // Global options are accepted after the subcommand too.
    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const Field f = build_field(common);
        auto op = [&](std::size_t i) { return parse_op(operator_text(common, pos, i), f); };
        auto point_for = [&](const DiffOp& l) { return param::make_point(l.field() ? l.field() : f, parse_assignments(common.at, f)); };
        auto maybe_specialize = [&](const DiffOp& l) {
            if (common.at.empty()) return l;
            return param::specialize(l, point_for(l));
        };

        if (c_mul->parsed()) {
            out << print_op(ore::mul(op(0), op(1))) << "\n";
        } else if (c_rem->parsed()) {
            out << print_op(ore::rem(op(0), op(1))) << "\n";
        } else if (c_quo->parsed()) {
            out << print_op(ore::quo(op(0), op(1))) << "\n";
        } else if (c_gcrd->parsed()) {
            out << print_op(ore::gcrd(op(0), op(1))) << "\n";
        } else if (c_apply->parsed()) {
            out << print_ratfun(ore::apply(op(0), parse_ratfun(operator_text(common, pos, 1), f))) << "\n";
        } else if (c_exp->parsed()) {
            auto rep = riccati::expsols(maybe_specialize(op(0)));
            for (const auto& c : rep.certificates) out << riccati::print_certificate(c) << "\n";
            out << "complete: " << (rep.complete ? "yes" : "no") << "\n";
            for (const auto& r : rep.reasons) out << "# " << r << "\n";
        } else if (c_irr->parsed()) {
            print_verdict(out, irred::irreducible(maybe_specialize(op(0))));
        } else if (c_ext->parsed()) {
            const DiffOp l = maybe_specialize(op(0));
            auto red = exterior::reduce(l, ext_s);
            out << "system:\n";
            print_matrix(out, red.system);
            out << "scalar_op: " << print_op(red.scalar_op) << "\n";
            out << "transform:\n";
            print_matrix(out, red.transform);
            out << "deg_T: " << exterior::matrix_degree(red.transform) << "\n";
            out << "covector: [";
            for (std::size_t i = 0; i < red.cyclic_row.size(); ++i) out << (i ? ", " : "") << print_ratfun(red.cyclic_row[i]);
            out << "]\npolicy: " << red.policy << "\n";
        } else if (c_bound->parsed()) {
            const DiffOp l = maybe_specialize(op(0));
            print_bound(out, l, bounds::b_of(l, mode == "sound" ? BoundMode::Sound : BoundMode::Empirical));
        } else if (c_spec->parsed()) {
            const DiffOp l = op(0);
            out << print_op(param::specialize(l, point_for(l))) << "\n";
        } else if (c_sweep->parsed()) {
            const DiffOp l = op(0);
            std::vector<std::string> values;
            for (auto& v : split(sw_values, ',')) values.push_back(trim(v));
            auto fixed = parse_assignments(common.at, f);
            auto rows = sweep(l, sw_param, values, common.jobs, fixed);
            std::ofstream file(sw_out);
            if (!file) throw IoError("cannot open '" + sw_out + "' for writing");
            file << sweep_csv(rows, !no_timing);
            if (!file) throw IoError("write to '" + sw_out + "' failed");
            out << sweep_summary(rows) << "\n";
        } else if (c_gen->parsed()) {
            const DiffOp l = op(0);
            auto sys = param::generic_division(l, g_s, g_nu, g_cap);
            param::export_system(sys, g_out);
            out << "s=" << sys.s << " nu=" << sys.nu << " indeterminates=" << sys.t_names.size()
                << " |W|=" << sys.w.size() << " q_exponent=" << sys.rem.m << "\n";
        }
        return 0;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidField& e) {
        err << "invalid field: " << e.what() << "\n";
        return 2;
    } catch (const Unsupported& e) {
        err << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const NotWellDefined& e) {
        err << "not well-defined: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace diffirr
