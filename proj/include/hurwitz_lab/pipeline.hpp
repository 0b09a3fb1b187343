#pragma once

// Runnable verification rows ("weierstrass n=4 p=5 k0=4") and the default matrix.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "report.hpp"

namespace hlab::pipeline {

using report::json;
using report::AutgroupSummary;

/// Bad command lines and malformed matrix files.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scan fields stay at or below this size unless a degree is given.
inline constexpr u64 kDefaultScanSize = u64{1} << 13;

/// Largest admissible k with p^k <= kDefaultScanSize; in the nonempty branches k must divide the construction degree.
inline unsigned default_scan_degree(const HurwitzSpec& s, const WeierstrassSet& W) {
    unsigned best = 1;
    for (unsigned k = 1; k <= gf::kMaxDegree; ++k) {
        const u64 q = nt::checked_pow(s.p, k);
        if (q == 0 || q > kDefaultScanSize) break;
        if (!weierstrass_empty(W.wcase) && W.field.degree() % k != 0) continue;
        best = k;
    }
    return best;
}

struct Row {
    std::string kind;
    std::map<std::string, std::string> args;
    std::string line;

    bool has(const std::string& k) const { return args.count(k) != 0; }
    u64 num(const std::string& k) const {
        auto it = args.find(k);
        if (it == args.end()) throw UsageError("row '" + line + "' lacks " + k + "=");
        try {
            std::size_t pos = 0;
            const u64 v = std::stoull(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(k);
            return v;
        } catch (const std::logic_error&) {
            throw UsageError("row '" + line + "': " + k + " is not a number");
        }
    }
    std::string str(const std::string& k, const std::string& dflt) const {
        auto it = args.find(k);
        return it == args.end() ? dflt : it->second;
    }
};

inline const std::vector<std::string>& known_kinds() {
    static const std::vector<std::string> k{"weierstrass", "autgroup", "lucas", "hurwitz-census"};
    return k;
}

inline Row parse_row(const std::string& line) {
    std::istringstream in(line);
    Row r;
    r.line = line;
    in >> r.kind;
    if (std::find(known_kinds().begin(), known_kinds().end(), r.kind) == known_kinds().end())
        throw UsageError("unknown row kind '" + r.kind + "'");
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + tok + "'");
        r.args[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return r;
}

/// One row per nonblank line; '#' starts a comment.
inline std::vector<Row> parse_matrix(std::istream& in) {
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        rows.push_back(parse_row(line.substr(b, e - b + 1)));
    }
    return rows;
}

inline const char* kDefaultMatrix = R"(# Weierstrass points: closed form against a full flex scan
weierstrass n=6 p=3 k0=6
weierstrass n=4 p=5 k0=4
weierstrass n=6 p=19 k0=3
weierstrass n=7 p=2 k0=6
weierstrass n=5 p=2 k0=8
weierstrass n=4 p=3 k0=6
# automorphism groups and quotient genera
autgroup n=4 p=5
autgroup n=5 p=2
autgroup n=6 p=5
autgroup n=4 p=3 table=genus
autgroup n=4 p=5 table=genus
autgroup n=5 p=2 table=genus
# Lucas-type curves
lucas p=5 r=1 n=3
lucas p=7 r=1 n=4 census=1
lucas p=3 r=2 n=5
lucas p=19 r=1 n=5 census=1
hurwitz-census n=4 p=5 k=4
)";

inline std::vector<Row> default_matrix() {
    std::istringstream in(kDefaultMatrix);
    return parse_matrix(in);
}

struct RowResult {
    std::string line;
    bool pass = false;
    json report;
    std::string text;
    std::vector<std::string> failures;
    std::optional<Errc> error;  // set when the row threw
    double seconds = 0;
};

using Progress = std::function<void(const std::string&)>;

inline AutgroupSummary run_autgroup(const HurwitzSpec& s, bool genus, const Progress& progress) {
    require_generic_case(s);
    const Field F = Field::make(s.p, genus ? scan_field_degree(s) : automorphism_field_degree(s));
    if (progress) progress("generating Aut(H_" + std::to_string(s.n) + ") over " + F.name());
    AutgroupSummary a{generate_group(s, F), subgroup_classes(s.n), std::nullopt};
    if (genus) {
        if (progress) progress("genus table: scanning " + F.name());
        a.genus = genus_table(s, F);
    }
    return a;
}

inline bool autgroup_pass(const AutgroupSummary& a, std::vector<std::string>& failures) {
    bool ok = a.group.closure_size == a.group.abs.size();
    if (!ok) failures.push_back("group order");
    if (a.genus) {
        const auto& T = *a.genus;
        auto flag = [&](bool v, const char* name) {
            if (!v) {
                ok = false;
                failures.push_back(name);
            }
        };
        flag(T.fixed_points_rational, "scan field contains every fixed point");
        flag(T.sigma_fixes_exactly_omega, "sigma fixes exactly the vertices");
        flag(T.vertex_stabilizers_in_sigma, "vertex stabilizers lie in <sigma>");
        flag(T.stabilizers_cyclic_part_or_order_3, "stabilizers lie in <sigma> or have order 3");
        flag(T.rh_full_group_identity, "d(d-3) = 2g-2");
        for (const auto& r : T.rows)
            if (!r.agree()) {
                ok = false;
                failures.push_back("genus of H/" + r.cls.label + ": closed form " + std::to_string(r.genus_closed) +
                                   ", Riemann-Hurwitz " + std::to_string(r.genus_rh));
            }
    }
    return ok;
}

inline RowResult run_row(const Row& row, const Progress& progress = {}) {
    RowResult out;
    out.line = row.line;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (row.kind == "weierstrass") {
            const auto s = HurwitzSpec::make(static_cast<unsigned>(row.num("n")), row.num("p"));
            unsigned k0 = row.has("k0") ? static_cast<unsigned>(row.num("k0")) : 0;
            if (!k0) k0 = default_scan_degree(s, weierstrass_closed_form(s));
            if (progress) progress("weierstrass n=" + std::to_string(s.n) + " p=" + std::to_string(s.p) + ": scanning GF(" +
                                   std::to_string(s.p) + "^" + std::to_string(k0) + ")");
            const auto v = verify_weierstrass(s, k0);
            out.report = report::weierstrass_json(v);
            out.text = report::weierstrass_text(v);
            out.failures = v.failures;
            const bool books = !v.closed.bookkeeping_asserted || v.closed.bookkeeping == v.closed.degR;
            if (!books) out.failures.push_back("sum of (j - eps) equals deg R");
            if (!v.omega_exact) out.failures.push_back("only the vertices reach j = n");
            out.pass = v.soundness && v.completeness && v.omega_exact && books;
        } else if (row.kind == "autgroup") {
            const auto s = HurwitzSpec::make(static_cast<unsigned>(row.num("n")), row.num("p"));
            const std::string table = row.str("table", "subgroups");
            if (table != "genus" && table != "subgroups") throw UsageError("table must be genus or subgroups");
            const auto a = run_autgroup(s, table == "genus", progress);
            out.report = report::autgroup_json(a);
            out.text = report::autgroup_text(a);
            out.pass = autgroup_pass(a, out.failures);
        } else if (row.kind == "lucas") {
            const unsigned n = static_cast<unsigned>(row.num("n"));
            const u64 p = row.num("p");
            const unsigned r = static_cast<unsigned>(row.num("r"));
            if (progress) progress("lucas n=" + std::to_string(n) + ": counting points over GF(" + std::to_string(p) + "^" +
                                   std::to_string(2 * r) + ")");
            const auto R = check_maximality(n, p, r);
            out.report = {{"maximality", report::maximality_json(R)}};
            out.text = report::maximality_text(R);
            out.pass = R.is_maximal && R.nonsingular_at_points && R.roots_rational;
            if (!R.is_maximal) out.failures.push_back("point count equals the Hasse-Weil bound");
            if (!R.nonsingular_at_points) out.failures.push_back("nonsingular at every rational point");
            if (!R.roots_rational) out.failures.push_back("roots of L_n are rational");
            if (row.str("census", "0") == "1") {
                const auto c = lucas_flex_census(n, p, r);
                out.report["census"] = report::census_json(c);
                out.text += report::census_text(c);
                if (!c.verdict) {
                    out.pass = false;
                    out.failures.push_back("total inflection count");
                }
            }
        } else {
            const auto s = HurwitzSpec::make(static_cast<unsigned>(row.num("n")), row.num("p"));
            const auto c = hurwitz_flex_census(s, static_cast<unsigned>(row.num("k")));
            out.report = report::census_json(c);
            out.text = report::census_text(c);
            out.pass = c.verdict;
            if (!c.verdict) out.failures.push_back("no total inflection points");
        }
    } catch (const Error& e) {
        out.pass = false;
        out.error = e.code();
        out.failures.push_back(e.what());
        out.report = {{"error", {{"code", std::string(errc_name(e.code()))}, {"message", e.what()}}}};
        out.text = std::string("error: ") + e.what() + "\n";
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.report["row"] = row.line;
    out.report["pass"] = out.pass;
    out.report["failures"] = out.failures;
    return out;
}

}  // namespace hlab::pipeline
