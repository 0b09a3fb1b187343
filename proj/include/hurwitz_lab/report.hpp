#pragma once

// JSON and plain-text renderings of every report. JSON objects keep their
// keys sorted; field elements are little-endian base-p digit lists.

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "autgroup.hpp"
#include "hurwitz.hpp"
#include "lucas.hpp"

namespace hlab::report {

using json = nlohmann::json;

inline json fe_json(const Field& F, Fe a) { return F.digits(a); }

inline json point_json(const Field& F, const ProjPoint& P) {
    return json::array({fe_json(F, P.c[0]), fe_json(F, P.c[1]), fe_json(F, P.c[2])});
}

/// {p, k, modulus}: the k non-leading coefficients of the monic modulus.
inline json field_json(const Field& F) {
    const auto& mod = F.modulus();
    return {{"p", F.characteristic()}, {"k", F.degree()}, {"modulus", std::vector<u64>(mod.begin(), mod.end() - 1)}};
}

inline json flex_json(const FlexRecord& r) {
    json j = {{"point", point_json(r.field, r.point)},
              {"j", r.j},
              {"field", {{"p", r.field.characteristic()}, {"k", r.field.degree()}}}};
    if (const auto tag = vertex_tag(r.point); !tag.empty()) j["tag"] = tag;
    return j;
}

inline json spec_json(const HurwitzSpec& s) { return {{"n", s.n}, {"p", s.p}}; }

inline json weierstrass_json(const WeierstrassVerification& v) {
    const auto& W = v.closed;
    json omega = json::array(), w = json::array(), scan = json::array();
    for (const auto& r : W.omega) omega.push_back(flex_json(r));
    for (const auto& r : W.w) w.push_back(flex_json(r));
    for (const auto& r : v.scan) scan.push_back(flex_json(r));
    return {{"spec", spec_json(W.spec)},
            {"eps", W.eps_case.eps},
            {"eps_case", to_string(W.eps_case.tag)},
            {"case", to_string(W.wcase)},
            {"degR", W.degR},
            {"bookkeeping", W.bookkeeping},
            {"bookkeeping_asserted", W.bookkeeping_asserted},
            {"field", field_json(W.field)},
            {"omega", omega},
            {"w", w},
            {"w_size", W.w.size()},
            {"scan_field", field_json(v.scan_field)},
            {"scan", scan},
            {"w_rational_over_scan_field", v.w_rational},
            {"soundness", v.soundness},
            {"completeness", v.completeness},
            {"failures", v.failures}};
}

inline std::string weierstrass_text(const WeierstrassVerification& v) {
    const auto& W = v.closed;
    const auto& s = W.spec;
    std::ostringstream o;
    o << "Hurwitz curve H_" << s.n << " over GF(" << s.p << "): m = " << s.m() << ", genus " << s.genus() << "\n";
    o << "  eps = " << W.eps_case.eps << " (" << to_string(W.eps_case.tag) << "), case " << to_string(W.wcase) << "\n";
    o << "  deg R = " << W.degR << "\n";
    o << "  Omega: P1, P2, P3 with j = " << s.n << "\n";
    if (W.w.empty()) {
        o << "  W: empty\n";
    } else {
        o << "  W: " << W.w.size() << " points with j = " << W.claimed_j << ", all rational over " << W.field.name() << "\n";
    }
    if (W.bookkeeping_asserted)
        o << "  bookkeeping: sum(j - eps) = " << W.bookkeeping << " = deg R " << (W.bookkeeping == W.degR ? "(ok)" : "(MISMATCH)")
          << "\n";
    else
        o << "  bookkeeping: sum(j - eps) over the vertices = " << W.bookkeeping << ", deg R = " << W.degR
          << " (vertex weights not asserted when W is empty)\n";
    o << "  scan over " << v.scan_field.name() << ": " << v.scan.size() << " flexes above eps, " << v.w_rational
      << " of them from W\n";
    o << "  soundness: " << (v.soundness ? "ok" : "FAILED") << "\n";
    o << "  completeness: " << (v.completeness ? "ok" : "FAILED") << "\n";
    for (const auto& f : v.failures) o << "  failure: " << f << "\n";
    return o.str();
}

inline json subgroup_json(const SubgroupClass& c) {
    return {{"kind", to_string(c.kind)},
            {"label", c.label},
            {"params", {{"d", c.d}, {"i", c.i}}},
            {"order", c.order},
            {"class_size", c.class_size}};
}

inline json genus_row_json(const GenusRow& r) {
    json j = subgroup_json(r.cls);
    j["genus_closed"] = r.genus_closed;
    j["genus_rh"] = r.genus_rh;
    j["different"] = r.different;
    j["ramified_points"] = r.ramified_points;
    j["agree"] = r.agree();
    return j;
}

struct AutgroupSummary {
    AutGroup group;
    std::vector<SubgroupClass> classes;
    std::optional<GenusTable> genus;
};

inline json autgroup_json(const AutgroupSummary& a) {
    const auto& G = a.group;
    const Field& F = G.field;
    json j = {{"spec", spec_json(G.spec)},
              {"field", field_json(F)},
              {"order", G.closure_size},
              {"expected_order", G.abs.size()},
              {"xi", fe_json(F, G.gens.xi)},
              {"sigma", to_string(F, G.gens.sigma)},
              {"mu", to_string(F, G.gens.mu)}};
    json classes = json::array();
    for (const auto& c : a.classes) classes.push_back(subgroup_json(c));
    j["subgroups"] = classes;
    if (a.genus) {
        const auto& T = *a.genus;
        json rows = json::array();
        for (const auto& r : T.rows) rows.push_back(genus_row_json(r));
        j["genus"] = {{"scan_field", field_json(T.field)},
                      {"point_count", T.point_count},
                      {"fixed_points_rational", T.fixed_points_rational},
                      {"sigma_fixes_exactly_omega", T.sigma_fixes_exactly_omega},
                      {"vertex_stabilizers_in_sigma", T.vertex_stabilizers_in_sigma},
                      {"stabilizers_cyclic_part_or_order_3", T.stabilizers_cyclic_part_or_order_3},
                      {"rows", rows}};
    }
    return j;
}

inline std::string autgroup_text(const AutgroupSummary& a) {
    const auto& G = a.group;
    std::ostringstream o;
    o << "Aut(H_" << G.spec.n << ") over " << G.field.name() << ": order " << G.closure_size << " = 3 * " << G.spec.m()
      << "\n";
    o << "  sigma = " << to_string(G.field, G.gens.sigma) << "\n";
    o << "  mu    = " << to_string(G.field, G.gens.mu) << "\n";
    o << "  mu sigma mu^-1 = sigma^" << G.spec.n - 1 << ": ok\n";
    if (!a.genus) {
        o << "  " << std::left << std::setw(14) << "class" << std::setw(8) << "order" << "size\n";
        for (const auto& c : a.classes)
            o << "  " << std::left << std::setw(14) << c.label << std::setw(8) << c.order << c.class_size << "\n";
        return o.str();
    }
    const auto& T = *a.genus;
    o << "  genus table over " << T.field.name() << " (" << T.point_count << " points)\n";
    o << "  " << std::left << std::setw(14) << "class" << std::setw(8) << "order" << std::setw(8) << "size" << std::setw(9)
      << "closed" << std::setw(6) << "RH" << "\n";
    for (const auto& r : T.rows)
        o << "  " << std::left << std::setw(14) << r.cls.label << std::setw(8) << r.cls.order << std::setw(8)
          << r.cls.class_size << std::setw(9) << r.genus_closed << std::setw(6) << r.genus_rh << (r.agree() ? "" : "MISMATCH")
          << "\n";
    return o.str();
}

inline json maximality_json(const MaximalityReport& R) {
    return {{"p", R.p},         {"r", R.r},
            {"n", R.n},         {"q", R.q},
            {"genus", R.genus}, {"point_count", R.point_count},
            {"hw_bound", R.hw_bound}, {"is_maximal", R.is_maximal},
            {"nonsingular_at_points", R.nonsingular_at_points}, {"roots_rational", R.roots_rational}};
}

inline json census_json(const FlexCensus& c) {
    json flexes = json::array();
    for (const auto& r : c.flexes) flexes.push_back(flex_json(r));
    json j = {{"curve", c.curve},
              {"field", field_json(c.field)},
              {"degree", c.degree},
              {"total_flex_count", c.total_flex_count},
              {"flexes", flexes},
              {"canonical_flexes_present", c.canonical_flexes_present},
              {"verdict", c.verdict}};
    j["expected"] = c.expected ? json(*c.expected) : json(nullptr);
    return j;
}

inline std::string maximality_text(const MaximalityReport& R) {
    std::ostringstream o;
    o << "C_" << R.n << " over GF(" << R.p << "^" << 2 * R.r << "): genus " << R.genus << ", " << R.point_count
      << " points, Hasse-Weil bound " << R.hw_bound << (R.is_maximal ? " (maximal)" : " (not maximal)") << "\n";
    return o.str();
}

inline std::string census_text(const FlexCensus& c) {
    std::ostringstream o;
    o << c.curve << " over " << c.field.name() << ": " << c.total_flex_count << " total inflection points";
    if (c.expected) o << ", expected " << *c.expected;
    o << (c.verdict ? " (ok)" : " (FAILED)") << "\n";
    return o.str();
}

}  // namespace hlab::report
