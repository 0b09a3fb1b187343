// hurwitz-lab: command-line front end for the verification pipelines.
//
// Exit status: 0 when every asserted invariant holds, 1 on an invariant
// failure, 2 on usage errors and refused inputs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include <hurwitz_lab/pipeline.hpp>

namespace {

using namespace hlab;
using pipeline::json;
using pipeline::Row;
using pipeline::RowResult;

struct Options {
    unsigned n = 0;
    u64 p = 0;
    unsigned r = 0;
    unsigned k0 = 0;
    std::string table = "subgroups";
    std::string matrix = "default";
    bool census = false;
    bool as_json = false;
    bool quiet = false;
    std::string output;
};

void progress(const Options& o, const std::string& msg) {
    if (!o.quiet) std::cerr << "[hurwitz-lab] " << msg << std::endl;
}

Row make_row(const std::string& kind, std::map<std::string, std::string> args) {
    Row r;
    r.kind = kind;
    r.args = std::move(args);
    r.line = kind;
    for (const auto& [k, v] : r.args) r.line += " " + k + "=" + v;
    return r;
}

int emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(o.output);
    if (!f) {
        std::cerr << "error: cannot write " << o.output << "\n";
        return 2;
    }
    f << text;
    return 0;
}

// A refused precondition is a usage error; anything else that failed is an assertion failure.
int status_of(const std::vector<RowResult>& rs) {
    for (const auto& r : rs)
        if (r.error && *r.error != Errc::InvariantViolated) return 2;
    for (const auto& r : rs)
        if (!r.pass) return 1;
    return 0;
}

int run_single(const Options& o, const std::vector<Row>& rows) {
    std::vector<RowResult> results;
    for (const auto& row : rows) results.push_back(pipeline::run_row(row, [&](const std::string& m) { progress(o, m); }));
    for (const auto& r : results)
        if (r.error && *r.error != Errc::InvariantViolated) std::cerr << "refused: " << r.failures.front() << "\n";
    std::string out;
    if (o.as_json) {
        json j = results.size() == 1 ? results.front().report : json::array();
        if (results.size() != 1)
            for (const auto& r : results) j.push_back(r.report);
        out = j.dump(2) + "\n";
    } else {
        for (const auto& r : results) {
            if (r.error && *r.error != Errc::InvariantViolated) continue;
            out += r.text;
            for (const auto& f : r.failures) out += "FAIL: " + f + "\n";
        }
    }
    const int io = emit(o, out);
    return io ? io : status_of(results);
}

int run_matrix(const Options& o) {
    std::vector<Row> rows;
    if (o.matrix == "default") {
        rows = pipeline::default_matrix();
    } else {
        std::ifstream in(o.matrix);
        if (!in) throw pipeline::UsageError("cannot read matrix file " + o.matrix);
        rows = pipeline::parse_matrix(in);
    }
    std::vector<RowResult> results;
    for (const auto& row : rows) {
        results.push_back(pipeline::run_row(row, [&](const std::string& m) { progress(o, m); }));
        progress(o, std::string(results.back().pass ? "PASS " : "FAIL ") + row.line);
    }
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    std::string out;
    if (o.as_json) {
        json j = {{"pass", all}, {"rows", json::array()}};
        for (const auto& r : results) j["rows"].push_back(r.report);
        out = j.dump(2) + "\n";
    } else {
        for (const auto& r : results) {
            out += (r.pass ? "PASS  " : "FAIL  ") + r.line + "\n";
            for (const auto& f : r.failures) out += "      violated: " + f + "\n";
        }
        out += std::string(all ? "all rows passed" : "some rows failed") + " (" + std::to_string(results.size()) + " rows)\n";
    }
    const int io = emit(o, out);
    return io ? io : (all ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed forms on Hurwitz curves checked over explicit finite fields"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.as_json, "Emit JSON instead of a table");
    app.add_flag("-q,--quiet", o.quiet, "No progress on stderr");
    app.add_option("-o,--output", o.output, "Write the report to a file");

    auto* w = app.add_subcommand("weierstrass", "Weierstrass points: closed form and flex scan");
    w->add_option("--n", o.n, "Curve index n >= 3")->required();
    w->add_option("--p", o.p, "Characteristic")->required();
    w->add_option("--scan-k", o.k0, "Degree of the scan field (default: largest admissible with p^k <= 8192)");

    auto* a = app.add_subcommand("autgroup", "Automorphism group, subgroup classes and quotient genera");
    a->add_option("--n", o.n, "Curve index")->required();
    a->add_option("--p", o.p, "Characteristic")->required();
    a->add_option("--table", o.table, "genus or subgroups")->check(CLI::IsMember({"genus", "subgroups"}));

    auto* l = app.add_subcommand("lucas", "Maximality and total inflections of y^n = L_n(x)");
    l->add_option("--p", o.p, "Odd characteristic")->required();
    l->add_option("--r", o.r, "Maximality field is GF(p^(2r))")->required();
    l->add_option("--n", o.n, "Index (default: every n >= 3 dividing (p^r+1)/2)");
    l->add_flag("--census", o.census, "Also count total inflection points");

    auto* v = app.add_subcommand("verify-all", "Run a verification matrix");
    v->add_option("--matrix", o.matrix, "'default' or a file with one row per line, e.g. 'weierstrass n=4 p=5 k0=4'");

    for (auto* sub : {w, a, l, v}) {
        sub->add_flag("--json", o.as_json, "Emit JSON instead of a table");
        sub->add_flag("-q,--quiet", o.quiet, "No progress on stderr");
        sub->add_option("-o,--output", o.output, "Write the report to a file");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const auto ns = std::to_string(o.n), ps = std::to_string(o.p);
        if (*w) {
            std::map<std::string, std::string> args{{"n", ns}, {"p", ps}};
            if (o.k0) args["k0"] = std::to_string(o.k0);
            return run_single(o, {make_row("weierstrass", args)});
        }
        if (*a) return run_single(o, {make_row("autgroup", {{"n", ns}, {"p", ps}, {"table", o.table}})});
        if (*l) {
            std::vector<unsigned> ns_list;
            if (o.n) {
                ns_list.push_back(o.n);
            } else {
                if (o.p < 3 || !nt::is_prime(o.p)) throw pipeline::UsageError("--p must be an odd prime");
                const u64 pr = nt::checked_pow(o.p, o.r);
                if (pr == 0) throw pipeline::UsageError("p^r is too large");
                for (u64 d : nt::divisors((pr + 1) / 2))
                    if (d >= 3 && d % o.p != 0) ns_list.push_back(static_cast<unsigned>(d));
                if (ns_list.empty()) throw pipeline::UsageError("no n >= 3 divides (p^r+1)/2");
            }
            std::vector<Row> rows;
            for (unsigned n : ns_list)
                rows.push_back(make_row("lucas", {{"n", std::to_string(n)}, {"p", ps}, {"r", std::to_string(o.r)},
                                                  {"census", o.census ? "1" : "0"}}));
            return run_single(o, rows);
        }
        return run_matrix(o);
    } catch (const pipeline::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::InvariantViolated ? 1 : 2;
    }
}
