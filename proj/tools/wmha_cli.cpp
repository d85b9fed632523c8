// Batch front end: build an instance, run every verifier, write a JSON report.
// Exit codes: 0 all checks pass, 1 some check fails, 2 bad input.

#include "wmha.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace wmha;

namespace {

struct Options {
    std::string kind;
    std::size_t size = 0;
    std::size_t set = 0;
    std::vector<std::string> groups;
    std::vector<std::size_t> swap;
    std::string input;
    std::string construction;
    std::string report;
    bool list_checks = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Section {
    std::string label;
    Report report;
};

const std::vector<std::string> groupoid_kinds = {"groupoid-file", "pair", "action", "group", "disjoint-union"};

bool is_groupoid_kind(const std::string& k)
{
    return std::find(groupoid_kinds.begin(), groupoid_kinds.end(), k) != groupoid_kinds.end();
}

FiniteGroup one_group(const Options& o)
{
    if (o.groups.size() != 1)
        throw UsageError("--kind " + o.kind + " needs exactly one --group");
    return group_by_name(o.groups.front());
}

std::size_t need(std::size_t v, const char* flag, const std::string& kind)
{
    if (v == 0)
        throw UsageError(std::string("--kind ") + kind + " needs " + flag + " > 0");
    return v;
}

/// Generator swapping the two given points (1-based), or the identity action without --swap.
ActionTable action_table(const Options& o, const FiniteGroup& H, std::size_t n)
{
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (o.swap.empty())
        return ActionTable(H.order(), perm);
    if (o.swap.size() != 2 || o.swap[0] < 1 || o.swap[1] < 1 || o.swap[0] > n || o.swap[1] > n || o.swap[0] == o.swap[1])
        throw UsageError("--swap needs two distinct points in 1.." + std::to_string(n));
    std::swap(perm[o.swap[0] - 1], perm[o.swap[1] - 1]);
    if (H.name.empty() || H.name[0] != 'Z')
        throw UsageError("--swap generates a cyclic action; use a group Z<n>");
    ActionTable act = cyclic_action(H, perm);
    auto bad = action_violations(H, n, act);
    if (!bad.empty())
        throw UsageError("action of " + H.name + ": " + bad.front());
    return act;
}

FiniteGroupoid read_groupoid(const Options& o)
{
    if (o.kind == "groupoid-file") {
        if (o.input.empty())
            throw UsageError("--kind groupoid-file needs --input");
        std::ifstream in(o.input);
        if (!in)
            throw UsageError("cannot read " + o.input);
        std::stringstream ss;
        ss << in.rdbuf();
        return groupoid_from_json(ss.str());
    }
    if (o.kind == "pair")
        return pair_groupoid(need(o.size, "--size", o.kind));
    if (o.kind == "group")
        return group_groupoid(one_group(o));
    if (o.kind == "disjoint-union") {
        if (o.groups.size() < 2)
            throw UsageError("--kind disjoint-union needs at least two --group");
        FiniteGroupoid G = group_groupoid(group_by_name(o.groups[0]));
        for (std::size_t i = 1; i < o.groups.size(); ++i)
            G = disjoint_union(G, group_groupoid(group_by_name(o.groups[i])));
        return G;
    }
    FiniteGroup H = one_group(o);
    std::size_t n = need(o.set, "--set", o.kind);
    return action_groupoid(n, H, action_table(o, H, n));
}

void describe(Report& info, const Wmha& W)
{
    info.record("bundle", W.bundle().name);
    info.record("dim A", std::to_string(W.n()));
}

std::vector<Section> run(const Options& o, Report& info)
{
    std::vector<Section> out;
    std::string c = o.construction;
    if (c.empty())
        c = is_groupoid_kind(o.kind) ? "functions" : o.kind == "smash" ? "smash" : "cb";
    info.record("kind", o.kind);
    info.record("construction", c);

    if (c == "functions" || c == "convolution") {
        if (!is_groupoid_kind(o.kind))
            throw UsageError("--construction " + c + " needs a groupoid kind");
        FiniteGroupoid G = read_groupoid(o);
        Wmha W(c == "functions" ? function_wmha(G) : groupoid_algebra_wmha(G));
        describe(info, W);
        out.push_back({"axioms and source/target", verify_all(W)});
        out.push_back({"gamma", gamma_map(W).report});
        return out;
    }
    if (c == "cb") {
        SeparabilityIdempotent S;
        if (o.kind == "sep-diagonal") {
            S = diagonal_on_set(need(o.set, "--set", o.kind));
        } else if (o.kind == "dqg") {
            S = from_dqg(one_group(o));
        } else if (is_groupoid_kind(o.kind)) {
            Wmha W(function_wmha(read_groupoid(o)));
            SourceTarget st(W);
            Report base = verify_core(W);
            base.append(st.run());
            out.push_back({"source bundle", base});
            if (!st.data().sep)
                return out;
            S = *st.data().sep;
        } else {
            throw UsageError("--construction cb does not apply to --kind " + o.kind);
        }
        WmhaBundle b = o.kind == "dqg" ? dqg_wmha(one_group(o)) : cb_wmha(S);
        Wmha W(b);
        describe(info, W);
        out.push_back({"axioms and source/target", verify_all(W)});
        out.push_back({"construction", o.kind == "dqg" ? check_dqg(one_group(o), W) : check_cb(S, W)});
        return out;
    }
    if (c == "smash") {
        if (o.kind != "action" && o.kind != "smash" && o.kind != "sep-diagonal")
            throw UsageError("--construction smash needs --kind action, smash or sep-diagonal");
        FiniteGroup H = one_group(o);
        std::size_t n = need(o.set, "--set", o.kind);
        QActions acts = permutation_actions(H, action_table(o, H, n));
        SeparabilityIdempotent S = diagonal_on_set(n);
        HopfAlgebra Qh = group_hopf(H);
        Report alg;
        smash_algebra(S.B, S.C, Qh, acts, &alg);
        out.push_back({"smash algebra", alg});
        Wmha W(smash_wmha(S, Qh, acts));
        describe(info, W);
        out.push_back({"axioms and source/target", verify_all(W)});
        out.push_back({"construction", check_smash(S, Qh, acts, W)});
        return out;
    }
    throw UsageError("unknown construction '" + c + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Construct and verify finite-dimensional weak multiplier Hopf algebras"};
    app.require_subcommand(1);
    Options o;
    CLI::App* verify = app.add_subcommand("verify", "Build an instance and run every check");
    verify->add_option("--kind", o.kind, "groupoid-file, pair, action, group, disjoint-union, dqg, sep-diagonal or smash")
        ->required()
        ->check(CLI::IsMember({"groupoid-file", "pair", "action", "group", "disjoint-union", "dqg", "sep-diagonal", "smash"}));
    verify->add_option("--size", o.size, "number of points of a pair groupoid");
    verify->add_option("--set", o.set, "number of points of the set X");
    verify->add_option("--group", o.groups, "Z<n> or S3; repeat for disjoint-union");
    verify->add_option("--swap", o.swap, "two points swapped by the generator of the group")->expected(2);
    verify->add_option("--input", o.input, "groupoid JSON file");
    verify->add_option("--construction", o.construction, "functions, convolution, cb or smash")
        ->check(CLI::IsMember({"functions", "convolution", "cb", "smash"}));
    verify->add_option("--report", o.report, "write the JSON report here");
    verify->add_flag("--list-checks", o.list_checks, "print check names and statements instead of a summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Report info;
    std::vector<Section> sections;
    try {
        sections = run(o, info);
    } catch (const GroupoidParseError& e) {
        std::cerr << "error: " << o.input << ": " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    bool ok = true;
    std::size_t total = 0, failed = 0;
    nlohmann::ordered_json j;
    nlohmann::ordered_json inst = nlohmann::ordered_json::object();
    for (const auto& [k, v] : info.values)
        inst[k] = v;
    j["instance"] = inst;
    j["sections"] = nlohmann::ordered_json::array();
    for (auto& s : sections) {
        s.report.title = s.label;
        ok = ok && s.report.all_pass();
        for (const auto& c : s.report.checks) {
            ++total;
            failed += c.pass ? 0 : 1;
        }
        j["sections"].push_back(to_json(s.report));
    }
    j["passed"] = ok;

    if (o.list_checks) {
        for (const auto& s : sections)
            for (const auto& c : s.report.checks)
                std::cout << c.name << "\t" << c.statement << "\n";
    } else {
        for (const auto& [k, v] : info.values)
            std::cout << k << ": " << v << "\n";
        for (const auto& s : sections) {
            std::size_t f = 0;
            for (const auto& c : s.report.checks)
                f += c.pass ? 0 : 1;
            std::cout << s.label << ": " << s.report.checks.size() << " checks, " << f << " failed\n";
            for (const auto& c : s.report.checks)
                if (!c.pass)
                    std::cout << "  FAIL " << c.name << ": " << c.witness << "\n";
            for (const auto& [k, v] : s.report.values)
                if (k.rfind("dim", 0) == 0 || k.find("γ") != std::string::npos || k == "regular")
                    std::cout << "  " << k << " = " << v << "\n";
        }
        std::cout << (ok ? "PASS" : "FAIL") << " (" << total - failed << "/" << total << ")\n";
    }
    if (!o.report.empty()) {
        std::ofstream out(o.report);
        if (!out) {
            std::cerr << "error: cannot write " << o.report << "\n";
            return 2;
        }
        out << j.dump(2) << "\n";
    }
    return ok ? 0 : 1;
}
