#include "support/properties.hpp"

#include "gtscegar/report.hpp"
#include "gtscegar/spec_io.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace fixtures;
namespace fs = std::filesystem;

namespace {

// Wall-clock limits per criterion, in seconds.
constexpr double kShiftLimit = 10;
constexpr double kWpLimit = 60;
constexpr double kSpLimit = 300;
constexpr double kUnrefinedLimit = 60;
constexpr double kRefinedLimit = 120;     // each of the two parts
constexpr double kSmallSystemLimit = 30;  // each system

// Bounds of the model comparisons.
constexpr int kShiftNodes = 3, kShiftEdges = 4;
constexpr int kWpNodes = 4, kWpEdges = 6;
constexpr int kSpNodes = 4, kSpEdges = 5;
constexpr int kSpCases = 200;
constexpr int kPropertyCases = 200;

struct Check {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SystemSpec load(const std::string& name)
{
    ParseResult r = parse_spec(read_file(fs::path(GTSCEGAR_SPEC_DIR) / name));
    if (!r.spec)
        throw std::runtime_error(name + ": " + to_string(r.errors.front()));
    return *r.spec;
}

int run_cli(const std::string& args)
{
    std::string cmd = std::string("'") + GTSCEGAR_CLI + "' " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string spec_arg(const std::string& name)
{
    return "'" + (fs::path(GTSCEGAR_SPEC_DIR) / name).string() + "'";
}

VerdictReport verify_spec(const SystemSpec& s, const std::string& initName)
{
    CegarConfig config;
    apply_config(s.system->config, config);
    return run(s.reactive_system(), {initName, s.find_condition(initName)->cond},
               {s.system->bad, s.find_condition(s.system->bad)->cond}, config);
}

Check shift_fidelity()
{
    Check o;
    CondPtr shifted = shift(every_node_has_successor(), a_node_exists());
    CondPtr displayed = shifted_successor_display();
    GraphPtr one = graph(1);
    int compared = 0;
    for (const GraphPtr& host : graphs_up_to(kShiftNodes, kShiftEdges))
        for (int v = 0; v < host->node_count(); ++v) {
            Morphism at = mor(one, host, {v});
            ++compared;
            o.require(satisfies_at(*host, at, shifted) == satisfies_at(*host, at, displayed),
                      "disagreement on " + to_string(*host) + " at node " + std::to_string(v));
        }
    if (o.pass)
        o.detail = std::to_string(compared) + " rooted graphs agree";
    return o;
}

Check wp_reproduction()
{
    Check o;
    Rule append = append_rule();
    CondPtr w = wp(append, negate(bad()));
    CondPtr displayed = w1_displayed();
    std::vector<GraphPtr> hosts = graphs_up_to(kWpNodes, kWpEdges);
    for (const GraphPtr& g : hosts)
        o.require(satisfies(*g, w) == satisfies(*g, displayed), "disagreement on " + to_string(*g));
    Verdict fix = equivalent(wp(append, displayed), displayed);
    o.require(fix.proved(), "wp(append, W1) == W1 not proved: " + to_string(fix.kind) + " " + fix.reason);
    if (o.pass)
        o.detail = std::to_string(hosts.size()) + " graphs agree, wp(append, W1) == W1 proved";
    return o;
}

Check sp_oracle()
{
    Check o;
    properties::PropertyResult r = properties::sp_oracle(kSpCases, 22, kSpNodes, kSpEdges);
    o.require(r.cases >= kSpCases && r.failures == 0, std::to_string(r.failures) + " mismatches: " + r.firstFailure);
    if (o.pass)
        o.detail = std::to_string(r.cases) + " conditions, 0 mismatches";
    return o;
}

Check unrefined()
{
    Check o;
    SystemSpec s = load("running_example.gts");
    VerdictReport r = verify_spec(s, "Init1");
    o.require(r.outcome == gtscegar::Outcome::Unsafe, "outcome " + to_string(r.outcome));
    o.require(r.trace == Trace{"append"}, "trace is not [append]");
    o.require(r.witness && are_isomorphic(**r.witness, *graph(1, {{0, 0}, {0, 0}})),
              "witness is not a node with two loops");
    o.require(exit_code(r.outcome) == 1, "exit code " + std::to_string(exit_code(r.outcome)));
    int cli = run_cli("verify " + spec_arg("running_example.gts") + " --init Init1");
    o.require(cli == 1, "command-line exit code " + std::to_string(cli));
    if (o.pass)
        o.detail = "unsafe, trace [append], witness " + to_string(**r.witness) + ", exit 1";
    return o;
}

Check refined(double& seeded, double& automatic)
{
    Check o;
    SystemSpec s = load("running_example.gts");
    const CondPtr& init = s.find_condition("Init2")->cond;
    const CondPtr& badCond = s.find_condition("Bad")->cond;
    const CondPtr& w1 = s.find_condition("W1")->cond;
    ReactiveSystem system = s.reactive_system();

    auto t0 = std::chrono::steady_clock::now();
    PredicateSet p({"Init2", init}, {"Bad", badCond});
    p.add({"W1", w1, PredicateSource::User});
    Abstraction abs(p, Budget{});
    ExploreResult er = abs.explore(system);
    o.require(!er.unsafeTrace, "seeded exploration found a counterexample");
    o.require(er.ts.states.size() == 2, "seeded exploration has " + std::to_string(er.ts.states.size()) + " states");
    if (er.ts.states.size() == 2) {
        o.require(er.ts.states[0].key() == "+-+" && er.ts.states[1].key() == "--+", "unexpected fixpoint states");
        bool edges = er.ts.transitions.size() == 2 && er.ts.transitions[0].from == 0 && er.ts.transitions[0].to == 1 &&
                     er.ts.transitions[1].from == 1 && er.ts.transitions[1].to == 1;
        o.require(edges, "unexpected fixpoint transitions");
    }
    for (const AbstractState& q : er.ts.states)
        o.require(abs.provably_safe(q), "state " + q.key() + " not provably safe");
    seeded = seconds_since(t0);
    o.require(seeded < kRefinedLimit, "seeded exploration took " + fixed(seeded) + " s");

    t0 = std::chrono::steady_clock::now();
    CegarConfig config;
    apply_config(s.system->config, config);
    VerdictReport r = run(system, {"Init2", init}, {"Bad", badCond}, config);
    automatic = seconds_since(t0);
    o.require(config.mode == SpuriousMode::Wp, "running example is not configured for wp mode");
    o.require(r.outcome == gtscegar::Outcome::Safe, "automatic run: " + to_string(r.outcome) + " " + r.reason);
    o.require(r.refinements == 1 && r.predicates.size() == 3, "automatic run did not add exactly one predicate");
    if (r.predicates.size() == 3) {
        o.require(r.predicates[2].source == PredicateSource::Wp, "added predicate is not from wp");
        o.require(equivalent(r.predicates[2].cond, w1).proved(), "added predicate is not equivalent to W1");
    }
    o.require(automatic < kRefinedLimit, "automatic run took " + fixed(automatic) + " s");
    if (o.pass)
        o.detail = "(a) 2-state fixpoint in " + fixed(seeded) + " s, (b) safe after adding W1 in " + fixed(automatic) +
                   " s";
    return o;
}

Check small_systems()
{
    Check o;
    std::string times;
    for (const char* name : {"delete_two.gts", "out_edge.gts"}) {
        SystemSpec s = load(name);
        auto t0 = std::chrono::steady_clock::now();
        VerdictReport r = verify_spec(s, s.system->init);
        double t = seconds_since(t0);
        o.require(r.outcome == gtscegar::Outcome::Safe, std::string(name) + ": " + to_string(r.outcome));
        o.require(r.refinements == 1, std::string(name) + ": " + std::to_string(r.refinements) + " refinements");
        o.require(t < kSmallSystemLimit, std::string(name) + " took " + fixed(t) + " s");
        times += (times.empty() ? "" : ", ") + std::string(name) + " " + fixed(t) + " s";
    }
    if (o.pass)
        o.detail = "safe after one refinement: " + times;
    return o;
}

Check property_suites()
{
    using namespace properties;
    Check o;
    std::vector<std::function<PropertyResult()>> suites{
        [] { return negation_duality(kPropertyCases); },
        [] { return shift_adjunction(kPropertyCases); },
        [] { return wp_hoare(kPropertyCases); },
        [] { return pushout_universal(kPropertyCases); },
        [] { return pullback_universal(kPropertyCases); },
        [] { return complement_property(kPropertyCases); },
        [] { return bc_square_kinds(kPropertyCases); },
        [] { return entailment_soundness(kPropertyCases); },
        [] { return refinement_progress(kPropertyCases); },
    };
    int cases = 0;
    for (const auto& suite : suites) {
        PropertyResult r = suite();
        cases += r.cases;
        o.require(r.cases >= kPropertyCases, r.name + ": only " + std::to_string(r.cases) + " cases");
        o.require(r.failures == 0, r.name + ": " + std::to_string(r.failures) + " failures, first: " + r.firstFailure);
    }
    if (o.pass)
        o.detail = std::to_string(suites.size()) + " suites, " + std::to_string(cases) + " cases, 0 failures";
    return o;
}

Check determinism()
{
    Check o;
    fs::path dir = fs::temp_directory_path() / "gtscegar_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    struct Case {
        std::string spec, extra, tag;
    };
    std::vector<Case> cases{{"running_example.gts", "", "running"},
                            {"running_example.gts", " --init Init1", "running_init1"},
                            {"delete_two.gts", "", "delete_two"},
                            {"out_edge.gts", "", "out_edge"}};
    for (const Case& c : cases) {
        std::string outputs[2];
        for (int i = 0; i < 2; ++i) {
            fs::path out = dir / (c.tag + "_" + std::to_string(i) + ".json");
            run_cli("verify " + spec_arg(c.spec) + c.extra + " --verbosity 0 --json '" + out.string() + "'");
            outputs[i] = read_file(out);
        }
        o.require(!outputs[0].empty(), c.tag + ": no report written");
        o.require(outputs[0] == outputs[1], c.tag + ": reports differ");
    }
    fs::remove_all(dir);
    if (o.pass)
        o.detail = std::to_string(cases.size()) + " runs byte-identical";
    return o;
}

}  // namespace

int main()
{
    int failed = 0;
    auto report = [&](int id, const std::string& title, double limit, const std::function<Check()>& check) {
        auto t0 = std::chrono::steady_clock::now();
        Check o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double t = seconds_since(t0);
        if (limit > 0 && t >= limit && o.pass) {
            o.pass = false;
            o.detail = "took " + fixed(t) + " s";
        }
        std::string budget = limit > 0 ? ", limit " + fixed(limit) + " s" : "";
        std::cout << "criterion " << id << " " << title << ": " << (o.pass ? "PASS" : "FAIL") << " (" << fixed(t)
                  << " s" << budget << ") " << o.detail << std::endl;
        failed += !o.pass;
    };

    report(1, "shift fidelity", kShiftLimit, shift_fidelity);
    report(2, "wp reproduction", kWpLimit, wp_reproduction);
    report(3, "sp oracle", kSpLimit, sp_oracle);
    report(4, "unrefined running example", kUnrefinedLimit, unrefined);
    double seeded = 0, automatic = 0;
    report(5, "refined running example", 0, [&] { return refined(seeded, automatic); });
    report(6, "delete-two and out-edge systems", 0, small_systems);
    report(7, "property suites", 0, property_suites);
    report(8, "determinism", 0, determinism);
    return failed == 0 ? 0 : 1;
}
