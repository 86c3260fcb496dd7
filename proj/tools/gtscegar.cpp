#include "gtscegar/cegar.hpp"
#include "gtscegar/report.hpp"
#include "gtscegar/spec_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gtscegar;

namespace {

constexpr int kInputError = 3;

struct Options {
    std::string specPath;
    std::string initName, badName;
    std::int64_t budgetMs = -1;
    int unfoldDepth = -1, modelNodes = -1, modelEdges = -1, maxRefinements = -1;
    std::string spuriousMode;
    bool splitConjuncts = false;
    std::size_t maxStates = 0;
    std::string jsonPath, dotDir;
    bool timing = false;
    int verbosity = 1;

    std::vector<std::string> predicateNames;
    std::string ruleName, condName, cospanText, graphText, lhs, rhs;
};

struct UsageError {
    std::string message;
};

SystemSpec load_spec(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError{"cannot read '" + path + "'"};
    std::stringstream ss;
    ss << in.rdbuf();
    ParseResult r = parse_spec(ss.str());
    if (!r.ok()) {
        std::ostringstream msg;
        msg << "parse errors in '" << path << "':";
        for (const ParseError& e : r.errors)
            msg << "\n  " << path << ":" << to_string(e);
        throw UsageError{msg.str()};
    }
    return std::move(*r.spec);
}

// Defaults, then the spec's config block, then the environment, then flags.
CegarConfig make_config(const SystemSpec& spec, const Options& o)
{
    CegarConfig c;
    if (spec.system)
        apply_config(spec.system->config, c);
    if (const char* env = std::getenv("GTSCEGAR_BUDGET_MS")) {
        try {
            std::size_t used = 0;
            long long ms = std::stoll(env, &used);
            if (used != std::string(env).size() || ms < 0)
                throw std::invalid_argument(env);
            c.budget.wallMillis = ms;
        } catch (const std::exception&) {
            throw UsageError{"GTSCEGAR_BUDGET_MS must be a nonnegative integer"};
        }
    }
    if (o.budgetMs >= 0)
        c.budget.wallMillis = o.budgetMs;
    if (o.unfoldDepth >= 0)
        c.budget.unfoldDepth = o.unfoldDepth;
    if (o.modelNodes >= 0)
        c.budget.modelNodes = o.modelNodes;
    if (o.modelEdges >= 0)
        c.budget.modelEdges = o.modelEdges;
    if (o.maxRefinements >= 0)
        c.maxRefinements = o.maxRefinements;
    if (!o.spuriousMode.empty())
        c.mode = o.spuriousMode == "sp" ? SpuriousMode::Sp : SpuriousMode::Wp;
    if (o.splitConjuncts)
        c.splitConjuncts = true;
    if (o.maxStates > 0)
        c.limits.maxStates = o.maxStates;
    return c;
}

const NamedCondition& condition_named(const SystemSpec& spec, const std::string& name)
{
    const NamedCondition* c = spec.find_condition(name);
    if (!c)
        throw UsageError{"unknown condition '" + name + "'"};
    return *c;
}

const Rule& rule_named(const SystemSpec& spec, const std::string& name)
{
    const Rule* r = spec.find_rule(name);
    if (!r)
        throw UsageError{"unknown rule '" + name + "'"};
    return *r;
}

std::pair<Predicate, Predicate> init_and_bad(const SystemSpec& spec, const Options& o)
{
    std::string init = o.initName, bad = o.badName;
    if (init.empty() && spec.system)
        init = spec.system->init;
    if (bad.empty() && spec.system)
        bad = spec.system->bad;
    if (init.empty() || bad.empty())
        throw UsageError{"no system block: pass --init and --bad"};
    return {Predicate{init, condition_named(spec, init).cond}, Predicate{bad, condition_named(spec, bad).cond}};
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError{"cannot write '" + path.string() + "'"};
    out << text;
}

std::string predicate_list(const PredicateSet& p)
{
    std::string out;
    for (const Predicate& q : p.predicates())
        out += (out.empty() ? "" : ", ") + q.name + " (" + to_string(q.source) + ")";
    return out;
}

int cmd_verify(const Options& o)
{
    SystemSpec spec = load_spec(o.specPath);
    CegarConfig config = make_config(spec, o);
    auto [init, bad] = init_and_bad(spec, o);
    VerdictReport rep = run(spec.reactive_system(), init, bad, config);

    if (o.verbosity >= 1) {
        std::cout << "outcome: " << to_string(rep.outcome) << "\n";
        if (rep.outcome == Outcome::Unsafe) {
            std::string t;
            for (const std::string& r : rep.trace)
                t += (t.empty() ? "" : ", ") + r;
            std::cout << "trace: [" << t << "]\n";
            std::cout << "witness: " << (rep.witness ? to_string(**rep.witness) : "none") << "\n";
        }
        if (!rep.reason.empty())
            std::cout << "reason: " << rep.reason << "\n";
        std::cout << "iterations: " << rep.iterations << ", refinements: " << rep.refinements << "\n";
        std::cout << "predicates: " << predicate_list(rep.predicates) << "\n";
        std::cout << "abstract states: " << rep.ts.states.size() << ", transitions: " << rep.ts.transitions.size()
                  << "\n";
        std::cout << "entailment calls: " << rep.stats.entailmentCalls << "\n";
    }
    if (o.verbosity >= 2) {
        for (std::size_t i = 0; i < rep.history.size(); ++i) {
            const IterationRecord& it = rep.history[i];
            std::cout << "iteration " << i + 1 << ": predicates " << predicate_list(it.predicates) << "\n";
            for (std::size_t s = 0; s < it.ts.states.size(); ++s)
                std::cout << "  s" << s << " = " << to_string(it.ts.states[s], it.predicates) << "\n";
            for (const Transition& t : it.ts.transitions)
                std::cout << "  s" << t.from << " --" << t.rule << "--> s" << t.to << "\n";
        }
        for (const Predicate& p : rep.predicates.predicates())
            std::cout << p.name << " = " << write_condition(p.cond) << "\n";
    }
    if (!o.jsonPath.empty())
        write_file(o.jsonPath, report_json(rep, ReportOptions{o.timing}));
    if (!o.dotDir.empty()) {
        std::filesystem::create_directories(o.dotDir);
        std::filesystem::path dir(o.dotDir);
        write_file(dir / "ts.dot", write_dot(rep.ts, rep.predicates));
        for (std::size_t i = 0; i < rep.history.size(); ++i)
            write_file(dir / ("ts_iteration" + std::to_string(i + 1) + ".dot"),
                       write_dot(rep.history[i].ts, rep.history[i].predicates));
        if (rep.witness)
            write_file(dir / "witness.dot", write_dot(**rep.witness, "witness"));
    }
    return exit_code(rep.outcome);
}

int cmd_explore(const Options& o)
{
    SystemSpec spec = load_spec(o.specPath);
    CegarConfig config = make_config(spec, o);
    auto [init, bad] = init_and_bad(spec, o);
    PredicateSet p(init, bad);
    for (const std::string& n : o.predicateNames)
        p.add(Predicate{n, condition_named(spec, n).cond, PredicateSource::User});
    Abstraction abs(p, config.budget);
    ExploreResult er = abs.explore(spec.reactive_system(), config.limits);
    for (std::size_t s = 0; s < er.ts.states.size(); ++s)
        std::cout << "s" << s << " = " << to_string(er.ts.states[s], p) << "\n";
    for (const Transition& t : er.ts.transitions)
        std::cout << "s" << t.from << " --" << t.rule << "--> s" << t.to << "\n";
    if (er.unsafeTrace) {
        std::string t;
        for (const std::string& r : *er.unsafeTrace)
            t += (t.empty() ? "" : ", ") + r;
        std::cout << "possibly unsafe after [" << t << "]\n";
    } else {
        std::cout << "every abstract state provably entails the negation of " << bad.name << "\n";
    }
    if (!o.dotDir.empty()) {
        std::filesystem::create_directories(o.dotDir);
        write_file(std::filesystem::path(o.dotDir) / "ts.dot", write_dot(er.ts, p));
    }
    return er.unsafeTrace ? exit_code(Outcome::Inconclusive) : exit_code(Outcome::Safe);
}

int cmd_transform(const Options& o, bool weakest)
{
    SystemSpec spec = load_spec(o.specPath);
    const Rule& r = rule_named(spec, o.ruleName);
    CondPtr c = condition_named(spec, o.condName).cond;
    if (!(c->root().empty()))
        throw UsageError{"condition '" + o.condName + "' is not over the empty graph"};
    std::cout << write_condition(weakest ? wp(r, c) : sp(c, r)) << "\n";
    return 0;
}

int cmd_shift(const Options& o)
{
    SystemSpec spec = load_spec(o.specPath);
    CondPtr c = condition_named(spec, o.condName).cond;
    FragmentResult f = parse_cospan_fragment(o.cospanText, spec);
    if (!f.ok()) {
        std::string msg = "invalid cospan:";
        for (const ParseError& e : f.errors)
            msg += "\n  " + to_string(e);
        throw UsageError{msg};
    }
    if (!(f.cospan->domain() == c->root()))
        throw UsageError{"cospan domain differs from the root of '" + o.condName + "'"};
    std::cout << write_condition(simplify(shift(c, *f.cospan))) << "\n";
    return 0;
}

int cmd_entail(const Options& o)
{
    SystemSpec spec = load_spec(o.specPath);
    CegarConfig config = make_config(spec, o);
    CondPtr a = condition_named(spec, o.lhs).cond, b = condition_named(spec, o.rhs).cond;
    if (!(a->root() == b->root()))
        throw UsageError{"conditions have different roots"};
    Verdict v = entails(a, b, config.budget);
    std::cout << to_string(v.kind) << "\n";
    if (v.refuted()) {
        std::cout << "counter-model: " << to_string(*v.counterModel) << "\n";
        if (!o.dotDir.empty()) {
            std::filesystem::create_directories(o.dotDir);
            write_file(std::filesystem::path(o.dotDir) / "counter_model.dot", write_dot(*v.counterModel, "counter_model"));
        }
    }
    if (!v.reason.empty())
        std::cout << "reason: " << v.reason << "\n";
    return v.proved() ? 0 : v.refuted() ? 1 : 2;
}

int cmd_step(const Options& o)
{
    SystemSpec spec = load_spec(o.specPath);
    const Rule& r = rule_named(spec, o.ruleName);
    FragmentResult f = parse_graph_fragment(o.graphText, spec);
    if (!f.ok()) {
        std::string msg = "invalid graph:";
        for (const ParseError& e : f.errors)
            msg += "\n  " + to_string(e);
        throw UsageError{msg};
    }
    std::vector<StepResult> results = step(*f.graph->graph, r);
    std::cout << results.size() << " result(s)\n";
    for (const StepResult& s : results)
        std::cout << write_graph(*s.result) << "\n";
    return 0;
}

void add_common(CLI::App* sub, Options& o, bool budget)
{
    sub->add_option("spec", o.specPath, "Specification file")->required();
    if (!budget)
        return;
    sub->add_option("--entail-budget-ms", o.budgetMs, "Wall-clock budget per entailment query")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--unfold-depth", o.unfoldDepth, "Tableau unfolding depth")->check(CLI::NonNegativeNumber);
    sub->add_option("--model-nodes", o.modelNodes, "Node bound of the counter-model search")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--model-edges", o.modelEdges, "Edge bound of the counter-model search")
        ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Predicate-abstraction model checker for graph transformation systems"};
    app.require_subcommand(1);

    CLI::App* verify = app.add_subcommand("verify", "Run the abstraction-refinement loop");
    add_common(verify, o, true);
    verify->add_option("--init", o.initName, "Initial condition (overrides the system block)");
    verify->add_option("--bad", o.badName, "Bad condition (overrides the system block)");
    verify->add_option("--max-refinements", o.maxRefinements, "Refinement limit")->check(CLI::NonNegativeNumber);
    verify->add_option("--spurious-mode", o.spuriousMode, "Spuriousness check: wp or sp")
        ->check(CLI::IsMember({"wp", "sp"}));
    verify->add_flag("--split-conjuncts", o.splitConjuncts, "Split universal conjunctions into predicates");
    verify->add_option("--max-states", o.maxStates, "Abstract state limit")->check(CLI::PositiveNumber);
    verify->add_option("--json", o.jsonPath, "Write the JSON report here");
    verify->add_option("--dot-dir", o.dotDir, "Write DOT files into this directory");
    verify->add_flag("--timing", o.timing, "Include wall-clock time in the JSON report");
    verify->add_option("--verbosity", o.verbosity, "0 quiet, 1 summary, 2 detail")->check(CLI::Range(0, 2));

    CLI::App* explore = app.add_subcommand("explore", "Build the abstract transition system only");
    add_common(explore, o, true);
    explore->add_option("--init", o.initName, "Initial condition");
    explore->add_option("--bad", o.badName, "Bad condition");
    explore->add_option("--predicates", o.predicateNames, "Additional predicate conditions")->delimiter(',');
    explore->add_option("--max-states", o.maxStates, "Abstract state limit")->check(CLI::PositiveNumber);
    explore->add_option("--dot-dir", o.dotDir, "Write DOT files into this directory");

    CLI::App* spCmd = app.add_subcommand("sp", "Strongest postcondition of a condition under a rule");
    add_common(spCmd, o, false);
    spCmd->add_option("rule", o.ruleName, "Rule name")->required();
    spCmd->add_option("condition", o.condName, "Condition name")->required();

    CLI::App* wpCmd = app.add_subcommand("wp", "Weakest precondition of a condition under a rule");
    add_common(wpCmd, o, false);
    wpCmd->add_option("rule", o.ruleName, "Rule name")->required();
    wpCmd->add_option("condition", o.condName, "Condition name")->required();

    CLI::App* shiftCmd = app.add_subcommand("shift", "Shift a condition along a cospan literal");
    add_common(shiftCmd, o, false);
    shiftCmd->add_option("condition", o.condName, "Condition name")->required();
    shiftCmd->add_option("cospan", o.cospanText, "Cospan literal, e.g. \"empty -> G <- H [a=b]\"")->required();

    CLI::App* entailCmd = app.add_subcommand("entail", "Decide entailment between two named conditions");
    add_common(entailCmd, o, true);
    entailCmd->add_option("lhs", o.lhs, "Premise condition")->required();
    entailCmd->add_option("rhs", o.rhs, "Conclusion condition")->required();
    entailCmd->add_option("--dot-dir", o.dotDir, "Write the counter-model as DOT here");

    CLI::App* stepCmd = app.add_subcommand("step", "Apply a rule to a graph");
    add_common(stepCmd, o, false);
    stepCmd->add_option("rule", o.ruleName, "Rule name")->required();
    stepCmd->add_option("graph", o.graphText, "Graph name or literal, e.g. \"{ nodes 0; edge: 0 -> 0; }\"")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*verify)
            return cmd_verify(o);
        if (*explore)
            return cmd_explore(o);
        if (*spCmd)
            return cmd_transform(o, false);
        if (*wpCmd)
            return cmd_transform(o, true);
        if (*shiftCmd)
            return cmd_shift(o);
        if (*entailCmd)
            return cmd_entail(o);
        if (*stepCmd)
            return cmd_step(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.message << "\n";
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const LimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(Outcome::Inconclusive);
    }
    return kInputError;
}
