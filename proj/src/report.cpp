#include "gtscegar/report.hpp"

#include "gtscegar/spec_io.hpp"

#include <json.hpp>

#include <sstream>

namespace gtscegar {

namespace {

using nlohmann::json;

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

json graph_json(const Graph& g)
{
    json edges = json::array();
    for (const Edge& e : g.edges)
        edges.push_back({e.src, e.tgt});
    return {{"nodes", g.node_count()}, {"edges", edges}};
}

}  // namespace

std::string write_dot(const Graph& g, const std::string& name)
{
    std::ostringstream os;
    os << "digraph \"" << dot_escape(name) << "\" {\n";
    for (int v = 0; v < g.node_count(); ++v)
        os << "  n" << v << " [label=\"" << v << "\"];\n";
    for (int e = 0; e < g.edge_count(); ++e)
        os << "  n" << g.edges[e].src << " -> n" << g.edges[e].tgt << " [label=\"e" << e << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string write_dot(const AbstractTS& ts, const PredicateSet& p, const std::string& name)
{
    std::ostringstream os;
    os << "digraph \"" << dot_escape(name) << "\" {\n";
    for (std::size_t s = 0; s < ts.states.size(); ++s) {
        os << "  s" << s << " [label=\"" << dot_escape(to_string(ts.states[s], p)) << "\"";
        if (s == 0)
            os << ", peripheries=2";
        os << "];\n";
    }
    for (const Transition& t : ts.transitions)
        os << "  s" << t.from << " -> s" << t.to << " [label=\"" << dot_escape(t.rule) << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string report_json(const VerdictReport& v, const ReportOptions& options)
{
    json j;
    j["outcome"] = to_string(v.outcome);
    j["exitCode"] = exit_code(v.outcome);
    j["trace"] = v.trace;
    if (v.witness)
        j["witness"] = graph_json(**v.witness);
    if (!v.reason.empty())
        j["reason"] = v.reason;
    j["iterations"] = v.iterations;
    j["refinements"] = v.refinements;

    json preds = json::array();
    for (const Predicate& p : v.predicates.predicates())
        preds.push_back({{"name", p.name}, {"source", to_string(p.source)}, {"condition", write_condition(p.cond)}});
    j["predicates"] = preds;

    json states = json::array();
    for (std::size_t s = 0; s < v.ts.states.size(); ++s) {
        const AbstractState& q = v.ts.states[s];
        states.push_back({{"id", s},
                          {"literals", q.key()},
                          {"label", to_string(q, v.predicates)},
                          {"bottom", q.bottom}});
    }
    j["states"] = states;

    json transitions = json::array();
    for (const Transition& t : v.ts.transitions)
        transitions.push_back({{"from", t.from}, {"rule", t.rule}, {"to", t.to}});
    j["transitions"] = transitions;

    json stats;
    stats["entailmentCalls"] = v.stats.entailmentCalls;
    stats["unknownLiterals"] = v.stats.unknownLiterals;
    stats["wallMillis"] = options.includeTiming ? json(v.stats.wallMillis) : json(nullptr);
    j["stats"] = stats;

    json history = json::array();
    for (const IterationRecord& it : v.history) {
        json names = json::array();
        for (const Predicate& p : it.predicates.predicates())
            names.push_back(p.name);
        json itStates = json::array();
        for (const AbstractState& q : it.ts.states)
            itStates.push_back(to_string(q, it.predicates));
        json h{{"predicates", names}, {"states", itStates}, {"transitions", it.ts.transitions.size()}};
        h["counterexample"] = it.trace ? json(*it.trace) : json(nullptr);
        history.push_back(h);
    }
    j["history"] = history;
    return j.dump(2) + "\n";
}

}  // namespace gtscegar
