#ifndef GTSCEGAR_SPEC_IO_HPP
#define GTSCEGAR_SPEC_IO_HPP

#include "gtscegar/cegar.hpp"
#include "gtscegar/condition.hpp"
#include "gtscegar/rules.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gtscegar {

// A graph together with the names its nodes and edges carry in the source
// text. Unnamed edges have an empty name.
struct NamedGraph {
    std::string name;
    GraphPtr graph;
    std::vector<std::string> nodeNames;
    std::vector<std::string> edgeNames;
};

struct NamedCondition {
    std::string name;
    CondPtr cond;
};

struct SystemBlock {
    std::string init;
    std::string bad;
    std::vector<std::string> rules;
    std::map<std::string, std::string> config;
};

struct SystemSpec {
    std::vector<NamedGraph> graphs;
    std::vector<NamedCondition> conditions;
    std::vector<Rule> rules;
    std::optional<SystemBlock> system;

    const NamedGraph* find_graph(const std::string& name) const;
    const NamedCondition* find_condition(const std::string& name) const;
    const Rule* find_rule(const std::string& name) const;
    // Rules listed in the system block, or all rules without one.
    ReactiveSystem reactive_system() const;
};

struct ParseError {
    int line = 1;
    int column = 1;
    std::string message;
    std::string token;
};

std::string to_string(const ParseError& e);

struct ParseResult {
    std::optional<SystemSpec> spec;  // set iff errors is empty
    std::vector<ParseError> errors;

    bool ok() const { return errors.empty(); }
};

ParseResult parse_spec(const std::string& text);

// Fragments resolved against the graphs and conditions of an existing spec.
struct FragmentResult {
    std::optional<NamedGraph> graph;
    std::optional<Cospan> cospan;
    CondPtr cond;
    std::vector<ParseError> errors;

    bool ok() const { return errors.empty(); }
};

FragmentResult parse_graph_fragment(const std::string& text, const SystemSpec& context);
FragmentResult parse_cospan_fragment(const std::string& text, const SystemSpec& context);
// The expression is typed against the given root (empty graph by default).
FragmentResult parse_condition_fragment(const std::string& text, const SystemSpec& context,
                                        const GraphPtr& root = nullptr);

std::string write_graph(const Graph& g);
std::string write_cospan(const Cospan& c);
std::string write_condition(const CondPtr& a);
std::string write_spec(const SystemSpec& s);

bool structurally_equal(const SystemSpec& a, const SystemSpec& b);

// Applies validated system-block configuration entries.
void apply_config(const std::map<std::string, std::string>& entries, CegarConfig& config);

}  // namespace gtscegar

#endif
