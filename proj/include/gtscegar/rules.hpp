#ifndef GTSCEGAR_RULES_HPP
#define GTSCEGAR_RULES_HPP

#include "gtscegar/condition.hpp"

#include <string>
#include <vector>

namespace gtscegar {

// Rule with left side 0 -> L <- I, right side 0 -> R <- I and an
// application condition rooted at the interface I.
struct Rule {
    std::string name;
    Cospan left;
    Cospan right;
    CondPtr appCond;

    const Graph& interface() const { return left.codomain(); }
    bool valid() const;
};

struct ReactiveSystem {
    std::vector<Rule> rules;

    const Rule* find(const std::string& name) const;
    bool names_unique() const;
};

struct StepResult {
    GraphPtr result;
    Morphism match;  // L -> g
    Cospan context;  // I -> C <- 0
};

// Direct successors of g, one per isomorphism class of the result, sorted by
// canonical key.
std::vector<StepResult> step(const Graph& g, const Rule& rule);
// Iso-deduplicated successors of every graph in xs, sorted by canonical key.
std::vector<GraphPtr> rule_apply_set(const std::vector<GraphPtr>& xs, const Rule& rule);

CondPtr sp(const CondPtr& a, const Rule& rule);
CondPtr wp(const Rule& rule, const CondPtr& b);
std::vector<CondPtr> sp_trace(const CondPtr& a, const std::vector<const Rule*>& trace);
std::vector<CondPtr> wp_trace(const std::vector<const Rule*>& trace, const CondPtr& b);

}  // namespace gtscegar

#endif
