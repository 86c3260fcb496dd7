#include "gtscegar/rules.hpp"

#include <map>
#include <set>

namespace gtscegar {

bool Rule::valid() const
{
    return left.valid() && right.valid() && left.domain().node_count() == 0 && right.domain().node_count() == 0 &&
           left.codomain() == right.codomain() && appCond && appCond->root() == left.codomain();
}

const Rule* ReactiveSystem::find(const std::string& name) const
{
    for (const Rule& r : rules)
        if (r.name == name)
            return &r;
    return nullptr;
}

bool ReactiveSystem::names_unique() const
{
    std::set<std::string> seen;
    for (const Rule& r : rules)
        if (!seen.insert(r.name).second)
            return false;
    return true;
}

std::vector<StepResult> step(const Graph& g, const Rule& rule)
{
    GraphPtr host = share(g);
    std::map<std::string, StepResult> results;
    for (const Morphism& m : enumerate_monos(rule.left.middle_ptr(), host)) {
        auto pc = pushout_complement(rule.left.right, m);
        if (!pc)
            continue;
        if (!satisfies_at(pc->first.target(), pc->first, rule.appCond))
            continue;
        Morphism iToR(pc->first.source_ptr(), rule.right.middle_ptr(), rule.right.right.node_map(),
                      rule.right.right.edge_map());
        MorphismPair po = pushout(iToR, pc->first);
        GraphPtr out = share(canonical_graph(po.first.target()));
        std::string key = canonical_key(*out);
        if (results.count(key))
            continue;
        Cospan ctx{pc->first, Morphism::from_empty(pc->first.target_ptr())};
        results.emplace(std::move(key), StepResult{out, m, std::move(ctx)});
    }
    std::vector<StepResult> out;
    for (auto& [k, r] : results)
        out.push_back(std::move(r));
    return out;
}

std::vector<GraphPtr> rule_apply_set(const std::vector<GraphPtr>& xs, const Rule& rule)
{
    std::map<std::string, GraphPtr> seen;
    for (const GraphPtr& x : xs)
        for (StepResult& r : step(*x, rule))
            seen.emplace(canonical_key(*r.result), r.result);
    std::vector<GraphPtr> out;
    for (auto& [k, g] : seen)
        out.push_back(g);
    return out;
}

CondPtr sp(const CondPtr& a, const Rule& rule)
{
    CondPtr inner = conjoin(rule.appCond, shift(a, rule.left));
    return simplify(quantify(Quantifier::Existential, rule.right, inner));
}

CondPtr wp(const Rule& rule, const CondPtr& b)
{
    CondPtr inner = disjoin(negate(rule.appCond), shift(b, rule.right));
    return simplify(quantify(Quantifier::Universal, rule.left, inner));
}

std::vector<CondPtr> sp_trace(const CondPtr& a, const std::vector<const Rule*>& trace)
{
    std::vector<CondPtr> out;
    CondPtr cur = a;
    for (const Rule* r : trace) {
        cur = sp(cur, *r);
        out.push_back(cur);
    }
    return out;
}

std::vector<CondPtr> wp_trace(const std::vector<const Rule*>& trace, const CondPtr& b)
{
    std::vector<CondPtr> out(trace.size());
    CondPtr cur = b;
    for (std::size_t i = trace.size(); i-- > 0;) {
        cur = wp(*trace[i], cur);
        out[i] = cur;
    }
    return out;
}

}  // namespace gtscegar
