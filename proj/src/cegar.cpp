#include "gtscegar/cegar.hpp"

#include <chrono>
#include <set>

namespace gtscegar {

std::string to_string(SpuriousMode m) { return m == SpuriousMode::Wp ? "wp" : "sp"; }

std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::Safe:
        return "safe";
    case Outcome::Unsafe:
        return "unsafe";
    case Outcome::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

int exit_code(Outcome o)
{
    switch (o) {
    case Outcome::Safe:
        return 0;
    case Outcome::Unsafe:
        return 1;
    case Outcome::Inconclusive:
        return 2;
    }
    return 2;
}

std::vector<const Rule*> resolve_trace(const Trace& trace, const ReactiveSystem& system)
{
    std::vector<const Rule*> out;
    for (const std::string& name : trace) {
        const Rule* r = system.find(name);
        if (!r)
            throw InputError("unknown rule '" + name + "' in trace");
        out.push_back(r);
    }
    return out;
}

std::vector<GraphPtr> replay(const GraphPtr& start, const std::vector<const Rule*>& trace)
{
    std::vector<GraphPtr> cur{start};
    for (const Rule* r : trace)
        cur = rule_apply_set(cur, *r);
    return cur;
}

std::optional<GraphPtr> extract_witness(const Trace& trace, const CondPtr& init, const CondPtr& bad,
                                        const WitnessBounds& bounds, const ReactiveSystem& system,
                                        std::string* diagnostic)
{
    std::vector<const Rule*> rules = resolve_trace(trace, system);
    CondPtr safeAfter = negate(bad);
    std::vector<CondPtr> chain;
    try {
        ScopedWorkLimit limit(work_limit(Budget{}));
        chain = wp_trace(rules, safeAfter);
    } catch (const WorkLimitExceeded& e) {
        if (diagnostic)
            *diagnostic = std::string("budget exhausted computing the wp chain: ") + e.what();
        return std::nullopt;
    }
    CondPtr head = chain.empty() ? safeAfter : chain.front();
    auto start = find_model(simplify(conjoin(init, negate(head))), bounds.nodes, bounds.edges);
    if (!start) {
        if (diagnostic)
            *diagnostic = "no start graph within witness bounds";
        return std::nullopt;
    }
    for (const GraphPtr& g : replay(*start, rules))
        if (satisfies(*g, bad))
            return start;
    if (diagnostic)
        *diagnostic = "replay of the candidate start graph reached no bad graph";
    return std::nullopt;
}

SpuriousnessResult check_spurious(const Trace& trace, const CondPtr& init, const CondPtr& bad, SpuriousMode mode,
                                  const ReactiveSystem& system, const Budget& budget, const WitnessBounds& bounds)
{
    std::vector<const Rule*> rules = resolve_trace(trace, system);
    CondPtr safeAfter = negate(bad);
    SpuriousnessResult res;
    Verdict v;
    std::vector<CondPtr> intermediates;
    std::vector<CondPtr> chain;
    try {
        ScopedWorkLimit limit(work_limit(budget));
        chain = mode == SpuriousMode::Wp ? wp_trace(rules, safeAfter) : sp_trace(init, rules);
    } catch (const WorkLimitExceeded& e) {
        res.reason = std::string("budget exhausted computing the ") + (mode == SpuriousMode::Wp ? "wp" : "sp") +
                     " chain: " + e.what();
        return res;
    }
    if (mode == SpuriousMode::Wp) {
        CondPtr head = chain.empty() ? safeAfter : chain.front();
        v = entails(init, head, budget);
        if (chain.size() > 1)
            intermediates.assign(chain.begin() + 1, chain.end());
        res.chain = std::move(chain);
    } else {
        CondPtr last = chain.empty() ? init : chain.back();
        v = entails(last, safeAfter, budget);
        if (chain.size() > 1)
            intermediates.assign(chain.begin(), chain.end() - 1);
        res.chain = std::move(chain);
    }
    switch (v.kind) {
    case VerdictKind::Proved:
        res.kind = SpuriousnessResult::Kind::Spurious;
        res.intermediates = std::move(intermediates);
        break;
    case VerdictKind::Refuted: {
        res.kind = SpuriousnessResult::Kind::Real;
        std::string diag;
        res.witness = extract_witness(trace, init, bad, bounds, system, &diag);
        if (!res.witness)
            res.reason = "witness not materialized: " + diag;
        break;
    }
    case VerdictKind::Unknown:
        res.kind = SpuriousnessResult::Kind::Undetermined;
        res.reason = v.reason;
        break;
    }
    return res;
}

PredicateSet refine(const PredicateSet& p, const std::vector<CondPtr>& intermediates, bool splitConjuncts,
                    PredicateSource source)
{
    PredicateSet out = p;
    const std::string prefix = source == PredicateSource::Sp ? "S" : "W";
    int counter = 0;
    for (const Predicate& q : p.predicates())
        counter += q.source == source;
    auto add = [&](const CondPtr& c) {
        if (c->is_true() || c->is_false())
            return;
        if (out.add(Predicate{prefix + std::to_string(counter + 1), c, source}))
            ++counter;
    };
    for (const CondPtr& c : intermediates) {
        CondPtr s = simplify(c);
        if (splitConjuncts && s->universal() && s->branches().size() > 1) {
            for (const Branch& b : s->branches())
                add(make_sorted(Quantifier::Universal, s->root_ptr(), {b}));
        } else {
            add(s);
        }
    }
    return out;
}

VerdictReport run(const ReactiveSystem& system, const Predicate& init, const Predicate& bad, const CegarConfig& config)
{
    if (!system.names_unique())
        throw InputError("rule names must be unique");
    for (const Rule& r : system.rules)
        if (!r.valid())
            throw InputError("rule '" + r.name + "' is malformed");
    if (init.cond->root().node_count() != 0 || bad.cond->root().node_count() != 0)
        throw InputError("Init and Bad must be conditions over the empty graph");

    const auto start = std::chrono::steady_clock::now();
    const EntailmentStats before = entailment_stats();
    VerdictReport rep;
    PredicateSet p(init, bad);
    rep.predicates = p;

    auto finish = [&](VerdictReport& r) -> VerdictReport& {
        r.stats.entailmentCalls = entailment_stats().calls - before.calls;
        r.stats.unknownLiterals = 0;
        for (const AbstractState& q : r.ts.states)
            r.stats.unknownLiterals += q.unknown_count();
        r.stats.wallMillis = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        return r;
    };

    Verdict initial = entails(init.cond, negate(bad.cond), config.budget);
    if (initial.refuted()) {
        rep.outcome = Outcome::Unsafe;
        rep.witness = initial.counterModel;
        rep.reason = "Init does not entail not-Bad";
        return finish(rep);
    }

    std::set<Trace> ignored;
    for (;;) {
        Abstraction abs(p, config.budget);
        ExploreResult er;
        try {
            er = abs.explore(system, config.limits, ignored);
        } catch (const LimitExceeded& e) {
            rep.outcome = Outcome::Inconclusive;
            rep.reason = e.what();
            rep.predicates = p;
            return finish(rep);
        }
        ++rep.iterations;
        rep.history.push_back({p, er.ts, er.unsafeTrace});
        rep.predicates = p;
        rep.ts = er.ts;
        if (!er.unsafeTrace) {
            if (er.ignoredUnsafe > 0) {
                rep.outcome = Outcome::Inconclusive;
                rep.reason = "only counterexamples of undetermined spuriousness remain";
            } else {
                rep.outcome = Outcome::Safe;
            }
            return finish(rep);
        }
        const Trace trace = *er.unsafeTrace;
        SpuriousnessResult sr =
            check_spurious(trace, init.cond, bad.cond, config.mode, system, config.budget, config.witness);
        if (sr.kind == SpuriousnessResult::Kind::Real) {
            rep.outcome = Outcome::Unsafe;
            rep.trace = trace;
            rep.witness = sr.witness;
            rep.reason = sr.reason;
            return finish(rep);
        }
        if (sr.kind == SpuriousnessResult::Kind::Undetermined) {
            if (config.skipUndetermined) {
                ignored.insert(trace);
                continue;
            }
            rep.outcome = Outcome::Inconclusive;
            rep.trace = trace;
            rep.reason = "spuriousness undetermined: " + sr.reason;
            return finish(rep);
        }
        if (rep.refinements >= config.maxRefinements) {
            rep.outcome = Outcome::Inconclusive;
            rep.trace = trace;
            rep.reason = "refinement limit reached";
            return finish(rep);
        }
        PredicateSource source = config.mode == SpuriousMode::Wp ? PredicateSource::Wp : PredicateSource::Sp;
        PredicateSet refined = refine(p, sr.intermediates, config.splitConjuncts, source);
        // Without new intermediates fall back to the whole chain, endpoints
        // included, so that the abstraction still gains precision.
        if (refined.size() == p.size())
            refined = refine(p, sr.chain, config.splitConjuncts, source);
        if (refined.size() == p.size()) {
            rep.outcome = Outcome::Inconclusive;
            rep.trace = trace;
            rep.reason = "spurious counterexample yields no new predicates";
            return finish(rep);
        }
        p = std::move(refined);
        ++rep.refinements;
        ignored.clear();
    }
}

}  // namespace gtscegar
