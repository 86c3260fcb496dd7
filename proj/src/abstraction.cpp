#include "gtscegar/abstraction.hpp"

#include <set>

namespace gtscegar {

std::string to_string(PredicateSource s)
{
    switch (s) {
    case PredicateSource::User:
        return "user";
    case PredicateSource::Wp:
        return "wp";
    case PredicateSource::Sp:
        return "sp";
    }
    return "user";
}

PredicateSet::PredicateSet(Predicate init, Predicate bad)
{
    preds_.push_back(std::move(init));
    preds_.push_back(std::move(bad));
}

bool PredicateSet::contains(const CondPtr& c) const
{
    const std::string k = simplify(c)->key();
    for (const Predicate& p : preds_)
        if (simplify(p.cond)->key() == k)
            return true;
    return false;
}

bool PredicateSet::add(Predicate p)
{
    if (contains(p.cond))
        return false;
    std::set<std::string> names;
    for (const Predicate& q : preds_)
        names.insert(q.name);
    if (names.count(p.name)) {
        std::string base = p.name;
        for (int i = 2;; ++i) {
            std::string candidate = base + "_" + std::to_string(i);
            if (!names.count(candidate)) {
                p.name = candidate;
                break;
            }
        }
    }
    preds_.push_back(std::move(p));
    return true;
}

AbstractState AbstractState::make_bottom(std::size_t n) { return {true, std::vector<Literal>(n, Literal::Unknown)}; }

AbstractState AbstractState::top(std::size_t n) { return {false, std::vector<Literal>(n, Literal::Unknown)}; }

std::string AbstractState::key() const
{
    if (bottom)
        return "_|_";
    std::string k;
    for (Literal l : literals)
        k += l == Literal::Pos ? '+' : l == Literal::Neg ? '-' : '?';
    return k;
}

std::size_t AbstractState::unknown_count() const
{
    if (bottom)
        return 0;
    std::size_t n = 0;
    for (Literal l : literals)
        n += l == Literal::Unknown;
    return n;
}

std::string to_string(const AbstractState& q, const PredicateSet& p)
{
    if (q.bottom)
        return "false";
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < q.literals.size(); ++i) {
        if (q.literals[i] == Literal::Unknown)
            continue;
        if (!first)
            out += ", ";
        first = false;
        out += (q.literals[i] == Literal::Neg ? "!" : "") + p[i].name;
    }
    return out + "}";
}

CondPtr gamma(const AbstractState& q, const PredicateSet& p)
{
    GraphPtr root = share(Graph{});
    if (q.bottom)
        return Condition::falsity(root);
    std::vector<CondPtr> parts;
    for (std::size_t i = 0; i < q.literals.size(); ++i) {
        if (q.literals[i] == Literal::Pos)
            parts.push_back(p[i].cond);
        else if (q.literals[i] == Literal::Neg)
            parts.push_back(negate(p[i].cond));
    }
    return conjoin_all(root, parts);
}

AbstractState Abstraction::alpha_hat(const CondPtr& a) const
{
    const std::size_t n = p_.size();
    CondPtr sa = simplify(a);
    std::vector<GraphPtr> models;
    Verdict empty = entails(sa, Condition::falsity(sa->root_ptr()), budget_);
    if (empty.proved())
        return AbstractState::make_bottom(n);
    if (empty.refuted())
        models.push_back(empty.counterModel);

    // A known model of a that violates the target already refutes it.
    auto refuted_by_known = [&](const CondPtr& target) {
        for (const GraphPtr& g : models)
            if (!satisfies(*g, target))
                return true;
        return false;
    };
    auto try_entail = [&](const CondPtr& target) {
        if (refuted_by_known(target))
            return false;
        Verdict v = entails(sa, target, budget_);
        if (v.refuted())
            models.push_back(v.counterModel);
        return v.proved();
    };

    AbstractState q = AbstractState::top(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool pos = try_entail(p_[i].cond);
        bool neg = try_entail(negate(p_[i].cond));
        if (pos && neg)
            return AbstractState::make_bottom(n);
        q.literals[i] = pos ? Literal::Pos : neg ? Literal::Neg : Literal::Unknown;
    }
    return q;
}

AbstractState Abstraction::sp_hat(const AbstractState& q, const Rule& rule)
{
    if (q.bottom)
        return q;
    const std::string k = q.key() + "|" + rule.name;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = spCache_.find(k);
        if (it != spCache_.end())
            return it->second;
    }
    // A postcondition too large to compute is over-approximated by top.
    CondPtr post;
    try {
        ScopedWorkLimit limit(work_limit(budget_));
        post = sp(gamma(q, p_), rule);
    } catch (const WorkLimitExceeded&) {
        std::lock_guard<std::mutex> lock(mu_);
        ++approximations_;
    }
    AbstractState next = post ? alpha_hat(post) : AbstractState::top(p_.size());
    std::lock_guard<std::mutex> lock(mu_);
    spCache_.emplace(k, next);
    return next;
}

bool Abstraction::provably_safe(const AbstractState& q)
{
    if (q.bottom)
        return true;
    const std::string k = q.key();
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = safeCache_.find(k);
        if (it != safeCache_.end())
            return it->second;
    }
    bool safe = entails(gamma(q, p_), negate(p_.bad().cond), budget_).proved();
    std::lock_guard<std::mutex> lock(mu_);
    safeCache_.emplace(k, safe);
    return safe;
}

ExploreResult Abstraction::explore(const ReactiveSystem& system, const ExploreLimits& limits,
                                   const std::set<Trace>& ignored)
{
    ExploreResult res;
    AbstractTS& ts = res.ts;
    std::map<std::string, int> index;

    auto path_to = [&](int s) {
        Trace trace;
        std::vector<AbstractState> states;
        for (int cur = s; cur >= 0; cur = ts.parent[cur]) {
            states.push_back(ts.states[cur]);
            if (ts.parent[cur] >= 0)
                trace.push_back(ts.parentRule[cur]);
        }
        return std::make_pair(Trace(trace.rbegin(), trace.rend()),
                              std::vector<AbstractState>(states.rbegin(), states.rend()));
    };
    // Returns true when exploration has to stop at state s.
    auto report_if_unsafe = [&](int s) {
        if (provably_safe(ts.states[s]))
            return false;
        auto [trace, states] = path_to(s);
        if (ignored.count(trace)) {
            ++res.ignoredUnsafe;
            return false;
        }
        res.unsafeTrace = std::move(trace);
        res.traceStates = std::move(states);
        return true;
    };
    auto discover = [&](const AbstractState& q, int parent, const std::string& rule) {
        if (ts.states.size() >= limits.maxStates)
            throw LimitExceeded("abstract state limit of " + std::to_string(limits.maxStates) + " exceeded");
        int id = static_cast<int>(ts.states.size());
        index.emplace(q.key(), id);
        ts.states.push_back(q);
        ts.parent.push_back(parent);
        ts.parentRule.push_back(rule);
        return id;
    };

    int init = discover(alpha_hat(p_.init().cond), -1, "");
    if (report_if_unsafe(init))
        return res;
    for (std::size_t cur = 0; cur < ts.states.size(); ++cur) {
        const AbstractState q = ts.states[cur];
        if (q.bottom)
            continue;
        for (const Rule& rule : system.rules) {
            AbstractState next = sp_hat(q, rule);
            int to;
            auto it = index.find(next.key());
            if (it != index.end()) {
                to = it->second;
            } else {
                to = discover(next, static_cast<int>(cur), rule.name);
                if (report_if_unsafe(to)) {
                    ts.transitions.push_back({static_cast<int>(cur), rule.name, to});
                    return res;
                }
            }
            ts.transitions.push_back({static_cast<int>(cur), rule.name, to});
        }
    }
    return res;
}

AbstractState alpha_sets(const std::vector<GraphPtr>& xs, const PredicateSet& p)
{
    if (xs.empty())
        return AbstractState::make_bottom(p.size());
    AbstractState q = AbstractState::top(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        bool allPos = true, allNeg = true;
        for (const GraphPtr& g : xs) {
            bool s = satisfies(*g, p[i].cond);
            allPos = allPos && s;
            allNeg = allNeg && !s;
        }
        q.literals[i] = allPos ? Literal::Pos : allNeg ? Literal::Neg : Literal::Unknown;
    }
    return q;
}

}  // namespace gtscegar
