#ifndef GTSCEGAR_ABSTRACTION_HPP
#define GTSCEGAR_ABSTRACTION_HPP

#include "gtscegar/entailment.hpp"
#include "gtscegar/rules.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtscegar {

enum class PredicateSource { User, Wp, Sp };

std::string to_string(PredicateSource s);

struct Predicate {
    std::string name;
    CondPtr cond;
    PredicateSource source = PredicateSource::User;
};

class PredicateSet {
public:
    PredicateSet() = default;
    // Init and Bad become the first two predicates.
    PredicateSet(Predicate init, Predicate bad);

    const std::vector<Predicate>& predicates() const { return preds_; }
    std::size_t size() const { return preds_.size(); }
    const Predicate& operator[](std::size_t i) const { return preds_[i]; }
    const Predicate& init() const { return preds_.at(0); }
    const Predicate& bad() const { return preds_.at(1); }

    // Appends unless a structurally equal predicate exists; returns whether
    // it was added. The name is made unique if necessary.
    bool add(Predicate p);
    bool contains(const CondPtr& c) const;

private:
    std::vector<Predicate> preds_;
};

enum class Literal { Unknown, Pos, Neg };

struct AbstractState {
    bool bottom = false;
    std::vector<Literal> literals;

    static AbstractState make_bottom(std::size_t n);
    static AbstractState top(std::size_t n);
    // Stable textual key, e.g. "+-?" or "_|_".
    std::string key() const;
    std::size_t unknown_count() const;
    bool operator==(const AbstractState&) const = default;
    bool operator<(const AbstractState& o) const { return key() < o.key(); }
};

std::string to_string(const AbstractState& q, const PredicateSet& p);

CondPtr gamma(const AbstractState& q, const PredicateSet& p);

class LimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Transition {
    int from = 0;
    std::string rule;
    int to = 0;
};

struct AbstractTS {
    std::vector<AbstractState> states;  // BFS discovery order; states[0] is initial
    std::vector<Transition> transitions;
    std::vector<int> parent;            // BFS tree, -1 for the initial state
    std::vector<std::string> parentRule;
};

struct ExploreLimits {
    std::size_t maxStates = 10000;
};

using Trace = std::vector<std::string>;

struct ExploreResult {
    AbstractTS ts;
    std::optional<Trace> unsafeTrace;
    std::vector<AbstractState> traceStates;  // states visited along the trace
    // Unsafe states whose traces were listed as ignored and explored past.
    std::size_t ignoredUnsafe = 0;
};

// Abstract-domain engine with a cache for abstract successors.
class Abstraction {
public:
    Abstraction(PredicateSet p, Budget budget) : p_(std::move(p)), budget_(budget) {}

    const PredicateSet& predicates() const { return p_; }
    const Budget& budget() const { return budget_; }

    AbstractState alpha_hat(const CondPtr& a) const;
    AbstractState sp_hat(const AbstractState& q, const Rule& rule);
    // Successors widened to top because their postcondition hit the budget.
    std::size_t approximations() const { return approximations_; }
    // Does gamma(q) provably entail not-Bad?
    bool provably_safe(const AbstractState& q);
    // Breadth-first construction from alpha_hat(Init), stopping at the first
    // state not provably entailing not-Bad unless its trace is ignored.
    ExploreResult explore(const ReactiveSystem& system, const ExploreLimits& limits = {},
                          const std::set<Trace>& ignored = {});

private:
    PredicateSet p_;
    Budget budget_;
    std::mutex mu_;
    std::size_t approximations_ = 0;
    std::map<std::string, AbstractState> spCache_;
    std::map<std::string, bool> safeCache_;
};

// Literal fixed iff every member satisfies it; the empty set gives Bottom.
AbstractState alpha_sets(const std::vector<GraphPtr>& xs, const PredicateSet& p);

}  // namespace gtscegar

#endif
