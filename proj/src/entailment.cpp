#include "gtscegar/entailment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>

namespace gtscegar {

namespace {

using Clock = std::chrono::steady_clock;

std::atomic<std::uint64_t> g_calls{0}, g_proved{0}, g_refuted{0}, g_unknown{0};

struct OutOfTime {};

struct Deadline {
    Clock::time_point at;
    void check() const
    {
        if (Clock::now() >= at)
            throw OutOfTime{};
    }
};

Deadline deadline_after(std::int64_t millis)
{
    return {Clock::now() + std::chrono::milliseconds(std::max<std::int64_t>(millis, 0))};
}

bool is_empty_graph(const Graph& g) { return g.node_count() == 0 && g.edge_count() == 0; }

std::optional<GraphPtr> search_model(const CondPtr& a, int nodeBound, int edgeBound, const Deadline* dl)
{
    for (int n = 0; n <= nodeBound; ++n)
        for (int e = 0; e <= edgeBound; ++e) {
            if (n == 0 && e > 0)
                break;
            for (const GraphPtr& g : graphs_with(n, e)) {
                if (dl)
                    dl->check();
                if (satisfies(*g, a))
                    return g;
            }
        }
    return std::nullopt;
}

bool lifted_terminal(const Branch& b, bool childTrue)
{
    return b.arrow.is_lifted() && b.child->branches().empty() && b.child->is_true() == childTrue;
}

// Sound syntactic sufficient condition for a |= b.
bool implied_syntactically(const CondPtr& a, const CondPtr& b)
{
    if (b->universal()) {
        for (const Branch& bb : b->branches()) {
            bool covered = false;
            if (a->universal()) {
                for (const Branch& ab : a->branches()) {
                    if (branch_key(ab) == branch_key(bb) ||
                        (lifted_terminal(ab, false) && bb.child->is_false() &&
                         embeds_over_root(ab.arrow, bb.arrow))) {
                        covered = true;
                        break;
                    }
                }
            }
            if (!covered)
                return false;
        }
        return true;
    }
    if (!a->universal()) {
        std::set<std::string> keys;
        for (const Branch& bb : b->branches())
            keys.insert(branch_key(bb));
        for (const Branch& ab : a->branches()) {
            bool covered = keys.count(branch_key(ab)) > 0;
            // exists P . true is implied by exists Q . true when P embeds in Q.
            for (const Branch& bb : b->branches()) {
                if (covered)
                    break;
                covered = lifted_terminal(bb, true) && lifted_terminal(ab, true) &&
                          embeds_over_root(bb.arrow, ab.arrow);
            }
            if (!covered)
                return false;
        }
        return true;
    }
    return false;
}

// Tableau search for unsatisfiability of a set of conditions over a common
// root. Existential branches are witnessed by shifting every other item along
// their arrow; disjunctions are split.
class Tableau {
public:
    struct Item {
        CondPtr cond;
        bool goal = false;
    };
    enum class Outcome { Closed, Open, Cutoff };

    Tableau(Deadline dl, std::size_t maxSize) : dl_(dl), maxSize_(maxSize) {}

    bool unsatisfiable(std::vector<Item> items, int maxDepth)
    {
        for (int depth = 0; depth <= maxDepth; ++depth) {
            Outcome o = expand(items, depth, 0);
            if (o == Outcome::Closed)
                return true;
            if (o == Outcome::Open)
                return false;
        }
        return false;
    }

private:
    static constexpr int kFreeStepLimit = 16;
    Deadline dl_;
    std::size_t maxSize_;

    static CondPtr single(const CondPtr& parent, const Branch& b)
    {
        return make_sorted(parent->quantifier(), parent->root_ptr(), {b});
    }

    static CondPtr unwrap(const GraphPtr& root, const Branch& b)
    {
        Morphism toRoot = then(b.arrow.right, b.arrow.left.inverse());
        Morphism phi(b.child->root_ptr(), root, toRoot.node_map(), toRoot.edge_map());
        return transport(b.child, phi);
    }

    // Splits conjunctions, unwraps iso arrows and drops trivial items.
    // Returns false when the set is closed.
    bool normalize(std::vector<Item>& items)
    {
        std::vector<Item> work = std::move(items);
        std::vector<Item> out;
        std::set<std::string> keys;
        while (!work.empty()) {
            dl_.check();
            Item it = work.back();
            work.pop_back();
            if (it.cond->size() > maxSize_)
                throw WorkLimitExceeded("condition size limit reached");
            CondPtr c = simplify(it.cond);
            if (c->is_true())
                continue;
            if (c->is_false())
                return false;
            const auto& bs = c->branches();
            if (c->universal() && bs.size() > 1) {
                for (const Branch& b : bs)
                    work.push_back({single(c, b), it.goal});
                continue;
            }
            if (bs.size() == 1 && bs[0].arrow.is_iso()) {
                work.push_back({unwrap(c->root_ptr(), bs[0]), it.goal});
                continue;
            }
            if (keys.insert(c->key()).second)
                out.push_back({c, it.goal});
        }
        for (const Item& it : out)
            if (keys.count(negate(it.cond)->key()))
                return false;
        std::sort(out.begin(), out.end(), [](const Item& x, const Item& y) { return x.cond->key() < y.cond->key(); });
        items = std::move(out);
        return true;
    }

    // Cost of witnessing item c as a single step; -1 if c is not a step.
    static int step_cost(const CondPtr& c)
    {
        if (c->branches().size() != 1)
            return -1;
        const Cospan& f = c->branches()[0].arrow;
        if (!c->universal())
            return f.left.is_iso() ? 0 : 1;
        // A universal whose match is forced and never fails is a step too.
        if (f.left.is_iso() && f.keeps_all_nodes())
            return 0;
        return -1;
    }

    Outcome expand(std::vector<Item> items, int depth, int freeSteps)
    {
        if (!normalize(items))
            return Outcome::Closed;

        int best = -1, bestCost = 0;
        for (int i = 0; i < static_cast<int>(items.size()); ++i) {
            int cost = step_cost(items[i].cond);
            if (cost < 0)
                continue;
            if (cost == 0 && freeSteps >= kFreeStepLimit)
                cost = 1;
            auto rank = [&](int j, int cj) { return std::make_pair(cj, items[j].goal ? 1 : 0); };
            if (best < 0 || rank(i, cost) < rank(best, bestCost)) {
                best = i;
                bestCost = cost;
            }
        }
        if (best >= 0) {
            if (bestCost > depth)
                return Outcome::Cutoff;
            const Branch& b = items[best].cond->branches()[0];
            std::vector<Item> next{{b.child, items[best].goal}};
            for (int i = 0; i < static_cast<int>(items.size()); ++i) {
                if (i == best)
                    continue;
                dl_.check();
                next.push_back({shift(items[i].cond, b.arrow), items[i].goal});
            }
            return expand(std::move(next), depth - bestCost, bestCost == 0 ? freeSteps + 1 : freeSteps);
        }

        int split = -1;
        for (int i = 0; i < static_cast<int>(items.size()); ++i) {
            const CondPtr& c = items[i].cond;
            if (c->universal())
                continue;
            if (split < 0)
                split = i;
            else {
                const Item& s = items[split];
                auto rank = [](const Item& it) {
                    return std::make_pair(it.goal ? 0 : 1, it.cond->branches().size());
                };
                if (rank(items[i]) < rank(s))
                    split = i;
            }
        }
        if (split < 0)
            return Outcome::Open;
        bool cutoff = false;
        const CondPtr disj = items[split].cond;
        for (const Branch& b : disj->branches()) {
            std::vector<Item> next;
            for (int i = 0; i < static_cast<int>(items.size()); ++i)
                if (i != split)
                    next.push_back(items[i]);
            next.push_back({single(disj, b), items[split].goal});
            Outcome o = expand(std::move(next), depth, freeSteps);
            if (o == Outcome::Open)
                return Outcome::Open;
            cutoff = cutoff || o == Outcome::Cutoff;
        }
        return cutoff ? Outcome::Cutoff : Outcome::Closed;
    }
};

Verdict tally(Verdict v)
{
    switch (v.kind) {
    case VerdictKind::Proved:
        ++g_proved;
        break;
    case VerdictKind::Refuted:
        ++g_refuted;
        break;
    case VerdictKind::Unknown:
        ++g_unknown;
        break;
    }
    return v;
}

constexpr int kQuickNodes = 3;
constexpr int kQuickEdges = 3;

}  // namespace

std::string to_string(VerdictKind k)
{
    switch (k) {
    case VerdictKind::Proved:
        return "proved";
    case VerdictKind::Refuted:
        return "refuted";
    case VerdictKind::Unknown:
        return "unknown";
    }
    return "unknown";
}

Verdict entails(const CondPtr& a, const CondPtr& b, const Budget& budget)
{
    ++g_calls;
    if (!(a->root() == b->root()))
        throw RootMismatch("entailment between conditions with different roots");
    CondPtr sa = simplify(a), sb = simplify(b);
    if (sb->is_true() || sa->is_false() || sa->key() == sb->key() || implied_syntactically(sa, sb))
        return tally(Verdict::proof());

    Deadline dl = deadline_after(budget.wallMillis);
    ScopedWorkLimit limit({dl.at, budget.maxOverlaps, budget.maxWorkSteps});
    CondPtr goal = simplify(negate(sb));
    const bool closed = is_empty_graph(sa->root());
    try {
        if (closed) {
            CondPtr both = conjoin(sa, goal);
            if (auto g = search_model(both, std::min(kQuickNodes, budget.modelNodes),
                                      std::min(kQuickEdges, budget.modelEdges), &dl))
                return tally(Verdict::refutation(*g));
        }
        Tableau t(dl, budget.maxConditionSize);
        if (t.unsatisfiable({{sa, false}, {goal, true}}, budget.unfoldDepth))
            return tally(Verdict::proof());
        if (closed) {
            if (auto g = search_model(conjoin(sa, goal), budget.modelNodes, budget.modelEdges, &dl))
                return tally(Verdict::refutation(*g));
        }
    } catch (const OutOfTime&) {
        return tally(Verdict::unknown("budget exhausted"));
    } catch (const WorkLimitExceeded& e) {
        return tally(Verdict::unknown(std::string("budget exhausted: ") + e.what()));
    }
    return tally(Verdict::unknown("no proof within unfold depth and no counter-model within bounds"));
}

WorkLimit work_limit(const Budget& budget)
{
    return {deadline_after(budget.wallMillis).at, budget.maxOverlaps, budget.maxWorkSteps};
}

Verdict equivalent(const CondPtr& a, const CondPtr& b, const Budget& budget)
{
    Verdict there = entails(a, b, budget);
    if (there.refuted())
        return there;
    Verdict back = entails(b, a, budget);
    if (back.refuted())
        return back;
    if (there.proved() && back.proved())
        return Verdict::proof();
    return Verdict::unknown(there.proved() ? back.reason : there.reason);
}

std::optional<GraphPtr> find_model(const CondPtr& a, int nodeBound, int edgeBound)
{
    return search_model(a, nodeBound, edgeBound, nullptr);
}

bool bounded_entails(const CondPtr& a, const CondPtr& b, int nodeBound, int edgeBound)
{
    for (const GraphPtr& g : graphs_up_to(nodeBound, edgeBound))
        if (satisfies(*g, a) && !satisfies(*g, b))
            return false;
    return true;
}

bool refutes(const CondPtr& a, const Budget& budget)
{
    Deadline dl = deadline_after(budget.wallMillis);
    ScopedWorkLimit limit({dl.at, budget.maxOverlaps, budget.maxWorkSteps});
    Tableau t(dl, budget.maxConditionSize);
    try {
        return t.unsatisfiable({{a, false}}, budget.unfoldDepth);
    } catch (const OutOfTime&) {
        return false;
    } catch (const WorkLimitExceeded&) {
        return false;
    }
}

EntailmentStats entailment_stats() { return {g_calls.load(), g_proved.load(), g_refuted.load(), g_unknown.load()}; }

void reset_entailment_stats()
{
    g_calls = 0;
    g_proved = 0;
    g_refuted = 0;
    g_unknown = 0;
}

}  // namespace gtscegar
