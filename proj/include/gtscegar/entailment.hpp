#ifndef GTSCEGAR_ENTAILMENT_HPP
#define GTSCEGAR_ENTAILMENT_HPP

#include "gtscegar/condition.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace gtscegar {

struct Budget {
    std::int64_t wallMillis = 10000;
    int unfoldDepth = 3;
    int modelNodes = 4;
    int modelEdges = 6;
    // Per enumeration; exceeding it makes the verdict Unknown.
    std::size_t maxOverlaps = 20000;
    // Per call, summed over all enumerations and shifts.
    std::size_t maxWorkSteps = 200000;
    // Largest condition (in branches) a tableau item may grow to.
    std::size_t maxConditionSize = 4000;
};

// Work limit for one budgeted operation starting now.
WorkLimit work_limit(const Budget& budget);

enum class VerdictKind { Proved, Refuted, Unknown };

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    GraphPtr counterModel;  // set iff Refuted
    std::string reason;     // set iff Unknown

    bool proved() const { return kind == VerdictKind::Proved; }
    bool refuted() const { return kind == VerdictKind::Refuted; }
    static Verdict proof() { return {VerdictKind::Proved, nullptr, {}}; }
    static Verdict refutation(GraphPtr g) { return {VerdictKind::Refuted, std::move(g), {}}; }
    static Verdict unknown(std::string why) { return {VerdictKind::Unknown, nullptr, std::move(why)}; }
};

std::string to_string(VerdictKind k);

// Sound three-valued entailment between closed conditions: Proved implies
// a |= b, Refuted carries a graph satisfying a but not b.
Verdict entails(const CondPtr& a, const CondPtr& b, const Budget& budget = {});
Verdict equivalent(const CondPtr& a, const CondPtr& b, const Budget& budget = {});

// Smallest graph (nodes, then edges, then canonical key) within the bounds
// satisfying a.
std::optional<GraphPtr> find_model(const CondPtr& a, int nodeBound, int edgeBound);
bool bounded_entails(const CondPtr& a, const CondPtr& b, int nodeBound, int edgeBound);

// Tableau proof attempt that a (rooted anywhere) is unsatisfiable.
bool refutes(const CondPtr& a, const Budget& budget);

struct EntailmentStats {
    std::uint64_t calls = 0;
    std::uint64_t proved = 0;
    std::uint64_t refuted = 0;
    std::uint64_t unknown = 0;
};
EntailmentStats entailment_stats();
void reset_entailment_stats();

}  // namespace gtscegar

#endif
