#ifndef GTSCEGAR_CEGAR_HPP
#define GTSCEGAR_CEGAR_HPP

#include "gtscegar/abstraction.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtscegar {

enum class SpuriousMode { Wp, Sp };

std::string to_string(SpuriousMode m);

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Counterexample {
    Trace trace;
    std::vector<AbstractState> abstractStates;
};

struct SpuriousnessResult {
    enum class Kind { Spurious, Real, Undetermined };
    Kind kind = Kind::Undetermined;
    std::vector<CondPtr> intermediates;  // Spurious
    std::vector<CondPtr> chain;          // the full WP or SP chain
    std::optional<GraphPtr> witness;     // Real, when materialized
    std::string reason;                  // Undetermined, or Real without witness
};

struct WitnessBounds {
    int nodes = 5;
    int edges = 8;
};

// Resolves rule names against the system; throws InputError on unknown names.
std::vector<const Rule*> resolve_trace(const Trace& trace, const ReactiveSystem& system);

SpuriousnessResult check_spurious(const Trace& trace, const CondPtr& init, const CondPtr& bad, SpuriousMode mode,
                                  const ReactiveSystem& system, const Budget& budget,
                                  const WitnessBounds& bounds = {});

// Smallest start graph satisfying Init that reaches a Bad graph along the
// trace, confirmed by concrete replay.
std::optional<GraphPtr> extract_witness(const Trace& trace, const CondPtr& init, const CondPtr& bad,
                                        const WitnessBounds& bounds, const ReactiveSystem& system,
                                        std::string* diagnostic = nullptr);

// Concrete replay: every graph reachable from start along the trace.
std::vector<GraphPtr> replay(const GraphPtr& start, const std::vector<const Rule*>& trace);

PredicateSet refine(const PredicateSet& p, const std::vector<CondPtr>& intermediates, bool splitConjuncts,
                    PredicateSource source = PredicateSource::Wp);

struct CegarConfig {
    Budget budget;
    SpuriousMode mode = SpuriousMode::Wp;
    bool splitConjuncts = false;
    int maxRefinements = 10;
    WitnessBounds witness;
    ExploreLimits limits;
    // On undetermined spuriousness, continue with the next counterexample of
    // the same abstraction instead of stopping.
    bool skipUndetermined = false;
};

enum class Outcome { Safe, Unsafe, Inconclusive };

std::string to_string(Outcome o);
int exit_code(Outcome o);

struct IterationRecord {
    PredicateSet predicates;
    AbstractTS ts;
    std::optional<Trace> trace;
};

struct RunStats {
    std::uint64_t entailmentCalls = 0;
    std::uint64_t unknownLiterals = 0;
    std::int64_t wallMillis = 0;
};

struct VerdictReport {
    Outcome outcome = Outcome::Inconclusive;
    Trace trace;
    std::optional<GraphPtr> witness;
    std::string reason;
    int iterations = 0;
    int refinements = 0;
    PredicateSet predicates;
    AbstractTS ts;
    RunStats stats;
    std::vector<IterationRecord> history;
};

VerdictReport run(const ReactiveSystem& system, const Predicate& init, const Predicate& bad,
                  const CegarConfig& config = {});

}  // namespace gtscegar

#endif
