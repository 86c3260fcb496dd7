#include "support/properties.hpp"

#include <doctest.h>

using namespace fixtures;

namespace {

ReactiveSystem running_system() { return ReactiveSystem{{append_rule()}}; }

}  // namespace

TEST_CASE("outcomes and exit codes")
{
    CHECK(exit_code(Outcome::Safe) == 0);
    CHECK(exit_code(Outcome::Unsafe) == 1);
    CHECK(exit_code(Outcome::Inconclusive) == 2);
    CHECK(to_string(Outcome::Safe) == "safe");
    CHECK(to_string(SpuriousMode::Sp) == "sp");
}

TEST_CASE("trace resolution and replay")
{
    ReactiveSystem sys = running_system();
    auto rules = resolve_trace({"append", "append"}, sys);
    CHECK(rules.size() == 2);
    CHECK_THROWS_AS(resolve_trace({"nope"}, sys), InputError);
    auto reached = replay(graph(1, {{0, 0}}), rules);
    REQUIRE(reached.size() == 1);
    CHECK(are_isomorphic(*reached[0], *graph(3, {{0, 1}, {1, 2}, {2, 2}})));
}

TEST_CASE("spuriousness of the one-step trace")
{
    ReactiveSystem sys = running_system();
    SpuriousnessResult sr = check_spurious({"append"}, init2(), bad(), SpuriousMode::Wp, sys, Budget{});
    CHECK(sr.kind == SpuriousnessResult::Kind::Spurious);
    CHECK(sr.intermediates.empty());
    REQUIRE(sr.chain.size() == 1);
    CHECK(equivalent(sr.chain[0], w1_displayed()).proved());

    SpuriousnessResult real = check_spurious({"append"}, init1(), bad(), SpuriousMode::Wp, sys, Budget{});
    CHECK(real.kind == SpuriousnessResult::Kind::Real);
    REQUIRE(real.witness);
    CHECK(are_isomorphic(**real.witness, *graph(1, {{0, 0}, {0, 0}})));

    SpuriousnessResult forward = check_spurious({"append"}, init2(), bad(), SpuriousMode::Sp, sys, Budget{});
    CHECK(forward.kind == SpuriousnessResult::Kind::Spurious);
    CHECK(forward.chain.size() == 1);
}

TEST_CASE("witness extraction")
{
    auto w = extract_witness({"append"}, init1(), bad(), WitnessBounds{}, running_system());
    REQUIRE(w);
    CHECK(are_isomorphic(**w, *graph(1, {{0, 0}, {0, 0}})));
    std::string why;
    CHECK_FALSE(extract_witness({"append"}, init2(), bad(), WitnessBounds{}, running_system(), &why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("refinement adds fresh predicates")
{
    PredicateSet p({"Init", init2()}, {"Bad", bad()});
    PredicateSet q = refine(p, {w1_displayed(), w1_displayed(), Condition::truth(empty_graph())}, false);
    REQUIRE(q.size() == 3);
    CHECK(q[2].name == "W1");
    CHECK(q[2].source == PredicateSource::Wp);
    PredicateSet split = refine(p, {w1_displayed()}, true, PredicateSource::Sp);
    CHECK(split.size() == 5);
    CHECK(split[2].name == "S1");
    CHECK(split[4].name == "S3");
}

TEST_CASE("unrefined running example is unsafe")
{
    VerdictReport r = run(running_system(), {"Init", init1()}, {"Bad", bad()});
    CHECK(r.outcome == Outcome::Unsafe);
    CHECK(r.trace == Trace{"append"});
    REQUIRE(r.witness);
    CHECK(are_isomorphic(**r.witness, *graph(1, {{0, 0}, {0, 0}})));
    CHECK(r.refinements == 0);
}

TEST_CASE("refined running example is safe after one refinement")
{
    VerdictReport r = run(running_system(), {"Init", init2()}, {"Bad", bad()});
    CHECK(r.outcome == Outcome::Safe);
    CHECK(r.refinements == 1);
    CHECK(r.iterations == 2);
    REQUIRE(r.predicates.size() == 3);
    CHECK(equivalent(r.predicates[2].cond, w1_displayed()).proved());
    CHECK(r.ts.states.size() == 2);
    REQUIRE(r.history.size() == 2);
    CHECK(r.history[0].trace);
    CHECK_FALSE(r.history[1].trace);
    CHECK(r.stats.entailmentCalls > 0);
}

TEST_CASE("limits end the loop as inconclusive")
{
    CegarConfig noRefine;
    noRefine.maxRefinements = 0;
    VerdictReport r = run(running_system(), {"Init", init2()}, {"Bad", bad()}, noRefine);
    CHECK(r.outcome == Outcome::Inconclusive);
    CHECK(r.reason == "refinement limit reached");

    CegarConfig fewStates;
    fewStates.limits.maxStates = 1;
    VerdictReport s = run(running_system(), {"Init", init2()}, {"Bad", bad()}, fewStates);
    CHECK(s.outcome == Outcome::Inconclusive);
}

TEST_CASE("malformed inputs are rejected")
{
    ReactiveSystem twice{{append_rule(), append_rule()}};
    CHECK_THROWS_AS(run(twice, {"Init", init2()}, {"Bad", bad()}), InputError);
    CondPtr open = Condition::truth(graph(1));
    CHECK_THROWS_AS(run(running_system(), {"Init", open}, {"Bad", bad()}), InputError);
}

TEST_CASE("mutated variants are safe after refinement")
{
    for (const properties::SystemCase& sc : properties::running_example_variants()) {
        INFO(sc.name);
        VerdictReport r = run(sc.system, sc.init, sc.bad);
        CHECK(r.outcome == Outcome::Safe);
        CHECK(r.refinements == 1);
    }
}
