#include "support/properties.hpp"

#include <doctest.h>

using namespace fixtures;

namespace {

std::set<std::string> keys(const std::vector<GraphPtr>& gs)
{
    std::set<std::string> out;
    for (const GraphPtr& g : gs)
        out.insert(canonical_key(*g));
    return out;
}

}  // namespace

TEST_CASE("rules are well formed")
{
    for (const Rule& r : properties::sample_rules())
        CHECK(r.valid());
    ReactiveSystem sys{properties::sample_rules()};
    CHECK(sys.names_unique());
    REQUIRE(sys.find("append"));
    CHECK(sys.find("append")->interface().node_count() == 1);
    CHECK_FALSE(sys.find("missing"));
}

TEST_CASE("append moves the loop to a new tail")
{
    auto results = step(*graph(1, {{0, 0}}), append_rule());
    REQUIRE(results.size() == 1);
    CHECK(are_isomorphic(*results[0].result, *graph(2, {{0, 1}, {1, 1}})));
    CHECK(results[0].match.node(0) == 0);
    CHECK(step(*graph(2, {{0, 1}}), append_rule()).empty());
    auto fromDouble = step(*graph(1, {{0, 0}, {0, 0}}), append_rule());
    REQUIRE(fromDouble.size() == 1);
    CHECK(are_isomorphic(*fromDouble[0].result, *graph(2, {{0, 0}, {0, 1}, {1, 1}})));
    CHECK(step(*graph(2, {{0, 0}, {0, 1}}), append_rule()).size() == 1);
    CHECK(step(*graph(3, {{0, 0}, {1, 1}, {0, 2}}), append_rule()).size() == 2);
}

TEST_CASE("application conditions block matches")
{
    Rule r = edge_rule();
    auto fresh = rule_apply_set({graph(2)}, r);
    REQUIRE(fresh.size() == 1);
    CHECK(are_isomorphic(*fresh[0], *graph(2, {{0, 1}})));
    auto cycle = rule_apply_set({graph(2, {{0, 1}})}, r);
    REQUIRE(cycle.size() == 1);
    CHECK(are_isomorphic(*cycle[0], *graph(2, {{0, 1}, {1, 0}})));
    CHECK(rule_apply_set({graph(2, {{0, 1}, {1, 0}})}, r).empty());
}

TEST_CASE("deletion obeys the dangling condition")
{
    Rule delNode = properties::sample_rules()[2];
    CHECK(step(*graph(1, {{0, 0}}), delNode).empty());
    auto two = step(*graph(2), delNode);
    CHECK(two.size() == 1);
    CHECK(two[0].result->node_count() == 1);
    Rule delEdge = properties::sample_rules()[3];
    auto gone = step(*graph(2, {{0, 1}, {0, 1}}), delEdge);
    REQUIRE(gone.size() == 1);
    CHECK(gone[0].result->edge_count() == 1);
}

TEST_CASE("weakest precondition of not-Bad under append")
{
    CondPtr w = wp(append_rule(), negate(bad()));
    for (const GraphPtr& g : graphs_up_to(3, 4))
        CHECK(satisfies(*g, w) == satisfies(*g, w1_displayed()));
}

TEST_CASE("strongest postcondition of Init1 under append")
{
    CondPtr s = sp(init1(), append_rule());
    std::vector<GraphPtr> hosts = graphs_up_to(3, 3), models, post;
    for (const GraphPtr& g : hosts) {
        if (satisfies(*g, init1()))
            models.push_back(g);
        if (satisfies(*g, s))
            post.push_back(g);
    }
    std::set<std::string> successors;
    for (const GraphPtr& g : rule_apply_set(models, append_rule()))
        if (g->node_count() <= 3 && g->edge_count() <= 3)
            successors.insert(canonical_key(*g));
    CHECK(keys(post) == successors);
}

TEST_CASE("trace transformers produce one condition per step")
{
    Rule a = append_rule();
    std::vector<const Rule*> trace{&a, &a};
    auto w = wp_trace(trace, negate(bad()));
    REQUIRE(w.size() == 2);
    CHECK(structurally_equal(w[1], wp(a, negate(bad()))));
    CHECK(structurally_equal(w[0], wp(a, w[1])));
    auto s = sp_trace(init2(), trace);
    REQUIRE(s.size() == 2);
    CHECK(structurally_equal(s[0], sp(init2(), a)));
}
