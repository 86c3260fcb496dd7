#ifndef GTSCEGAR_TESTS_FIXTURES_HPP
#define GTSCEGAR_TESTS_FIXTURES_HPP

#include "gtscegar/condition.hpp"
#include "gtscegar/rules.hpp"

#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fixtures {

using namespace gtscegar;

inline GraphPtr graph(int n, std::initializer_list<std::pair<int, int>> es = {})
{
    Graph g(n);
    for (auto [s, t] : es)
        g.add_edge(s, t);
    return share(std::move(g));
}

inline Morphism mor(const GraphPtr& a, const GraphPtr& b, std::vector<int> nodes)
{
    auto m = morphism_from_nodes(a, b, nodes);
    if (!m)
        throw std::logic_error("fixture morphism does not exist");
    return *m;
}

inline Cospan cospan(const GraphPtr& a, const GraphPtr& x, const GraphPtr& b, std::vector<int> leftNodes,
                     std::vector<int> rightNodes)
{
    return Cospan{mor(a, x, std::move(leftNodes)), mor(b, x, std::move(rightNodes))};
}

inline Cospan lifted(const GraphPtr& a, const GraphPtr& b, std::vector<int> nodes)
{
    return lift(mor(a, b, std::move(nodes)));
}

inline std::vector<int> iota(int n)
{
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = i;
    return v;
}

inline GraphPtr empty_graph() { return graph(0); }

// Closed "forbid this pattern" / "require this pattern".
inline CondPtr forbid_pattern(const GraphPtr& p) { return forbid(Morphism::from_empty(p)); }
inline CondPtr require_pattern(const GraphPtr& p) { return require(Morphism::from_empty(p)); }

// A node with a loop and an edge to a second node; the edges are dropped on
// the way to the codomain.
inline CondPtr bad()
{
    GraphPtr x = graph(2, {{0, 0}, {0, 1}});
    GraphPtr b = graph(2);
    return quantify(Quantifier::Existential, cospan(empty_graph(), x, b, {}, {0, 1}), Condition::truth(b));
}

// No edge between distinct nodes.
inline CondPtr init1()
{
    GraphPtr x = graph(2, {{0, 1}});
    GraphPtr b = graph(2);
    return quantify(Quantifier::Universal, cospan(empty_graph(), x, b, {}, {0, 1}), Condition::falsity(b));
}

// Init1 and no node with two loops.
inline CondPtr init2()
{
    GraphPtr x = graph(1, {{0, 0}, {0, 0}});
    GraphPtr b = graph(1);
    CondPtr noDouble =
        quantify(Quantifier::Universal, cospan(empty_graph(), x, b, {}, {0}), Condition::falsity(b));
    return conjoin(init1(), noDouble);
}

// Appends a new tail node behind a node carrying a loop.
inline Rule append_rule()
{
    GraphPtr i = graph(1);
    GraphPtr l = graph(1, {{0, 0}});
    GraphPtr r = graph(2, {{0, 1}, {1, 1}});
    return Rule{"append", cospan(empty_graph(), l, i, {}, {0}), cospan(empty_graph(), r, i, {}, {0}),
                Condition::truth(i)};
}

// Adds an edge 1->2 unless one already exists.
inline Rule edge_rule()
{
    GraphPtr i = graph(2);
    GraphPtr r = graph(2, {{0, 1}});
    CondPtr c = quantify(Quantifier::Universal, cospan(i, r, i, {0, 1}, {0, 1}), Condition::falsity(i));
    return Rule{"addEdge", cospan(empty_graph(), i, i, {}, {0, 1}), cospan(empty_graph(), r, i, {}, {0, 1}), c};
}

// The displayed three-conjunct weakest precondition of not-Bad under append.
inline CondPtr w1_displayed()
{
    std::vector<CondPtr> parts{forbid_pattern(graph(1, {{0, 0}, {0, 0}})),
                               forbid_pattern(graph(3, {{0, 0}, {1, 1}, {1, 2}})),
                               forbid_pattern(graph(2, {{0, 0}, {1, 1}, {0, 1}}))};
    return conjoin_all(empty_graph(), parts);
}

// Every node has an outgoing edge.
inline CondPtr every_node_has_successor()
{
    GraphPtr one = graph(1);
    GraphPtr edge = graph(2, {{0, 1}});
    CondPtr inner = require(mor(one, edge, {0}));
    return quantify(Quantifier::Universal, lifted(empty_graph(), one, {}), inner);
}

inline Cospan a_node_exists() { return lifted(empty_graph(), graph(1), {}); }

// The displayed result of shifting every_node_has_successor along
// a_node_exists; rooted at the designated node 0.
inline CondPtr shifted_successor_display()
{
    GraphPtr d = graph(1);
    GraphPtr dEdge = graph(2, {{0, 1}});
    CondPtr first = quantify(Quantifier::Universal, identity_cospan(d), require(mor(d, dEdge, {0})));
    GraphPtr two = graph(2);
    GraphPtr outOther = graph(3, {{1, 2}});
    GraphPtr toDesignated = graph(2, {{1, 0}});
    CondPtr either = disjoin(require(mor(two, outOther, {0, 1})), require(mor(two, toDesignated, {0, 1})));
    CondPtr second = quantify(Quantifier::Universal, lifted(d, two, {0}), either);
    return conjoin(first, second);
}

inline std::vector<GraphPtr> small_graphs(int n, int e) { return graphs_up_to(n, e); }

}  // namespace fixtures

#endif
