#ifndef GTSCEGAR_TESTS_ORACLES_HPP
#define GTSCEGAR_TESTS_ORACLES_HPP

#include "gtscegar/condition.hpp"

#include <functional>
#include <random>
#include <vector>

namespace oracles {

using namespace gtscegar;

// Every (not necessarily injective) graph morphism a -> b, by brute force.
inline std::vector<Morphism> all_morphisms(const GraphPtr& a, const GraphPtr& b)
{
    std::vector<Morphism> out;
    int n = a->node_count();
    std::vector<int> nodes(n, 0);
    std::function<void(int)> assignNodes;
    std::function<void(int, std::vector<int>&)> assignEdges = [&](int e, std::vector<int>& edges) {
        if (e == a->edge_count()) {
            out.emplace_back(a, b, nodes, edges);
            return;
        }
        for (int f = 0; f < b->edge_count(); ++f) {
            if (b->edges[f].src == nodes[a->edges[e].src] && b->edges[f].tgt == nodes[a->edges[e].tgt]) {
                edges[e] = f;
                assignEdges(e + 1, edges);
            }
        }
    };
    assignNodes = [&](int v) {
        if (v == n) {
            std::vector<int> edges(a->edge_count(), -1);
            assignEdges(0, edges);
            return;
        }
        for (int w = 0; w < b->node_count(); ++w) {
            if (a->labels[v] != b->labels[w])
                continue;
            nodes[v] = w;
            assignNodes(v + 1);
        }
    };
    assignNodes(0);
    return out;
}

inline bool injective(const std::vector<int>& xs)
{
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (xs[i] == xs[j])
                return false;
    return true;
}

inline std::vector<Morphism> brute_monos(const GraphPtr& a, const GraphPtr& b)
{
    std::vector<Morphism> out;
    for (Morphism& m : all_morphisms(a, b))
        if (injective(m.node_map()) && injective(m.edge_map()))
            out.push_back(std::move(m));
    return out;
}

inline bool same_map(const Morphism& x, const Morphism& y)
{
    return x.node_map() == y.node_map() && x.edge_map() == y.edge_map();
}

using Rng = std::mt19937;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline GraphPtr random_graph(Rng& rng, int maxNodes, int maxEdges)
{
    int n = uniform(rng, 0, maxNodes);
    Graph g(n);
    if (n > 0) {
        int m = uniform(rng, 0, maxEdges);
        for (int i = 0; i < m; ++i)
            g.add_edge(uniform(rng, 0, n - 1), uniform(rng, 0, n - 1));
    }
    return share(std::move(g));
}

// A random supergraph of g together with the inclusion g -> result.
inline Morphism random_extension(Rng& rng, const GraphPtr& g, int extraNodes, int extraEdges)
{
    Graph h = *g;
    int add = uniform(rng, 0, extraNodes);
    for (int i = 0; i < add; ++i)
        h.add_node();
    if (h.node_count() > 0) {
        int m = uniform(rng, 0, extraEdges);
        for (int i = 0; i < m; ++i)
            h.add_edge(uniform(rng, 0, h.node_count() - 1), uniform(rng, 0, h.node_count() - 1));
    }
    std::vector<int> nodes(g->node_count()), edges(g->edge_count());
    for (int v = 0; v < g->node_count(); ++v)
        nodes[v] = v;
    for (int e = 0; e < g->edge_count(); ++e)
        edges[e] = e;
    return Morphism(g, share(std::move(h)), nodes, edges);
}

// The subgraph of x keeping the flagged items, with its inclusion.
inline Morphism subgraph(const GraphPtr& x, const std::vector<bool>& keepNode, const std::vector<bool>& keepEdge)
{
    Graph b;
    std::vector<int> pos(x->node_count(), -1), nodes, edges;
    for (int v = 0; v < x->node_count(); ++v)
        if (keepNode[v]) {
            pos[v] = b.add_node(x->labels[v]);
            nodes.push_back(v);
        }
    for (int e = 0; e < x->edge_count(); ++e) {
        const Edge& ed = x->edges[e];
        if (keepEdge[e] && pos[ed.src] >= 0 && pos[ed.tgt] >= 0) {
            b.add_edge(pos[ed.src], pos[ed.tgt]);
            edges.push_back(e);
        }
    }
    return Morphism(share(std::move(b)), x, nodes, edges);
}

// Random cospan root -> X <- B: X extends root, B drops some items of X that
// lie outside the root image (and occasionally keeps everything).
inline Cospan random_arrow(Rng& rng, const GraphPtr& root, int extraNodes, int extraEdges, bool allowDrop)
{
    Morphism left = random_extension(rng, root, extraNodes, extraEdges);
    const GraphPtr& x = left.target_ptr();
    std::vector<bool> keepNode(x->node_count(), true), keepEdge(x->edge_count(), true);
    if (allowDrop) {
        for (int e = root->edge_count(); e < x->edge_count(); ++e)
            if (uniform(rng, 0, 3) == 0)
                keepEdge[e] = false;
        for (int v = root->node_count(); v < x->node_count(); ++v)
            if (uniform(rng, 0, 5) == 0)
                keepNode[v] = false;
    }
    return Cospan{left, subgraph(x, keepNode, keepEdge)};
}

inline CondPtr random_condition(Rng& rng, const GraphPtr& root, int depth, bool allowDrop = true)
{
    if (depth == 0 || uniform(rng, 0, 4) == 0)
        return uniform(rng, 0, 1) ? Condition::truth(root) : Condition::falsity(root);
    Quantifier q = uniform(rng, 0, 1) ? Quantifier::Universal : Quantifier::Existential;
    int k = uniform(rng, 1, 2);
    std::vector<Branch> branches;
    for (int i = 0; i < k; ++i) {
        Cospan arrow = random_arrow(rng, root, 2, 2, allowDrop);
        CondPtr child = random_condition(rng, arrow.codomain_ptr(), depth - 1, allowDrop);
        branches.push_back(Branch{arrow, child, {}});
    }
    return Condition::make(q, root, std::move(branches));
}

}  // namespace oracles

#endif
