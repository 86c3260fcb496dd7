#include "gtscegar/graph.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <set>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace gtscegar {

Graph::Graph(int nodeCount, std::vector<Edge> es) : labels(nodeCount, 0), edges(std::move(es)) {}

int Graph::add_node(Label l)
{
    labels.push_back(l);
    return node_count() - 1;
}

int Graph::add_edge(int s, int t)
{
    edges.push_back({s, t});
    return edge_count() - 1;
}

bool Graph::well_formed() const
{
    for (const auto& e : edges) {
        if (e.src < 0 || e.src >= node_count() || e.tgt < 0 || e.tgt >= node_count())
            return false;
    }
    return true;
}

GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

Morphism::Morphism(GraphPtr src, GraphPtr tgt, std::vector<int> nodeMap, std::vector<int> edgeMap)
    : src_(std::move(src)), tgt_(std::move(tgt)), nodes_(std::move(nodeMap)), edges_(std::move(edgeMap))
{
}

Morphism Morphism::identity(const GraphPtr& g)
{
    std::vector<int> n(g->node_count()), e(g->edge_count());
    std::iota(n.begin(), n.end(), 0);
    std::iota(e.begin(), e.end(), 0);
    return Morphism(g, g, std::move(n), std::move(e));
}

Morphism Morphism::from_empty(const GraphPtr& g) { return Morphism(share(Graph{}), g, {}, {}); }

bool Morphism::is_mono() const
{
    std::vector<bool> seenN(target().node_count()), seenE(target().edge_count());
    for (int x : nodes_) {
        if (seenN[x])
            return false;
        seenN[x] = true;
    }
    for (int x : edges_) {
        if (seenE[x])
            return false;
        seenE[x] = true;
    }
    return true;
}

bool Morphism::is_iso() const
{
    return is_mono() && source().node_count() == target().node_count() &&
           source().edge_count() == target().edge_count();
}

std::vector<bool> Morphism::node_image() const
{
    std::vector<bool> img(target().node_count(), false);
    for (int x : nodes_)
        img[x] = true;
    return img;
}

std::vector<bool> Morphism::edge_image() const
{
    std::vector<bool> img(target().edge_count(), false);
    for (int x : edges_)
        img[x] = true;
    return img;
}

Morphism Morphism::inverse() const
{
    std::vector<int> n(target().node_count(), -1), e(target().edge_count(), -1);
    for (int v = 0; v < static_cast<int>(nodes_.size()); ++v)
        n[nodes_[v]] = v;
    for (int x = 0; x < static_cast<int>(edges_.size()); ++x)
        e[edges_[x]] = x;
    return Morphism(tgt_, src_, std::move(n), std::move(e));
}

Morphism then(const Morphism& first, const Morphism& second)
{
    std::vector<int> n(first.source().node_count()), e(first.source().edge_count());
    for (int v = 0; v < static_cast<int>(n.size()); ++v)
        n[v] = second.node(first.node(v));
    for (int x = 0; x < static_cast<int>(e.size()); ++x)
        e[x] = second.edge(first.edge(x));
    return Morphism(first.source_ptr(), second.target_ptr(), std::move(n), std::move(e));
}

bool validate_morphism(const Morphism& h)
{
    const Graph& s = h.source();
    const Graph& t = h.target();
    if (static_cast<int>(h.node_map().size()) != s.node_count() ||
        static_cast<int>(h.edge_map().size()) != s.edge_count())
        return false;
    for (int v = 0; v < s.node_count(); ++v) {
        int w = h.node(v);
        if (w < 0 || w >= t.node_count() || s.labels[v] != t.labels[w])
            return false;
    }
    for (int e = 0; e < s.edge_count(); ++e) {
        int f = h.edge(e);
        if (f < 0 || f >= t.edge_count())
            return false;
        if (t.edges[f].src != h.node(s.edges[e].src) || t.edges[f].tgt != h.node(s.edges[e].tgt))
            return false;
    }
    return true;
}

std::optional<Morphism> morphism_from_nodes(const GraphPtr& src, const GraphPtr& tgt, const std::vector<int>& nodeMap)
{
    if (static_cast<int>(nodeMap.size()) != src->node_count())
        return std::nullopt;
    std::vector<bool> usedNode(tgt->node_count(), false);
    for (int v = 0; v < src->node_count(); ++v) {
        int w = nodeMap[v];
        if (w < 0 || w >= tgt->node_count() || usedNode[w] || src->labels[v] != tgt->labels[w])
            return std::nullopt;
        usedNode[w] = true;
    }
    std::vector<bool> usedEdge(tgt->edge_count(), false);
    std::vector<int> edgeMap(src->edge_count(), -1);
    for (int e = 0; e < src->edge_count(); ++e) {
        const Edge& se = src->edges[e];
        for (int f = 0; f < tgt->edge_count(); ++f) {
            const Edge& te = tgt->edges[f];
            if (!usedEdge[f] && te.src == nodeMap[se.src] && te.tgt == nodeMap[se.tgt]) {
                usedEdge[f] = true;
                edgeMap[e] = f;
                break;
            }
        }
        if (edgeMap[e] < 0)
            return std::nullopt;
    }
    return Morphism(src, tgt, nodeMap, std::move(edgeMap));
}

PartialMap PartialMap::none(const Graph& pattern)
{
    return {std::vector<int>(pattern.node_count(), -1), std::vector<int>(pattern.edge_count(), -1)};
}

PartialMap PartialMap::through(const Morphism& k, const Morphism& given)
{
    PartialMap p = none(k.target());
    for (int v = 0; v < k.source().node_count(); ++v)
        p.nodes[k.node(v)] = given.node(v);
    for (int e = 0; e < k.source().edge_count(); ++e)
        p.edges[k.edge(e)] = given.edge(e);
    return p;
}

namespace {

std::vector<std::vector<int>> edge_counts(const Graph& g)
{
    std::vector<std::vector<int>> c(g.node_count(), std::vector<int>(g.node_count(), 0));
    for (const auto& e : g.edges)
        ++c[e.src][e.tgt];
    return c;
}

class MonoSearch {
public:
    MonoSearch(const Graph& p, const Graph& h, const PartialMap& fixed, const MonoVisitor& visit)
        : P(p), H(h), fixed_(fixed), visit_(visit), cp_(edge_counts(p)), ch_(edge_counts(h))
    {
        nodeMap_.assign(P.node_count(), -1);
        edgeMap_.assign(P.edge_count(), -1);
        usedN_.assign(H.node_count(), false);
        usedE_.assign(H.edge_count(), false);
        outP_.assign(P.node_count(), 0);
        inP_.assign(P.node_count(), 0);
        outH_.assign(H.node_count(), 0);
        inH_.assign(H.node_count(), 0);
        for (const auto& e : P.edges) {
            ++outP_[e.src];
            ++inP_[e.tgt];
        }
        for (const auto& e : H.edges) {
            ++outH_[e.src];
            ++inH_[e.tgt];
        }
        order_nodes();
    }

    bool run()
    {
        if (P.node_count() > H.node_count() || P.edge_count() > H.edge_count())
            return true;
        return assign_node(0);
    }

private:
    void order_nodes()
    {
        std::vector<bool> placed(P.node_count(), false);
        for (int v = 0; v < P.node_count(); ++v) {
            if (fixed_.nodes[v] >= 0) {
                order_.push_back(v);
                placed[v] = true;
            }
        }
        while (static_cast<int>(order_.size()) < P.node_count()) {
            int best = -1;
            long bestScore = -1;
            for (int v = 0; v < P.node_count(); ++v) {
                if (placed[v])
                    continue;
                long links = 0;
                for (int u : order_)
                    links += cp_[u][v] + cp_[v][u];
                long score = links * 1000 + inP_[v] + outP_[v];
                if (score > bestScore) {
                    bestScore = score;
                    best = v;
                }
            }
            order_.push_back(best);
            placed[best] = true;
        }
    }

    bool compatible(int v, int h) const
    {
        if (P.labels[v] != H.labels[h] || usedN_[h])
            return false;
        if (outP_[v] > outH_[h] || inP_[v] > inH_[h])
            return false;
        if (cp_[v][v] > ch_[h][h])
            return false;
        for (int u = 0; u < P.node_count(); ++u) {
            int hu = nodeMap_[u];
            if (hu < 0 || u == v)
                continue;
            if (cp_[v][u] > ch_[h][hu] || cp_[u][v] > ch_[hu][h])
                return false;
        }
        return true;
    }

    bool assign_node(std::size_t k)
    {
        if (k == order_.size())
            return assign_edge(0);
        int v = order_[k];
        if (fixed_.nodes[v] >= 0) {
            int h = fixed_.nodes[v];
            if (!compatible(v, h))
                return true;
            return place(k, v, h);
        }
        for (int h = 0; h < H.node_count(); ++h) {
            if (!compatible(v, h))
                continue;
            if (!place(k, v, h))
                return false;
        }
        return true;
    }

    bool place(std::size_t k, int v, int h)
    {
        nodeMap_[v] = h;
        usedN_[h] = true;
        bool cont = assign_node(k + 1);
        usedN_[h] = false;
        nodeMap_[v] = -1;
        return cont;
    }

    bool assign_edge(int e)
    {
        if (e == P.edge_count())
            return visit_(nodeMap_, edgeMap_);
        int hs = nodeMap_[P.edges[e].src];
        int ht = nodeMap_[P.edges[e].tgt];
        auto tryEdge = [&](int f) {
            if (usedE_[f] || H.edges[f].src != hs || H.edges[f].tgt != ht)
                return true;
            edgeMap_[e] = f;
            usedE_[f] = true;
            bool cont = assign_edge(e + 1);
            usedE_[f] = false;
            edgeMap_[e] = -1;
            return cont;
        };
        if (fixed_.edges[e] >= 0)
            return tryEdge(fixed_.edges[e]);
        for (int f = 0; f < H.edge_count(); ++f) {
            if (!tryEdge(f))
                return false;
        }
        return true;
    }

    const Graph& P;
    const Graph& H;
    const PartialMap& fixed_;
    const MonoVisitor& visit_;
    std::vector<std::vector<int>> cp_, ch_;
    std::vector<int> outP_, inP_, outH_, inH_;
    std::vector<int> order_;
    std::vector<int> nodeMap_, edgeMap_;
    std::vector<bool> usedN_, usedE_;
};

}  // namespace

bool for_each_mono(const Graph& pattern, const Graph& host, const PartialMap& fixed, const MonoVisitor& visit)
{
    MonoSearch s(pattern, host, fixed, visit);
    return s.run();
}

std::vector<Morphism> enumerate_monos(const GraphPtr& pattern, const GraphPtr& host, const PartialMap& fixed)
{
    std::vector<Morphism> out;
    for_each_mono(*pattern, *host, fixed, [&](const std::vector<int>& n, const std::vector<int>& e) {
        out.emplace_back(pattern, host, n, e);
        return true;
    });
    return out;
}

std::vector<Morphism> enumerate_monos(const GraphPtr& pattern, const GraphPtr& host)
{
    return enumerate_monos(pattern, host, PartialMap::none(*pattern));
}

bool exists_mono(const Graph& pattern, const Graph& host, const PartialMap& fixed)
{
    return !for_each_mono(pattern, host, fixed, [](const std::vector<int>&, const std::vector<int>&) { return false; });
}

std::optional<Morphism> find_iso(const GraphPtr& a, const GraphPtr& b, const PartialMap& fixed)
{
    if (a->node_count() != b->node_count() || a->edge_count() != b->edge_count())
        return std::nullopt;
    std::optional<Morphism> found;
    for_each_mono(*a, *b, fixed, [&](const std::vector<int>& n, const std::vector<int>& e) {
        found.emplace(a, b, n, e);
        return false;
    });
    return found;
}

namespace {

class Canonizer {
public:
    Canonizer(const Graph& g, const std::vector<int>& nc, const std::vector<int>& ec) : g_(g), nc_(nc), ec_(ec)
    {
        n_ = g.node_count();
        adj_.assign(n_, std::vector<std::vector<int>>(n_));
        for (int e = 0; e < g.edge_count(); ++e)
            adj_[g.edges[e].src][g.edges[e].tgt].push_back(ec_[e]);
        for (auto& row : adj_)
            for (auto& cell : row)
                std::sort(cell.begin(), cell.end());
    }

    CanonicalForm run()
    {
        std::vector<std::vector<int>> sigs(n_);
        for (int v = 0; v < n_; ++v) {
            sigs[v] = {nc_[v], g_.labels[v]};
            sigs[v].insert(sigs[v].end(), adj_[v][v].begin(), adj_[v][v].end());
        }
        search(rank(sigs));
        CanonicalForm cf;
        cf.nodeOrder = bestOrder_;
        cf.nodePos.assign(n_, 0);
        for (int i = 0; i < n_; ++i)
            cf.nodePos[bestOrder_[i]] = i;
        std::vector<int> eo(g_.edge_count());
        std::iota(eo.begin(), eo.end(), 0);
        std::stable_sort(eo.begin(), eo.end(), [&](int a, int b) {
            auto ka = std::make_tuple(cf.nodePos[g_.edges[a].src], cf.nodePos[g_.edges[a].tgt], ec_[a]);
            auto kb = std::make_tuple(cf.nodePos[g_.edges[b].src], cf.nodePos[g_.edges[b].tgt], ec_[b]);
            return ka < kb;
        });
        cf.edgeOrder = eo;
        cf.edgePos.assign(g_.edge_count(), 0);
        for (int i = 0; i < static_cast<int>(eo.size()); ++i)
            cf.edgePos[eo[i]] = i;
        std::ostringstream os;
        for (std::size_t i = 0; i < best_.size(); ++i)
            os << (i ? "," : "") << best_[i];
        cf.key = os.str();
        return cf;
    }

private:
    static std::vector<int> rank(const std::vector<std::vector<int>>& sigs)
    {
        std::vector<std::vector<int>> sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> r(sigs.size());
        for (std::size_t v = 0; v < sigs.size(); ++v)
            r[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin());
        return r;
    }

    static int classes(const std::vector<int>& c)
    {
        std::vector<int> s = c;
        std::sort(s.begin(), s.end());
        return static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
    }

    std::vector<int> refine(std::vector<int> col) const
    {
        int k = classes(col);
        while (true) {
            std::vector<std::vector<int>> sigs(n_);
            for (int v = 0; v < n_; ++v) {
                std::vector<std::array<int, 3>> nb;
                for (int w = 0; w < n_; ++w) {
                    if (w == v)
                        continue;
                    for (int c : adj_[v][w])
                        nb.push_back({0, col[w], c});
                    for (int c : adj_[w][v])
                        nb.push_back({1, col[w], c});
                }
                std::sort(nb.begin(), nb.end());
                sigs[v].push_back(col[v]);
                for (const auto& t : nb)
                    sigs[v].insert(sigs[v].end(), t.begin(), t.end());
            }
            col = rank(sigs);
            int k2 = classes(col);
            if (k2 == k)
                return col;
            k = k2;
        }
    }

    bool twins(int u, int v) const
    {
        if (nc_[u] != nc_[v] || g_.labels[u] != g_.labels[v])
            return false;
        if (adj_[u][u] != adj_[v][v] || adj_[u][v] != adj_[v][u])
            return false;
        for (int w = 0; w < n_; ++w) {
            if (w == u || w == v)
                continue;
            if (adj_[u][w] != adj_[v][w] || adj_[w][u] != adj_[w][v])
                return false;
        }
        return true;
    }

    void leaf(const std::vector<int>& col)
    {
        std::vector<int> order(n_);
        for (int v = 0; v < n_; ++v)
            order[col[v]] = v;
        std::vector<int> pos(n_);
        for (int i = 0; i < n_; ++i)
            pos[order[i]] = i;
        std::vector<int> code;
        code.reserve(2 + 2 * n_ + 3 * g_.edge_count());
        code.push_back(n_);
        code.push_back(g_.edge_count());
        for (int i = 0; i < n_; ++i) {
            code.push_back(nc_[order[i]]);
            code.push_back(g_.labels[order[i]]);
        }
        std::vector<std::array<int, 3>> es;
        for (int e = 0; e < g_.edge_count(); ++e)
            es.push_back({pos[g_.edges[e].src], pos[g_.edges[e].tgt], ec_[e]});
        std::sort(es.begin(), es.end());
        for (const auto& t : es)
            code.insert(code.end(), t.begin(), t.end());
        if (!haveBest_ || code < best_) {
            best_ = std::move(code);
            bestOrder_ = order;
            haveBest_ = true;
        }
    }

    void search(const std::vector<int>& start)
    {
        std::vector<int> col = refine(start);
        if (classes(col) == n_) {
            leaf(col);
            return;
        }
        std::vector<int> count(n_, 0);
        for (int c : col)
            ++count[c];
        int cell = 0;
        while (count[cell] < 2)
            ++cell;
        std::vector<int> tried;
        for (int v = 0; v < n_; ++v) {
            if (col[v] != cell)
                continue;
            bool dup = false;
            for (int u : tried) {
                if (twins(u, v)) {
                    dup = true;
                    break;
                }
            }
            if (dup)
                continue;
            std::vector<int> next(n_);
            for (int w = 0; w < n_; ++w)
                next[w] = col[w] * 2 + 1;
            next[v] = col[v] * 2;
            search(next);
            tried.push_back(v);
        }
    }

    const Graph& g_;
    const std::vector<int>& nc_;
    const std::vector<int>& ec_;
    int n_ = 0;
    std::vector<std::vector<std::vector<int>>> adj_;
    std::vector<int> best_;
    std::vector<int> bestOrder_;
    bool haveBest_ = false;
};

}  // namespace

CanonicalForm canonical_form(const Graph& g, const std::vector<int>& nodeColors, const std::vector<int>& edgeColors)
{
    Canonizer c(g, nodeColors, edgeColors);
    return c.run();
}

std::string canonical_key(const Graph& g)
{
    std::vector<int> nc(g.node_count(), 0), ec(g.edge_count(), 0);
    return canonical_form(g, nc, ec).key;
}

bool are_isomorphic(const Graph& a, const Graph& b)
{
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
        return false;
    return canonical_key(a) == canonical_key(b);
}

Graph canonical_graph(const Graph& g)
{
    std::vector<int> nc(g.node_count(), 0), ec(g.edge_count(), 0);
    CanonicalForm cf = canonical_form(g, nc, ec);
    Graph out;
    for (int v : cf.nodeOrder)
        out.labels.push_back(g.labels[v]);
    for (int e : cf.edgeOrder)
        out.edges.push_back({cf.nodePos[g.edges[e].src], cf.nodePos[g.edges[e].tgt]});
    return out;
}

MorphismPair pushout(const Morphism& f, const Morphism& g)
{
    const Graph& L = f.target();
    const Graph& G = g.target();
    Graph P = G;
    std::vector<int> ln(L.node_count(), -1), le(L.edge_count(), -1);
    for (int d = 0; d < f.source().node_count(); ++d)
        ln[f.node(d)] = g.node(d);
    for (int d = 0; d < f.source().edge_count(); ++d)
        le[f.edge(d)] = g.edge(d);
    for (int v = 0; v < L.node_count(); ++v) {
        if (ln[v] < 0)
            ln[v] = P.add_node(L.labels[v]);
    }
    for (int e = 0; e < L.edge_count(); ++e) {
        if (le[e] < 0)
            le[e] = P.add_edge(ln[L.edges[e].src], ln[L.edges[e].tgt]);
    }
    GraphPtr pp = share(std::move(P));
    std::vector<int> gn(G.node_count()), ge(G.edge_count());
    std::iota(gn.begin(), gn.end(), 0);
    std::iota(ge.begin(), ge.end(), 0);
    return {Morphism(f.target_ptr(), pp, std::move(ln), std::move(le)),
            Morphism(g.target_ptr(), pp, std::move(gn), std::move(ge))};
}

bool dangling_ok(const Morphism& i, const Morphism& m)
{
    const Graph& G = m.target();
    std::vector<bool> keepL = i.node_image();
    std::vector<bool> deletedNode(G.node_count(), false);
    for (int v = 0; v < m.source().node_count(); ++v) {
        if (!keepL[v])
            deletedNode[m.node(v)] = true;
    }
    std::vector<bool> inMatch = m.edge_image();
    for (int e = 0; e < G.edge_count(); ++e) {
        if (inMatch[e])
            continue;
        if (deletedNode[G.edges[e].src] || deletedNode[G.edges[e].tgt])
            return false;
    }
    return true;
}

std::optional<MorphismPair> pushout_complement(const Morphism& i, const Morphism& m)
{
    if (!dangling_ok(i, m))
        return std::nullopt;
    const Graph& L = m.source();
    const Graph& G = m.target();
    std::vector<bool> keepLN = i.node_image(), keepLE = i.edge_image();
    std::vector<bool> delN(G.node_count(), false), delE(G.edge_count(), false);
    for (int v = 0; v < L.node_count(); ++v)
        if (!keepLN[v])
            delN[m.node(v)] = true;
    for (int e = 0; e < L.edge_count(); ++e)
        if (!keepLE[e])
            delE[m.edge(e)] = true;
    Graph C;
    std::vector<int> nodeIdx(G.node_count(), -1), edgeIdx(G.edge_count(), -1);
    std::vector<int> cn, ce;
    for (int v = 0; v < G.node_count(); ++v) {
        if (!delN[v]) {
            nodeIdx[v] = C.add_node(G.labels[v]);
            cn.push_back(v);
        }
    }
    for (int e = 0; e < G.edge_count(); ++e) {
        if (!delE[e]) {
            edgeIdx[e] = C.add_edge(nodeIdx[G.edges[e].src], nodeIdx[G.edges[e].tgt]);
            ce.push_back(e);
        }
    }
    GraphPtr cp = share(std::move(C));
    std::vector<int> in(i.source().node_count()), ie(i.source().edge_count());
    for (int v = 0; v < i.source().node_count(); ++v)
        in[v] = nodeIdx[m.node(i.node(v))];
    for (int e = 0; e < i.source().edge_count(); ++e)
        ie[e] = edgeIdx[m.edge(i.edge(e))];
    return MorphismPair{Morphism(i.source_ptr(), cp, std::move(in), std::move(ie)),
                        Morphism(cp, m.target_ptr(), std::move(cn), std::move(ce))};
}

MorphismPair pullback(const Morphism& f, const Morphism& g)
{
    const Graph& X = f.target();
    std::vector<int> fromA(X.node_count(), -1), fromB(X.node_count(), -1);
    std::vector<int> fromAE(X.edge_count(), -1), fromBE(X.edge_count(), -1);
    for (int v = 0; v < f.source().node_count(); ++v)
        fromA[f.node(v)] = v;
    for (int v = 0; v < g.source().node_count(); ++v)
        fromB[g.node(v)] = v;
    for (int e = 0; e < f.source().edge_count(); ++e)
        fromAE[f.edge(e)] = e;
    for (int e = 0; e < g.source().edge_count(); ++e)
        fromBE[g.edge(e)] = e;
    Graph P;
    std::vector<int> pa, pb, pae, pbe;
    std::vector<int> idx(X.node_count(), -1);
    for (int v = 0; v < f.source().node_count(); ++v) {
        int x = f.node(v);
        if (fromB[x] >= 0) {
            idx[x] = P.add_node(X.labels[x]);
            pa.push_back(v);
            pb.push_back(fromB[x]);
        }
    }
    for (int e = 0; e < f.source().edge_count(); ++e) {
        int x = f.edge(e);
        if (fromBE[x] >= 0) {
            P.add_edge(idx[X.edges[x].src], idx[X.edges[x].tgt]);
            pae.push_back(e);
            pbe.push_back(fromBE[x]);
        }
    }
    GraphPtr pp = share(std::move(P));
    return {Morphism(pp, f.source_ptr(), std::move(pa), std::move(pae)),
            Morphism(pp, g.source_ptr(), std::move(pb), std::move(pbe))};
}

namespace {

thread_local WorkLimit* t_workLimit = nullptr;

}  // namespace

ScopedWorkLimit::ScopedWorkLimit(WorkLimit limit) : limit_(limit), previous_(t_workLimit) { t_workLimit = &limit_; }

ScopedWorkLimit::~ScopedWorkLimit() { t_workLimit = previous_; }

void check_work_limit()
{
    if (t_workLimit && std::chrono::steady_clock::now() >= t_workLimit->deadline)
        throw WorkLimitExceeded("deadline reached");
}

void charge_work_limit()
{
    if (!t_workLimit)
        return;
    if (++t_workLimit->steps > t_workLimit->maxSteps)
        throw WorkLimitExceeded("work step limit reached");
    if ((t_workLimit->steps & 255) == 0)
        check_work_limit();
}

namespace {

struct OverlapBuilder {
    const Morphism& f;
    const Morphism& g;
    std::vector<Square> out;
    std::vector<int> lNode, lEdge;  // L item -> G item, -1 unmerged
    std::vector<bool> gNodeUsed, gEdgeUsed;
    std::vector<int> lNodesFree, lEdgesFree;
    std::vector<bool> gNodeInD, gEdgeInD;

    OverlapBuilder(const Morphism& f_, const Morphism& g_) : f(f_), g(g_)
    {
        const Graph& L = f.target();
        const Graph& G = g.target();
        lNode.assign(L.node_count(), -1);
        lEdge.assign(L.edge_count(), -1);
        gNodeUsed.assign(G.node_count(), false);
        gEdgeUsed.assign(G.edge_count(), false);
        gNodeInD = g.node_image();
        gEdgeInD = g.edge_image();
        for (int d = 0; d < f.source().node_count(); ++d)
            lNode[f.node(d)] = g.node(d);
        for (int d = 0; d < f.source().edge_count(); ++d)
            lEdge[f.edge(d)] = g.edge(d);
        std::vector<bool> lni = f.node_image(), lei = f.edge_image();
        for (int v = 0; v < L.node_count(); ++v)
            if (!lni[v])
                lNodesFree.push_back(v);
        for (int e = 0; e < L.edge_count(); ++e)
            if (!lei[e])
                lEdgesFree.push_back(e);
    }

    void nodes(std::size_t k)
    {
        if (k == lNodesFree.size()) {
            edges(0);
            return;
        }
        int v = lNodesFree[k];
        nodes(k + 1);
        const Graph& G = g.target();
        for (int w = 0; w < G.node_count(); ++w) {
            if (gNodeInD[w] || gNodeUsed[w] || G.labels[w] != f.target().labels[v])
                continue;
            lNode[v] = w;
            gNodeUsed[w] = true;
            nodes(k + 1);
            gNodeUsed[w] = false;
            lNode[v] = -1;
        }
    }

    void edges(std::size_t k)
    {
        if (k == lEdgesFree.size()) {
            emit();
            return;
        }
        int e = lEdgesFree[k];
        edges(k + 1);
        const Graph& L = f.target();
        const Graph& G = g.target();
        int s = lNode[L.edges[e].src], t = lNode[L.edges[e].tgt];
        if (s < 0 || t < 0)
            return;
        for (int x = 0; x < G.edge_count(); ++x) {
            if (gEdgeInD[x] || gEdgeUsed[x] || G.edges[x].src != s || G.edges[x].tgt != t)
                continue;
            lEdge[e] = x;
            gEdgeUsed[x] = true;
            edges(k + 1);
            gEdgeUsed[x] = false;
            lEdge[e] = -1;
        }
    }

    void emit()
    {
        if (t_workLimit) {
            if (out.size() >= t_workLimit->maxOverlaps)
                throw WorkLimitExceeded("overlap limit reached");
            charge_work_limit();
        }
        const Graph& L = f.target();
        Graph U = g.target();
        std::vector<int> un = lNode, ue = lEdge;
        for (int v = 0; v < L.node_count(); ++v)
            if (un[v] < 0)
                un[v] = U.add_node(L.labels[v]);
        for (int e = 0; e < L.edge_count(); ++e)
            if (ue[e] < 0)
                ue[e] = U.add_edge(un[L.edges[e].src], un[L.edges[e].tgt]);
        GraphPtr up = share(std::move(U));
        std::vector<int> gn(g.target().node_count()), ge(g.target().edge_count());
        std::iota(gn.begin(), gn.end(), 0);
        std::iota(ge.begin(), ge.end(), 0);
        Square sq;
        sq.top = {f, g};
        sq.bottom = {Morphism(f.target_ptr(), up, std::move(un), std::move(ue)),
                     Morphism(g.target_ptr(), up, std::move(gn), std::move(ge))};
        sq.kind = SquareKind::JE;
        out.push_back(std::move(sq));
    }
};

}  // namespace

std::vector<Square> jointly_epi_overlaps(const Morphism& f, const Morphism& g)
{
    OverlapBuilder b(f, g);
    b.nodes(0);
    return std::move(b.out);
}

bool square_commutes(const Square& s)
{
    Morphism a = then(s.top.first, s.bottom.first);
    Morphism b = then(s.top.second, s.bottom.second);
    return a.node_map() == b.node_map() && a.edge_map() == b.edge_map();
}

bool jointly_surjective(const Morphism& a, const Morphism& b)
{
    std::vector<bool> n = a.node_image(), e = a.edge_image();
    std::vector<bool> n2 = b.node_image(), e2 = b.edge_image();
    for (std::size_t i = 0; i < n.size(); ++i)
        if (!n[i] && !n2[i])
            return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (!e[i] && !e2[i])
            return false;
    return true;
}

const std::vector<GraphPtr>& graphs_with(int nodes, int edges)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<GraphPtr>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({nodes, edges});
        if (it != cache.end())
            return it->second;
    }
    std::vector<GraphPtr> layer;
    if (edges == 0) {
        layer.push_back(share(Graph(nodes)));
    } else if (nodes > 0) {
        std::map<std::string, GraphPtr> seen;
        for (const GraphPtr& g : graphs_with(nodes, edges - 1)) {
            for (int s = 0; s < nodes; ++s) {
                for (int t = 0; t < nodes; ++t) {
                    Graph h = *g;
                    h.add_edge(s, t);
                    std::vector<int> nc(nodes, 0), ec(h.edge_count(), 0);
                    CanonicalForm cf = canonical_form(h, nc, ec);
                    if (seen.count(cf.key))
                        continue;
                    Graph c(nodes);
                    for (int e : cf.edgeOrder)
                        c.edges.push_back({cf.nodePos[h.edges[e].src], cf.nodePos[h.edges[e].tgt]});
                    seen.emplace(std::move(cf.key), share(std::move(c)));
                }
            }
        }
        for (auto& [k, g] : seen)
            layer.push_back(g);
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(std::make_pair(nodes, edges), std::move(layer));
    return it->second;
}

std::vector<GraphPtr> graphs_up_to(int maxNodes, int maxEdges)
{
    std::vector<GraphPtr> out;
    for (int n = 0; n <= maxNodes; ++n)
        for (int e = 0; e <= maxEdges; ++e)
            for (const GraphPtr& g : graphs_with(n, e))
                out.push_back(g);
    return out;
}

std::string to_string(const Graph& g)
{
    std::ostringstream os;
    os << "[" << g.node_count() << " nodes";
    for (const auto& e : g.edges)
        os << "; " << e.src << "->" << e.tgt;
    os << "]";
    return os.str();
}

}  // namespace gtscegar
