#include "gtscegar/cospan.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gtscegar {

bool Cospan::keeps_all_nodes() const
{
    auto img = right.node_image();
    return std::all_of(img.begin(), img.end(), [](bool b) { return b; });
}

bool Cospan::valid() const
{
    return left.target_ptr() && right.target_ptr() && middle() == right.target() && validate_morphism(left) &&
           validate_morphism(right) && left.is_mono() && right.is_mono();
}

Cospan compose(const Cospan& first, const Cospan& second)
{
    if (!(first.codomain() == second.domain()))
        throw CompositionError("cospan composition: interface mismatch");
    // Re-anchor second's left leg on first's codomain object so the pushout
    // sees a common source.
    Morphism secondLeft(first.codomain_ptr(), second.left.target_ptr(), second.left.node_map(),
                        second.left.edge_map());
    MorphismPair po = pushout(first.right, secondLeft);
    return {then(first.left, po.first), then(second.right, po.second)};
}

Cospan identity_cospan(const GraphPtr& a)
{
    Morphism id = Morphism::identity(a);
    return {id, id};
}

Cospan lift(const Morphism& m) { return {m, Morphism::identity(m.target_ptr())}; }

Cospan state_of(const GraphPtr& g) { return {Morphism::from_empty(g), Morphism::from_empty(g)}; }

bool equal_up_to_iso(const Cospan& c1, const Cospan& c2)
{
    if (!(c1.domain() == c2.domain()) || !(c1.codomain() == c2.codomain()))
        return false;
    PartialMap fixed = PartialMap::none(c1.middle());
    auto pin = [](std::vector<int>& slot, int from, int to) {
        if (slot[from] >= 0 && slot[from] != to)
            return false;
        slot[from] = to;
        return true;
    };
    for (int v = 0; v < c1.domain().node_count(); ++v)
        if (!pin(fixed.nodes, c1.left.node(v), c2.left.node(v)))
            return false;
    for (int e = 0; e < c1.domain().edge_count(); ++e)
        if (!pin(fixed.edges, c1.left.edge(e), c2.left.edge(e)))
            return false;
    for (int v = 0; v < c1.codomain().node_count(); ++v)
        if (!pin(fixed.nodes, c1.right.node(v), c2.right.node(v)))
            return false;
    for (int e = 0; e < c1.codomain().edge_count(); ++e)
        if (!pin(fixed.edges, c1.right.edge(e), c2.right.edge(e)))
            return false;
    return find_iso(c1.middle_ptr(), c2.middle_ptr(), fixed).has_value();
}

CanonicalArrow canonicalize(const Cospan& c)
{
    const Graph& X = c.middle();
    std::vector<int> nc(X.node_count(), 0), ec(X.edge_count(), 0);
    for (int v = 0; v < c.domain().node_count(); ++v)
        nc[c.left.node(v)] += (v + 1) * 2;
    for (int e = 0; e < c.domain().edge_count(); ++e)
        ec[c.left.edge(e)] += (e + 1) * 2;
    for (int v = 0; v < c.codomain().node_count(); ++v)
        nc[c.right.node(v)] += 1;
    for (int e = 0; e < c.codomain().edge_count(); ++e)
        ec[c.right.edge(e)] += 1;
    CanonicalForm cf = canonical_form(X, nc, ec);

    Graph Xc;
    for (int v : cf.nodeOrder)
        Xc.labels.push_back(X.labels[v]);
    for (int e : cf.edgeOrder)
        Xc.edges.push_back({cf.nodePos[X.edges[e].src], cf.nodePos[X.edges[e].tgt]});
    GraphPtr xp = share(std::move(Xc));

    std::vector<int> ln(c.domain().node_count()), le(c.domain().edge_count());
    for (int v = 0; v < c.domain().node_count(); ++v)
        ln[v] = cf.nodePos[c.left.node(v)];
    for (int e = 0; e < c.domain().edge_count(); ++e)
        le[e] = cf.edgePos[c.left.edge(e)];

    const Graph& B = c.codomain();
    std::vector<int> bn(B.node_count()), be(B.edge_count());
    std::iota(bn.begin(), bn.end(), 0);
    std::iota(be.begin(), be.end(), 0);
    std::sort(bn.begin(), bn.end(), [&](int a, int b) { return cf.nodePos[c.right.node(a)] < cf.nodePos[c.right.node(b)]; });
    std::sort(be.begin(), be.end(), [&](int a, int b) { return cf.edgePos[c.right.edge(a)] < cf.edgePos[c.right.edge(b)]; });
    std::vector<int> bNodePos(B.node_count()), bEdgePos(B.edge_count());
    for (int i = 0; i < B.node_count(); ++i)
        bNodePos[bn[i]] = i;
    for (int i = 0; i < B.edge_count(); ++i)
        bEdgePos[be[i]] = i;
    Graph Bc;
    for (int v : bn)
        Bc.labels.push_back(B.labels[v]);
    for (int e : be)
        Bc.edges.push_back({bNodePos[B.edges[e].src], bNodePos[B.edges[e].tgt]});
    GraphPtr bp = share(std::move(Bc));
    std::vector<int> rn(B.node_count()), re(B.edge_count());
    for (int i = 0; i < B.node_count(); ++i)
        rn[i] = cf.nodePos[c.right.node(bn[i])];
    for (int i = 0; i < B.edge_count(); ++i)
        re[i] = cf.edgePos[c.right.edge(be[i])];

    CanonicalArrow out{{Morphism(c.domain_ptr(), xp, std::move(ln), std::move(le)),
                        Morphism(bp, xp, std::move(rn), std::move(re))},
                       Morphism(c.codomain_ptr(), bp, std::move(bNodePos), std::move(bEdgePos)),
                       cf.key};
    return out;
}

std::vector<BCSquare> borrowed_context_squares(const Cospan& ell, const Cospan& ctx)
{
    std::vector<BCSquare> out;
    Morphism ctxLeft(ell.domain_ptr(), ctx.left.target_ptr(), ctx.left.node_map(), ctx.left.edge_map());
    for (Square& sq : jointly_epi_overlaps(ell.left, ctxLeft)) {
        auto c = pushout_complement(ell.right, sq.bottom.first);
        if (!c)
            continue;
        auto f = pushout_complement(ctx.right, sq.bottom.second);
        if (!f)
            continue;
        MorphismPair k = pullback(c->second, f->second);
        BCSquare b;
        b.ell = ell;
        b.ctx = ctx;
        b.iToC = c->first;
        b.cToGp = c->second;
        b.jToF = f->first;
        b.fToGp = f->second;
        b.kToC = k.first;
        b.kToF = k.second;
        b.arrow = {f->first, k.second};
        b.residual = {c->first, k.first};
        b.overlap = std::move(sq);
        out.push_back(std::move(b));
    }
    return out;
}

std::string to_string(const Cospan& c)
{
    std::ostringstream os;
    os << to_string(c.domain()) << " -> " << to_string(c.middle()) << " <- " << to_string(c.codomain());
    return os.str();
}

}  // namespace gtscegar
