#include "gtscegar/condition.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace gtscegar {

namespace {

std::string encode(const Graph& g)
{
    std::string s = std::to_string(g.node_count());
    for (Label l : g.labels)
        if (l != 0)
            s += "l" + std::to_string(l);
    for (const auto& e : g.edges)
        s += ";" + std::to_string(e.src) + ">" + std::to_string(e.tgt);
    return s;
}

std::string encode(const Morphism& m)
{
    std::string s;
    for (int x : m.node_map())
        s += std::to_string(x) + ",";
    s += "/";
    for (int x : m.edge_map())
        s += std::to_string(x) + ",";
    return s;
}

std::string encode(const Cospan& c)
{
    return encode(c.domain()) + "|" + encode(c.middle()) + "|" + encode(c.codomain()) + "|" + encode(c.left) + "|" +
           encode(c.right);
}

bool is_identity(const Morphism& m)
{
    for (int v = 0; v < static_cast<int>(m.node_map().size()); ++v)
        if (m.node(v) != v)
            return false;
    for (int e = 0; e < static_cast<int>(m.edge_map().size()); ++e)
        if (m.edge(e) != e)
            return false;
    return true;
}

// Memo table shared across threads, cleared once its entries or their
// approximate footprint grow too large.
class Memo {
public:
    CondPtr get(const std::string& k)
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(k);
        return it == map_.end() ? nullptr : it->second;
    }
    void put(const std::string& k, const CondPtr& v)
    {
        std::lock_guard<std::mutex> lock(mu_);
        std::size_t weight = k.size() + 64 * v->size();
        if (map_.size() > 200000 || weight_ + weight > kMaxWeight) {
            map_.clear();
            weight_ = 0;
        }
        if (map_.emplace(k, v).second)
            weight_ += weight;
    }

private:
    static constexpr std::size_t kMaxWeight = std::size_t(256) << 20;
    std::mutex mu_;
    std::size_t weight_ = 0;
    std::unordered_map<std::string, CondPtr> map_;
};

Memo& shift_memo()
{
    static Memo m;
    return m;
}

Memo& simplify_memo()
{
    static Memo m;
    return m;
}

Morphism reanchor(const GraphPtr& src, const Morphism& m)
{
    return Morphism(src, m.target_ptr(), m.node_map(), m.edge_map());
}

}  // namespace

std::string branch_key(const Branch& b) { return b.arrowKey + "{" + b.child->key() + "}"; }

CondPtr make_sorted(Quantifier q, GraphPtr root, std::vector<Branch> branches)
{
    std::vector<std::pair<std::string, std::size_t>> keyed;
    keyed.reserve(branches.size());
    for (std::size_t i = 0; i < branches.size(); ++i)
        keyed.emplace_back(branch_key(branches[i]), i);
    std::sort(keyed.begin(), keyed.end());
    auto c = std::make_shared<Condition>();
    c->q_ = q;
    c->root_ = std::move(root);
    std::string key = q == Quantifier::Universal ? "A[" : "E[";
    const std::string* prev = nullptr;
    for (const auto& [k, i] : keyed) {
        if (prev && *prev == k)
            continue;
        if (prev)
            key += "|";
        key += k;
        prev = &k;
        c->size_ += branches[i].child->size();
        c->depth_ = std::max(c->depth_, branches[i].child->depth() + 1);
        c->branches_.push_back(std::move(branches[i]));
    }
    key += "]";
    c->key_ = std::move(key);
    return c;
}

CondPtr Condition::make(Quantifier q, GraphPtr root, std::vector<Branch> branches)
{
    std::vector<Branch> canon;
    canon.reserve(branches.size());
    for (Branch& b : branches) {
        if (!(b.arrow.domain() == *root))
            throw RootMismatch("branch arrow domain differs from condition root");
        if (!(b.child->root() == b.arrow.codomain()))
            throw RootMismatch("branch child root differs from arrow codomain");
        Cospan anchored{reanchor(root, b.arrow.left), b.arrow.right};
        CanonicalArrow ca = canonicalize(anchored);
        CondPtr child = b.child;
        if (!is_identity(ca.codomainIso) || !(child->root() == ca.arrow.codomain())) {
            Morphism phi(child->root_ptr(), ca.arrow.codomain_ptr(), ca.codomainIso.node_map(),
                         ca.codomainIso.edge_map());
            child = transport(child, phi);
        }
        canon.push_back({std::move(ca.arrow), std::move(child), std::move(ca.key)});
    }
    return make_sorted(q, std::move(root), std::move(canon));
}

CondPtr Condition::truth(GraphPtr root) { return make_sorted(Quantifier::Universal, std::move(root), {}); }

CondPtr Condition::falsity(GraphPtr root) { return make_sorted(Quantifier::Existential, std::move(root), {}); }

bool structurally_equal(const CondPtr& a, const CondPtr& b)
{
    return a->root() == b->root() && a->key() == b->key();
}

CondPtr transport(const CondPtr& c, const Morphism& phi)
{
    Morphism inv = phi.inverse();
    std::vector<Branch> bs;
    bs.reserve(c->branches().size());
    for (const Branch& b : c->branches())
        bs.push_back({{then(inv, b.arrow.left), b.arrow.right}, b.child, {}});
    return Condition::make(c->quantifier(), phi.target_ptr(), std::move(bs));
}

CondPtr negate(const CondPtr& a)
{
    std::vector<Branch> bs;
    bs.reserve(a->branches().size());
    for (const Branch& b : a->branches())
        bs.push_back({b.arrow, negate(b.child), b.arrowKey});
    return make_sorted(a->universal() ? Quantifier::Existential : Quantifier::Universal, a->root_ptr(), std::move(bs));
}

namespace {

CondPtr combine(Quantifier q, const CondPtr& a, const CondPtr& b)
{
    if (!(a->root() == b->root()))
        throw RootMismatch("boolean combination of conditions with different roots");
    std::vector<Branch> bs;
    for (const CondPtr& part : {a, b}) {
        if (part->quantifier() == q) {
            for (const Branch& br : part->branches())
                bs.push_back({{reanchor(a->root_ptr(), br.arrow.left), br.arrow.right}, br.child, {}});
        } else {
            bs.push_back({identity_cospan(part->root_ptr()), part, {}});
        }
    }
    return Condition::make(q, a->root_ptr(), std::move(bs));
}

}  // namespace

CondPtr conjoin(const CondPtr& a, const CondPtr& b) { return combine(Quantifier::Universal, a, b); }

CondPtr disjoin(const CondPtr& a, const CondPtr& b) { return combine(Quantifier::Existential, a, b); }

CondPtr conjoin_all(const GraphPtr& root, const std::vector<CondPtr>& parts)
{
    CondPtr acc = Condition::truth(root);
    for (const CondPtr& p : parts)
        acc = conjoin(acc, p);
    return acc;
}

CondPtr quantify(Quantifier q, const Cospan& f, const CondPtr& child)
{
    return Condition::make(q, f.domain_ptr(), {{f, child, {}}});
}

CondPtr forbid(const Morphism& m)
{
    return quantify(Quantifier::Universal, lift(m), Condition::falsity(m.target_ptr()));
}

CondPtr require(const Morphism& m)
{
    return quantify(Quantifier::Existential, lift(m), Condition::truth(m.target_ptr()));
}

bool satisfies_at(const Graph& host, const std::vector<int>& embNodes, const std::vector<int>& embEdges,
                  const CondPtr& a)
{
    const bool uni = a->universal();
    for (const Branch& b : a->branches()) {
        const Cospan& f = b.arrow;
        const Graph& X = f.middle();
        PartialMap fixed = PartialMap::none(X);
        for (int v = 0; v < f.domain().node_count(); ++v)
            fixed.nodes[f.left.node(v)] = embNodes[v];
        for (int e = 0; e < f.domain().edge_count(); ++e)
            fixed.edges[f.left.edge(e)] = embEdges[e];
        const bool lifted = f.is_lifted();
        const Graph& B = f.codomain();
        bool decided = false;
        for_each_mono(X, host, fixed, [&](const std::vector<int>& hN, const std::vector<int>& hE) {
            bool r;
            if (lifted) {
                std::vector<int> nN(B.node_count()), nE(B.edge_count());
                for (int v = 0; v < B.node_count(); ++v)
                    nN[v] = hN[f.right.node(v)];
                for (int e = 0; e < B.edge_count(); ++e)
                    nE[e] = hE[f.right.edge(e)];
                r = satisfies_at(host, nN, nE, b.child);
            } else {
                std::vector<bool> keepN = f.right.node_image(), keepE = f.right.edge_image();
                std::vector<bool> delN(host.node_count(), false), delE(host.edge_count(), false);
                for (int x = 0; x < X.node_count(); ++x)
                    if (!keepN[x])
                        delN[hN[x]] = true;
                for (int x = 0; x < X.edge_count(); ++x)
                    if (!keepE[x])
                        delE[hE[x]] = true;
                for (int e = 0; e < host.edge_count(); ++e) {
                    if (!delE[e] && (delN[host.edges[e].src] || delN[host.edges[e].tgt]))
                        return true;
                }
                Graph Y;
                std::vector<int> nIdx(host.node_count(), -1), eIdx(host.edge_count(), -1);
                for (int v = 0; v < host.node_count(); ++v)
                    if (!delN[v])
                        nIdx[v] = Y.add_node(host.labels[v]);
                for (int e = 0; e < host.edge_count(); ++e)
                    if (!delE[e])
                        eIdx[e] = Y.add_edge(nIdx[host.edges[e].src], nIdx[host.edges[e].tgt]);
                std::vector<int> nN(B.node_count()), nE(B.edge_count());
                for (int v = 0; v < B.node_count(); ++v)
                    nN[v] = nIdx[hN[f.right.node(v)]];
                for (int e = 0; e < B.edge_count(); ++e)
                    nE[e] = eIdx[hE[f.right.edge(e)]];
                r = satisfies_at(Y, nN, nE, b.child);
            }
            if (r != uni) {
                decided = true;
                return false;
            }
            return true;
        });
        if (decided)
            return !uni;
    }
    return uni;
}

bool satisfies_at(const Graph& host, const Morphism& emb, const CondPtr& a)
{
    return satisfies_at(host, emb.node_map(), emb.edge_map(), a);
}

bool satisfies(const Graph& g, const CondPtr& a)
{
    if (a->root().node_count() != 0 || a->root().edge_count() != 0)
        throw RootMismatch("closed satisfaction needs a condition over the empty graph");
    return satisfies_at(g, std::vector<int>{}, std::vector<int>{}, a);
}

bool satisfies_state(const Cospan& d, const CondPtr& a)
{
    if (!(d.domain() == a->root()))
        throw RootMismatch("state interface differs from condition root");
    if (d.codomain().node_count() != 0 || d.codomain().edge_count() != 0)
        throw std::invalid_argument("states must have an empty outer interface");
    return satisfies_at(d.middle(), d.left, a);
}

CondPtr shift(const CondPtr& a, const Cospan& c)
{
    if (!(c.domain() == a->root()))
        throw RootMismatch("shift along a cospan whose domain differs from the condition root");
    if (a->branches().empty())
        return make_sorted(a->quantifier(), c.codomain_ptr(), {});
    std::string k = a->key() + "@" + encode(a->root()) + "#" + encode(c);
    if (CondPtr hit = shift_memo().get(k))
        return hit;
    charge_work_limit();
    Cospan anchored{reanchor(a->root_ptr(), c.left), c.right};
    std::vector<Branch> bs;
    for (const Branch& b : a->branches()) {
        for (const BCSquare& sq : borrowed_context_squares(b.arrow, anchored))
            bs.push_back({sq.arrow, shift(b.child, sq.residual), {}});
    }
    CondPtr res = Condition::make(a->quantifier(), c.codomain_ptr(), std::move(bs));
    shift_memo().put(k, res);
    return res;
}

namespace {

// Transports the child of an iso branch back to the branch's root.
CondPtr unwrap_iso(const GraphPtr& root, const Branch& b)
{
    Morphism toRoot = then(b.arrow.right, b.arrow.left.inverse());
    Morphism phi(b.child->root_ptr(), root, toRoot.node_map(), toRoot.edge_map());
    return transport(b.child, phi);
}


void add_flattened(std::vector<Branch>& out, Quantifier q, const Cospan& arrow, const CondPtr& child)
{
    const bool uni = q == Quantifier::Universal;
    // The neutral element of the node's connective contributes nothing.
    if ((uni && child->is_true()) || (!uni && child->is_false()))
        return;
    if (child->quantifier() == q) {
        for (const Branch& b : child->branches())
            add_flattened(out, q, compose(arrow, b.arrow), b.child);
        return;
    }
    // A terminal child only cares whether a match exists; when no node is
    // dropped the dangling condition is vacuous and the arrow can be lifted.
    if (child->branches().empty() && !arrow.is_lifted() && arrow.keeps_all_nodes()) {
        Cospan lifted = lift(arrow.left);
        CondPtr c = uni ? Condition::falsity(lifted.codomain_ptr()) : Condition::truth(lifted.codomain_ptr());
        out.push_back({std::move(lifted), std::move(c), {}});
        return;
    }
    out.push_back({arrow, child, {}});
}

}  // namespace

CondPtr simplify(const CondPtr& a)
{
    if (a->branches().empty())
        return a;
    std::string memoKey = a->key() + "@" + encode(a->root());
    if (CondPtr hit = simplify_memo().get(memoKey))
        return hit;

    const Quantifier q = a->quantifier();
    const bool uni = q == Quantifier::Universal;
    std::vector<Branch> flat;
    for (const Branch& b : a->branches())
        add_flattened(flat, q, b.arrow, simplify(b.child));
    CondPtr node = Condition::make(q, a->root_ptr(), std::move(flat));

    CondPtr result;
    // Absorbing element: forall iso . false, or exists iso . true.
    for (const Branch& b : node->branches()) {
        if (b.arrow.is_iso() && b.child->branches().empty() && b.child->universal() != uni) {
            result = uni ? Condition::falsity(a->root_ptr()) : Condition::truth(a->root_ptr());
            break;
        }
    }
    if (!result) {
        // A lifted "no match" (resp. "some match") sibling makes every branch
        // whose middle contains its pattern redundant.
        const auto& bs = node->branches();
        std::vector<bool> drop(bs.size(), false);
        for (std::size_t i = 0; i < bs.size(); ++i) {
            const Branch& s = bs[i];
            if (!s.arrow.is_lifted() || !s.child->branches().empty() || s.child->universal() == uni)
                continue;
            for (std::size_t j = 0; j < bs.size(); ++j) {
                if (j == i || drop[j])
                    continue;
                if (embeds_over_root(s.arrow, bs[j].arrow))
                    drop[j] = true;
            }
        }
        std::vector<Branch> kept;
        for (std::size_t i = 0; i < bs.size(); ++i)
            if (!drop[i])
                kept.push_back(bs[i]);
        if (kept.size() == 1 && kept[0].arrow.is_iso())
            result = simplify(unwrap_iso(a->root_ptr(), kept[0]));
        else
            result = make_sorted(q, a->root_ptr(), std::move(kept));
    }
    simplify_memo().put(memoKey, result);
    return result;
}

bool embeds_over_root(const Cospan& small, const Cospan& big)
{
    PartialMap fixed = PartialMap::none(small.middle());
    for (int v = 0; v < small.domain().node_count(); ++v)
        fixed.nodes[small.left.node(v)] = big.left.node(v);
    for (int e = 0; e < small.domain().edge_count(); ++e)
        fixed.edges[small.left.edge(e)] = big.left.edge(e);
    return exists_mono(small.middle(), big.middle(), fixed);
}

std::vector<GraphPtr> bounded_models(const CondPtr& a, int nodeBound, int edgeBound)
{
    std::vector<GraphPtr> out;
    for (const GraphPtr& g : graphs_up_to(nodeBound, edgeBound))
        if (satisfies(*g, a))
            out.push_back(g);
    return out;
}

bool is_forbidden_set(const CondPtr& a)
{
    if (!a->universal())
        return false;
    for (const Branch& b : a->branches())
        if (!b.arrow.is_lifted() || !b.child->is_false())
            return false;
    return true;
}

namespace {

void render(std::ostringstream& os, const CondPtr& a)
{
    if (a->is_true()) {
        os << "true";
        return;
    }
    if (a->is_false()) {
        os << "false";
        return;
    }
    const char* q = a->universal() ? "forall " : "exists ";
    const char* sep = a->universal() ? " & " : " | ";
    if (a->branches().size() > 1)
        os << "(";
    for (std::size_t i = 0; i < a->branches().size(); ++i) {
        const Branch& b = a->branches()[i];
        if (i)
            os << sep;
        os << q << to_string(b.arrow) << " . ";
        render(os, b.child);
    }
    if (a->branches().size() > 1)
        os << ")";
}

}  // namespace

std::string to_string(const CondPtr& a)
{
    std::ostringstream os;
    render(os, a);
    return os.str();
}

}  // namespace gtscegar
