#ifndef GTSCEGAR_CONDITION_HPP
#define GTSCEGAR_CONDITION_HPP

#include "gtscegar/cospan.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtscegar {

enum class Quantifier { Universal, Existential };

class Condition;
using CondPtr = std::shared_ptr<const Condition>;

struct Branch {
    Cospan arrow;          // root -> X <- B
    CondPtr child;         // rooted at B
    std::string arrowKey;  // filled in by Condition::make
};

// Nested condition. A Universal node is the conjunction of its branches
// read as "for all f . child"; an Existential node the disjunction of
// "exists f . child". Universal with no branches is true, Existential with
// no branches is false.
//
// Branch arrows are stored in canonical form relative to the root, sorted and
// free of syntactic duplicates, so key() identifies the condition up to
// renaming of its inner graphs.
class Condition {
public:
    static CondPtr make(Quantifier q, GraphPtr root, std::vector<Branch> branches);
    static CondPtr truth(GraphPtr root);
    static CondPtr falsity(GraphPtr root);

    Quantifier quantifier() const { return q_; }
    bool universal() const { return q_ == Quantifier::Universal; }
    const Graph& root() const { return *root_; }
    const GraphPtr& root_ptr() const { return root_; }
    const std::vector<Branch>& branches() const { return branches_; }
    const std::string& key() const { return key_; }

    bool is_true() const { return universal() && branches_.empty(); }
    bool is_false() const { return !universal() && branches_.empty(); }
    std::size_t size() const { return size_; }
    int depth() const { return depth_; }

private:
    friend CondPtr make_sorted(Quantifier, GraphPtr, std::vector<Branch>);
    Quantifier q_ = Quantifier::Universal;
    GraphPtr root_;
    std::vector<Branch> branches_;
    std::string key_;
    std::size_t size_ = 1;
    int depth_ = 0;
};

class RootMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Assumes the branch arrows are already canonical.
CondPtr make_sorted(Quantifier q, GraphPtr root, std::vector<Branch> branches);

std::string branch_key(const Branch& b);
bool structurally_equal(const CondPtr& a, const CondPtr& b);

// Renames the root along an iso phi: root -> R'.
CondPtr transport(const CondPtr& c, const Morphism& phi);

CondPtr negate(const CondPtr& a);
CondPtr conjoin(const CondPtr& a, const CondPtr& b);
CondPtr disjoin(const CondPtr& a, const CondPtr& b);
CondPtr conjoin_all(const GraphPtr& root, const std::vector<CondPtr>& parts);

// Q f . child at root = f.domain().
CondPtr quantify(Quantifier q, const Cospan& f, const CondPtr& child);

// "Pattern" sugar: forall/exists over the lifted morphism root -> pattern.
CondPtr forbid(const Morphism& m);
CondPtr require(const Morphism& m);

// Satisfaction of a closed condition by a graph.
bool satisfies(const Graph& g, const CondPtr& a);
// Satisfaction with an interface: emb embeds the root of a into host.
bool satisfies_at(const Graph& host, const Morphism& emb, const CondPtr& a);
bool satisfies_at(const Graph& host, const std::vector<int>& embNodes, const std::vector<int>& embEdges,
                  const CondPtr& a);
// Satisfaction by an interfaced state d: root -> Y <- 0.
bool satisfies_state(const Cospan& d, const CondPtr& a);

CondPtr shift(const CondPtr& a, const Cospan& c);

CondPtr simplify(const CondPtr& a);

// Closed graphs up to the bounds satisfying a, in graphs_up_to order.
std::vector<GraphPtr> bounded_models(const CondPtr& a, int nodeBound, int edgeBound);

// True iff the middle of small embeds into the middle of big compatibly with
// both left legs (both arrows share their domain).
bool embeds_over_root(const Cospan& small, const Cospan& big);

// Universal node whose branches are all lifted arrows with child false.
bool is_forbidden_set(const CondPtr& a);

std::string to_string(const CondPtr& a);

}  // namespace gtscegar

#endif
