#ifndef GTSCEGAR_GRAPH_HPP
#define GTSCEGAR_GRAPH_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtscegar {

using Label = int;

struct Edge {
    int src = 0;
    int tgt = 0;
    bool operator==(const Edge&) const = default;
};

// Finite directed multigraph. Nodes and edges are dense indices; loops and
// parallel edges are allowed.
struct Graph {
    std::vector<Label> labels;
    std::vector<Edge> edges;

    Graph() = default;
    explicit Graph(int nodeCount, std::vector<Edge> es = {});

    int node_count() const { return static_cast<int>(labels.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    bool empty() const { return labels.empty() && edges.empty(); }

    int add_node(Label l = 0);
    int add_edge(int s, int t);
    bool well_formed() const;

    bool operator==(const Graph&) const = default;
};

using GraphPtr = std::shared_ptr<const Graph>;
GraphPtr share(Graph g);

// Structure-preserving map. Construction does not check validity; see
// validate_morphism.
class Morphism {
public:
    Morphism() = default;
    Morphism(GraphPtr src, GraphPtr tgt, std::vector<int> nodeMap, std::vector<int> edgeMap);

    const Graph& source() const { return *src_; }
    const Graph& target() const { return *tgt_; }
    const GraphPtr& source_ptr() const { return src_; }
    const GraphPtr& target_ptr() const { return tgt_; }
    int node(int v) const { return nodes_[v]; }
    int edge(int e) const { return edges_[e]; }
    const std::vector<int>& node_map() const { return nodes_; }
    const std::vector<int>& edge_map() const { return edges_; }

    static Morphism identity(const GraphPtr& g);
    static Morphism from_empty(const GraphPtr& g);

    bool is_mono() const;
    bool is_iso() const;
    // Flags the target nodes/edges hit by the map.
    std::vector<bool> node_image() const;
    std::vector<bool> edge_image() const;
    // Inverse of an iso.
    Morphism inverse() const;

private:
    GraphPtr src_;
    GraphPtr tgt_;
    std::vector<int> nodes_;
    std::vector<int> edges_;
};

// this ; other
Morphism then(const Morphism& first, const Morphism& second);

bool validate_morphism(const Morphism& h);

// Builds the injective morphism with the given node map, assigning each
// source edge to an unused target edge with matching endpoints. Absent when
// the node map is not injective or no such edge assignment exists.
std::optional<Morphism> morphism_from_nodes(const GraphPtr& src, const GraphPtr& tgt, const std::vector<int>& nodeMap);

// Partial assignment used to pin parts of a match; -1 means unassigned.
struct PartialMap {
    std::vector<int> nodes;
    std::vector<int> edges;
    static PartialMap none(const Graph& pattern);
    // Pins everything the composite k;? must agree with: for each x in the
    // domain of k, pattern(k(x)) maps to given(x).
    static PartialMap through(const Morphism& k, const Morphism& given);
};

using MonoVisitor = std::function<bool(const std::vector<int>& nodes, const std::vector<int>& edges)>;

// Visits every injective morphism pattern -> host extending fixed. The
// visitor returns false to stop. Returns false iff stopped early.
bool for_each_mono(const Graph& pattern, const Graph& host, const PartialMap& fixed, const MonoVisitor& visit);
std::vector<Morphism> enumerate_monos(const GraphPtr& pattern, const GraphPtr& host, const PartialMap& fixed);
std::vector<Morphism> enumerate_monos(const GraphPtr& pattern, const GraphPtr& host);
bool exists_mono(const Graph& pattern, const Graph& host, const PartialMap& fixed);
std::optional<Morphism> find_iso(const GraphPtr& a, const GraphPtr& b, const PartialMap& fixed);

// Canonical labelling of a graph whose nodes and edges carry extra colours.
struct CanonicalForm {
    std::vector<int> nodeOrder;  // position -> original node
    std::vector<int> edgeOrder;  // position -> original edge
    std::vector<int> nodePos;    // original node -> position
    std::vector<int> edgePos;    // original edge -> position
    std::string key;
};

CanonicalForm canonical_form(const Graph& g, const std::vector<int>& nodeColors, const std::vector<int>& edgeColors);
std::string canonical_key(const Graph& g);
bool are_isomorphic(const Graph& a, const Graph& b);
// The graph relabelled into canonical order.
Graph canonical_graph(const Graph& g);

struct MorphismPair {
    Morphism first;
    Morphism second;
};

// f: D->L, g: D->G, both mono. Returns (L->P, G->P).
MorphismPair pushout(const Morphism& f, const Morphism& g);
// i: I->L, m: L->G. Returns (I->C, C->G) when the dangling condition holds.
std::optional<MorphismPair> pushout_complement(const Morphism& i, const Morphism& m);
bool dangling_ok(const Morphism& i, const Morphism& m);
// f: A->X, g: B->X. Returns (P->A, P->B).
MorphismPair pullback(const Morphism& f, const Morphism& g);

enum class SquareKind { JE, PO, PB };

// top: D->L (top.first), D->G (top.second); bottom: L->U, G->U.
struct Square {
    MorphismPair top;
    MorphismPair bottom;
    SquareKind kind = SquareKind::JE;
};

std::vector<Square> jointly_epi_overlaps(const Morphism& f, const Morphism& g);

// Bounds on enumeration work for the current thread. Overlap enumeration and
// shifting throw WorkLimitExceeded once a bound is hit.
struct WorkLimit {
    std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
    std::size_t maxOverlaps = static_cast<std::size_t>(-1);
    // Total overlaps emitted plus shifts performed under this limit.
    std::size_t maxSteps = static_cast<std::size_t>(-1);
    std::size_t steps = 0;
};

class WorkLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ScopedWorkLimit {
public:
    explicit ScopedWorkLimit(WorkLimit limit);
    ~ScopedWorkLimit();
    ScopedWorkLimit(const ScopedWorkLimit&) = delete;
    ScopedWorkLimit& operator=(const ScopedWorkLimit&) = delete;

private:
    WorkLimit limit_;
    WorkLimit* previous_;
};

void check_work_limit();
// Counts one unit of work against the current limit, then checks it.
void charge_work_limit();

bool square_commutes(const Square& s);
bool jointly_surjective(const Morphism& a, const Morphism& b);

// All unlabelled graphs with exactly the given node and edge counts, one per
// isomorphism class, sorted by canonical key. Results are cached.
const std::vector<GraphPtr>& graphs_with(int nodes, int edges);
// Ordered by node count, then edge count, then canonical key.
std::vector<GraphPtr> graphs_up_to(int maxNodes, int maxEdges);

std::string to_string(const Graph& g);

}  // namespace gtscegar

#endif
