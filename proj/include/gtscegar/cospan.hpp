#ifndef GTSCEGAR_COSPAN_HPP
#define GTSCEGAR_COSPAN_HPP

#include "gtscegar/graph.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gtscegar {

// A -> X <- B with both legs mono. A is the domain, B the codomain.
struct Cospan {
    Morphism left;   // A -> X
    Morphism right;  // B -> X

    const Graph& domain() const { return left.source(); }
    const Graph& middle() const { return left.target(); }
    const Graph& codomain() const { return right.source(); }
    const GraphPtr& domain_ptr() const { return left.source_ptr(); }
    const GraphPtr& middle_ptr() const { return left.target_ptr(); }
    const GraphPtr& codomain_ptr() const { return right.source_ptr(); }

    bool is_iso() const { return left.is_iso() && right.is_iso(); }
    // Right leg iso: the cospan is a lifted graph morphism.
    bool is_lifted() const { return right.is_iso(); }
    // Every node of the middle lies in the codomain image (only edges are
    // dropped when passing to the codomain).
    bool keeps_all_nodes() const;
    bool valid() const;
};

class CompositionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Cospan compose(const Cospan& first, const Cospan& second);
Cospan identity_cospan(const GraphPtr& a);
Cospan lift(const Morphism& m);
// The cospan 0 -> G <- 0 standing for a closed state.
Cospan state_of(const GraphPtr& g);
bool equal_up_to_iso(const Cospan& c1, const Cospan& c2);

// Canonical relabelling of the middle and codomain, keeping the domain fixed.
struct CanonicalArrow {
    Cospan arrow;
    Morphism codomainIso;  // old codomain -> new codomain
    std::string key;
};
CanonicalArrow canonicalize(const Cospan& c);

// Borrowed-context diagram for ell: D -> L <- I and ctx: D -> G <- J.
struct BCSquare {
    Cospan ell;
    Cospan ctx;
    Square overlap;    // L -> G+, G -> G+
    Morphism iToC;     // I -> C
    Morphism cToGp;    // C -> G+
    Morphism jToF;     // J -> F
    Morphism fToGp;    // F -> G+
    Morphism kToC;     // K -> C
    Morphism kToF;     // K -> F
    Cospan arrow;      // J -> F <- K
    Cospan residual;   // I -> C <- K
};

std::vector<BCSquare> borrowed_context_squares(const Cospan& ell, const Cospan& ctx);

std::string to_string(const Cospan& c);

}  // namespace gtscegar

#endif
