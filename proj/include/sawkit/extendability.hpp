#ifndef SAWKIT_EXTENDABILITY_HPP
#define SAWKIT_EXTENDABILITY_HPP

#include <cstdint>
#include <vector>

#include "sawkit/walk.hpp"

namespace sawkit {

// Finite escape target for the lattice oracles: the walk's bounding box in
// the family embedding, expanded by `margin`, whose boundary shell (the
// frame) certifies an escape.  Every walk vertex lies strictly inside.
struct EscapeRegion {
    int dims = 2;              // 1 = strip (x only), 2, 3
    std::int64_t lo[3] = {0, 0, 0};
    std::int64_t hi[3] = {0, 0, 0};
    int margin = 0;

    bool contains(const std::int64_t c[3]) const;
    bool on_frame(const std::int64_t c[3]) const;
    bool strictly_inside(const std::int64_t c[3]) const;
};

EscapeRegion make_escape_region(const GraphFamily& g,
                                const std::vector<VertexId>& vertices, int margin);

// Exact decision: w extends forward to a singly infinite SAW.  A finite walk
// is forward extendable iff the out-reachable component of its endpoint in
// G minus (walk vertices except the endpoint) is infinite; each family's
// oracle decides that through a finite certificate:
//   - box lattices: the component is infinite iff it reaches the frame of an
//     EscapeRegion (margin 2 per side, doubled on decorated-square);
//   - strips: iff it reaches a column beyond the walk's column range +- 2;
//   - regular trees: always (any unused branch at the endpoint is infinite
//     and disjoint from the walk, since walks in a tree are simple paths);
//   - grandparent graph: iff the flood reaches a vertex above every blocked
//     level (ascend to xi forever) or one whose descendant subtree contains
//     no blocked vertex (descend forever); every reachable vertex without
//     such a certificate is an ancestor of a blocked vertex, a finite set.
bool forward_extendable(const GraphFamily& g, const Walk& w);

// Exact decision: w is the final segment of a singly infinite SAW from
// infinity.  Mirror of forward_extendable over in-reachability from w.start,
// blocking walk vertices except the start.  (A vertex with a single
// neighbour would make every nontrivial walk backward-dead; no built-in
// family has one, their minimum degree is 2.)
bool backward_extendable(const GraphFamily& g, const Walk& w);

// Exact decision: w is a sub-walk of a doubly infinite SAW.  On the
// undirected box and strip families this is decided by unit-vertex-capacity
// max-flow: two vertex-disjoint escape paths from {start, end} to the frame
// (margin 3) exist iff the flow value is 2.  On regular trees it always
// holds.  Unsupported on the directed families (grandparent,
// oriented-ladder), where the two escape sides would need paths under
// different edge orientations; use extendable_by there.
bool doubly_extendable(const GraphFamily& g, const Walk& w);

enum class Side { F, B, Both };

// Finite semi-decision used as the independent cross-validation oracle:
// true iff w admits a self-avoiding extension by k steps on the given
// side(s); for Side::Both the two extensions must be mutually vertex
// disjoint.  Exhaustive search; monotone decreasing in k.
bool extendable_by(const GraphFamily& g, const Walk& w, int k, Side side);

// Region-size value K for which extendable_by(K) coincides with the exact
// box/strip oracles: a K-step extension cannot fit inside the escape region,
// so it must cross the frame.
int equivalence_steps(const GraphFamily& g, const Walk& w, bool doubly);

} // namespace sawkit

#endif
