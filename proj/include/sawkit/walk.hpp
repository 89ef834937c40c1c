#ifndef SAWKIT_WALK_HPP
#define SAWKIT_WALK_HPP

#include <string>
#include <vector>

#include "sawkit/graph.hpp"

namespace sawkit {

// A finite directed self-avoiding walk: n+1 vertices and the n out-edge
// labels joining them.  Two walks with the same vertices but different edge
// labels are distinct (parallel edges).
struct Walk {
    std::vector<VertexId> vertices;
    std::vector<EdgeLabel> edges;

    int length() const { return static_cast<int>(edges.size()); }
    const VertexId& start() const { return vertices.front(); }
    const VertexId& end() const { return vertices.back(); }

    friend bool operator==(const Walk&, const Walk&) = default;

    static Walk trivial(const VertexId& v) { return Walk{{v}, {}}; }

    // Build from out-edge labels; throws InputError if a label is out of
    // range or the walk revisits a vertex ("not a SAW at step k").
    static Walk from_labels(const GraphFamily& g, const VertexId& start,
                            const std::vector<EdgeLabel>& labels);

    // Build from a direction string, e.g. "EENN" on the square lattice.
    // Letters per family: square E W N S; cubic adds U D; triangular adds
    // A = +(1,1), B = -(1,1); ladder E W R (rung).  Any family also accepts
    // comma-separated label indices like "0,2,1".
    static Walk from_directions(const GraphFamily& g, const VertexId& start,
                                const std::string& dirs);

    // True iff vertices are pairwise distinct and every edge label is the
    // label of an edge vertices[i] -> vertices[i+1].
    bool valid_on(const GraphFamily& g) const;

    // The reversed walk (requires every reversed edge to exist, which holds
    // on the undirected families).
    Walk reversed(const GraphFamily& g) const;

    std::string direction_string(const GraphFamily& g) const;
};

// Direction letter for an out-edge label, or '\0' if the family has no
// letter alphabet.
char direction_letter(const GraphFamily& g, EdgeLabel label);

} // namespace sawkit

#endif
