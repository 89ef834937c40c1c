#ifndef SAWKIT_GRAPH_HPP
#define SAWKIT_GRAPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "sawkit/rational.hpp"
#include "sawkit/vertex.hpp"

namespace sawkit {

// Small integer distinguishing the out-edges of a vertex; for each vertex the
// labels are 0..out_degree-1 in the fixed order documented per family.
using EdgeLabel = int;

struct Neighbor {
    EdgeLabel label; // label of the edge at its source vertex
    VertexId to;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

enum class FamilyKind {
    Square,        // Z^2, undirected, transitive, Delta = 4
    Cubic,         // Z^3, Delta = 6
    Triangular,    // Z^2 plus (+1,+1)/(-1,-1) diagonals, Delta = 6
    Ladder,        // Z x {0,1}, Delta = 3
    Tree,          // d-regular infinite tree (d = 3 or 4 built in)
    DecoratedSquare, // Z^2 with a degree-2 vertex on every edge, 2 classes
    Grandparent,   // 3-regular tree with fixed end + grandparent edges
    OrientedLadder // rungs bidirected, rails oriented in opposite directions
};

// How the extendability oracles see the family's geometry.
enum class EmbeddingKind {
    Box2D,   // square, triangular, decorated-square: escape via box frames
    Box3D,   // cubic
    Strip,   // ladder, oriented-ladder: two-ended column escapes
    TreeWord, // regular trees: every branch off the walk is infinite
    TreeEnd  // grandparent: escape upward past all blocked levels or into a
             // clean subtree
};

// An infinite, locally finite, strongly connected, quasi-transitive directed
// graph, represented intensionally by neighbor generators.  Values are
// immutable and cheap to copy; generators are pure, so a GraphFamily can be
// shared freely across threads.
//
// Neighbor order per family (out-edges; in-neighbors are listed in the same
// geometric order, each carrying the edge's label at its source vertex):
//   square:      +x, -x, +y, -y
//   cubic:       +x, -x, +y, -y, +z, -z
//   triangular:  +x, -x, +y, -y, +(1,1), -(1,1)
//   ladder:      +x, -x, rung
//   tree(d):     parent, child 0, ..; at the root: child 0, .., child d-1
//   decorated:   sites as square (to midpoints); midpoints: +side, -side
//   grandparent: parent, child 0, child 1, grandparent (out);
//                in adds the four grandchildren 00,01,10,11
//   oriented-ladder: rail, rung (bottom rail +x, top rail -x)
class GraphFamily {
public:
    // Exact CLI names: square, cubic, triangular, ladder, tree3, tree4,
    // decorated-square, grandparent, oriented-ladder.
    static GraphFamily by_name(const std::string& name);
    static const std::vector<std::string>& known_names();

    const std::string& name() const { return name_; }
    FamilyKind kind() const { return kind_; }
    int tree_degree() const { return tree_degree_; }
    bool reversed() const { return reversed_; }

    int max_degree() const { return max_degree_; }
    bool is_undirected() const { return undirected_; }
    bool is_unimodular() const { return unimodular_; }
    EmbeddingKind embedding() const { return embedding_; }

    int class_count() const { return static_cast<int>(representatives_.size()); }
    const std::vector<VertexId>& representatives() const { return representatives_; }
    int class_of(const VertexId& v) const;
    VertexId origin() const { return origin_; }

    // The weight function M of the family, pinned by M(origin) = 1.  Constant
    // per class on unimodular families; 2^level on the grandparent graph.
    Rational weight(const VertexId& v) const;

    std::vector<Neighbor> out_neighbors(const VertexId& v) const;
    std::vector<Neighbor> in_neighbors(const VertexId& v) const;

    // Allocation-free variants for enumeration hot paths: clear and refill
    // the caller's buffer.
    void out_neighbors_into(const VertexId& v, std::vector<Neighbor>& out) const;
    void in_neighbors_into(const VertexId& v, std::vector<Neighbor>& out) const;

    bool vertex_valid(const VertexId& v) const;
    void require_vertex(const VertexId& v) const;

    // Integer coordinates used by the boxing oracles (identity for lattices;
    // level for the grandparent graph).  Only meaningful axes are filled.
    void embed(const VertexId& v, std::int64_t out[3]) const;

    std::string format_vertex(const VertexId& v) const;

    // --- family-specific helpers -------------------------------------------
    // Grandparent graph: horocycle level, parent/children, ancestry, and the
    // level-shift automorphism phi (one step toward xi).
    int gp_level(const VertexId& v) const { return v.x; }
    VertexId gp_parent(const VertexId& v) const;
    VertexId gp_child(const VertexId& v, int c) const;
    bool gp_is_ancestor(const VertexId& anc, const VertexId& v) const;
    VertexId gp_shift(const VertexId& v, int steps) const; // phi^steps

private:
    GraphFamily() = default;

    void out_impl(const VertexId& v, std::vector<Neighbor>& out) const;
    void in_impl(const VertexId& v, std::vector<Neighbor>& out) const;

    std::string name_;
    FamilyKind kind_ = FamilyKind::Square;
    int tree_degree_ = 0;
    bool reversed_ = false;
    int max_degree_ = 0;
    bool undirected_ = false;
    bool unimodular_ = true;
    EmbeddingKind embedding_ = EmbeddingKind::Box2D;
    std::vector<VertexId> representatives_;
    VertexId origin_;

    friend GraphFamily reverse(const GraphFamily&);
};

// The graph with every edge reversed.  Representatives, classes and Delta are
// preserved; out/in generators swap.  reverse(reverse(g)) == g.
GraphFamily reverse(const GraphFamily& g);

// Exact BFS distance ignoring edge orientations; nullopt if greater than cap.
std::optional<int> undirected_distance(const GraphFamily& g, const VertexId& u,
                                       const VertexId& v, int cap);

// Exact directed BFS distance (following out-edges); nullopt if > cap.
std::optional<int> directed_distance(const GraphFamily& g, const VertexId& u,
                                     const VertexId& v, int cap);

} // namespace sawkit

#endif
