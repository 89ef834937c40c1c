#ifndef SAWKIT_SAW_TREE_HPP
#define SAWKIT_SAW_TREE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sawkit/walk.hpp"

namespace sawkit {

// Depth-truncated SAW tree: node <-> SAW of length <= depth from the root
// vertex, children = one-step extensions in edge-label order.  Stored as an
// arena; the vertex a node represents is reconstructed by replaying edge
// labels from the root, which keeps nodes small.
struct TruncatedTree {
    struct Node {
        std::int32_t parent = -1;
        std::int32_t first_child = -1;
        std::int32_t nchild = 0;
        std::int16_t label = -1; // out-edge label of the last step; -1 at root
        std::int16_t level = 0;
    };

    std::vector<Node> nodes;               // root at index 0
    std::vector<std::uint64_t> level_sizes; // |W_n| for n = 0..depth
    int depth = 0;
    bool joined = false;                   // true for the wedge over S
    std::vector<VertexId> sub_roots;       // root vertex per subtree (size 1
                                           // unless joined)

    std::size_t node_count() const { return nodes.size(); }

    // Walks the parent chain; O(level) per call.
    Walk walk_of(const GraphFamily& g, std::int32_t node) const;
    VertexId vertex_of(const GraphFamily& g, std::int32_t node) const;

    // Stable dump: one line per node "id parent level edgeLabel vertexId".
    void dump(const GraphFamily& g, std::ostream& os) const;
};

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

// All SAWs from v of length <= depth; |W_n| = sigma_n(v).  Throws
// ResourceError when the arena would exceed the node budget.
TruncatedTree build_saw_tree(const GraphFamily& g, const VertexId& v, int depth,
                             std::size_t node_budget = kDefaultNodeBudget);

// The forward SAW tree: nodes are the forward-extendable SAWs.  Equals
// prune_finite_bushes of the full tree under the exact forward oracle.
// No separate good-vertex pruned variant exists: on every built-in family
// each vertex attains the maximal branching number (the forward counts from
// any vertex majorize a shifted copy of those from any other), so that
// pruning would be the identity here.
TruncatedTree build_forward_saw_tree(const GraphFamily& g, const VertexId& v,
                                     int depth,
                                     std::size_t node_budget = kDefaultNodeBudget);

// Keeps exactly the nodes whose whole ancestor chain satisfies `keep`
// (the root is always retained).  With an oracle marking nodes whose
// untruncated subtree is infinite -- such oracles are hereditary along
// prefixes -- this removes precisely the finite bushes.
TruncatedTree prune_finite_bushes(const GraphFamily& g, const TruncatedTree& t,
                                  const std::function<bool(const Walk&)>& keep);

// Wedge: joins the trees at a new root o; old roots sit at level 1, so
// |W_n| = sum_s sigma_{n-1}(s).
TruncatedTree join_trees(const std::vector<TruncatedTree>& trees);

// Bounded-depth witness check of 1-subperiodicity: for sampled nodes w, finds
// the node w' at level <= 1 whose vertex represents the class of w's
// endpoint, and checks that the truncated subtree at w embeds injectively
// into the one at w' (recursive matching on child subtrees).  A failed match
// is reported as inconclusive, never as a refutation.
struct SubperiodicSample {
    std::int32_t node = -1;
    std::int32_t target = -1;
    int depth_checked = 0;
    bool embedded = false;
};

struct SubperiodicReport {
    std::vector<SubperiodicSample> samples;
    int samples_embedded = 0;
    bool all_embedded = false;
};

SubperiodicReport check_subperiodic_witness(const GraphFamily& g,
                                            const TruncatedTree& t,
                                            int max_samples = 64,
                                            int depth_cap = 5);

} // namespace sawkit

#endif
