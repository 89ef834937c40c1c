#ifndef SAWKIT_SYMMETRY_HPP
#define SAWKIT_SYMMETRY_HPP

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sawkit/enumerate.hpp"
#include "sawkit/rational.hpp"

namespace sawkit {

// Mass-transport identity with m(u,v) = number of length-n forward-extendable
// walks u -> v.  Both sides are exact rationals over the class
// representatives; on a unimodular graph they must be equal.
struct MassTransportResult {
    int n = 0;
    Rational lhs, rhs;
    std::vector<U128> from_counts; // per class: forward-extendable walks from s
    std::vector<U128> into_counts; // per class: forward-extendable walks into s
    bool equal = false;
};

MassTransportResult mass_transport_check(const GraphFamily& g, int n,
                                         int threads = 1);

// sigma^F_n(G) versus sigma^B_n(reverse(G)); the ratio must lie in
// [1/C, C] with C = c|S| where c bounds the representative weight ratios,
// and must equal 1 exactly on transitive unimodular families.
struct ReverseCountResult {
    int n = 0;
    U128 sigma_f;      // on G
    U128 sigma_b_rev;  // on reverse(G)
    Rational c_bound;  // C = c|S|
    bool exact_expected = false;
    bool exact_equal = false;
    bool within_bounds = false;
};

ReverseCountResult reverse_count_check(const GraphFamily& g, int n, int threads = 1);

// Greedy-with-backtracking geodesic ray v_0..v_L: pairwise graph distance
// |i-j|, each pair re-verified by BFS during the search.  Undirected only.
std::vector<VertexId> find_geodesic_ray(const GraphFamily& g, const VertexId& v,
                                        int L);

// Doubly infinite window v_{-W}..v_W with d_G(v_i, v_j) >= alpha |i-j| and
// directed edges v_{i+1} -> v_i, v_{-i-1} -> v_{-i} for i >= 0.
struct QuasiGeodesic {
    int window = 0;
    std::vector<VertexId> vertices;  // size 2W+1; index i at vertices[i+W]
    Rational alpha;
    std::vector<EdgeLabel> cert_pos; // label at v_{i+1} of the edge to v_i
    std::vector<EdgeLabel> cert_neg; // label at v_{-i-1} of the edge to v_{-i}
    std::unordered_map<VertexId, int, VertexHash> index_of;

    const VertexId& at(int i) const { return vertices[i + window]; }
};

// The grandparent-graph construction: concatenates shifted copies of the
// shortest directed walks xi (u_1 -> u_0) and zeta (u_-1 -> u_0) along the
// level-shift automorphism, loop-erases, and grid-searches the largest
// alpha in (0,1] (step 1/64) that verifies on the window.  Distances are
// verified by capped BFS for close index pairs and by the per-edge level
// Lipschitz bound (every edge changes the level by at most 2) for far ones.
QuasiGeodesic build_quasi_geodesic(const GraphFamily& g, int W);

// Wraps an explicitly given window (e.g. the x-axis of Z^2) after verifying
// the quasi-geodesic invariants at the stated alpha.
QuasiGeodesic verified_quasi_geodesic(const GraphFamily& g,
                                      std::vector<VertexId> vertices,
                                      Rational alpha, int bfs_pair_cutoff = 16);

// Doubly-indexed finite window; index i lives at items[i + zero_pos].
struct IndexedSequence {
    std::vector<VertexId> items;
    std::ptrdiff_t zero_pos = 0;

    std::ptrdiff_t lo() const { return -zero_pos; }
    std::ptrdiff_t hi() const { return static_cast<std::ptrdiff_t>(items.size()) - 1 - zero_pos; }
};

// Iterated loop-erasure: repeatedly removes the loop w_{a+1}..w_b for the
// duplicate pair w_a = w_b with |a|+|b| minimal (smallest a on ties); if the
// loop contains w_0 the old w_a becomes the new w_0.
IndexedSequence loop_erase(IndexedSequence seq);

enum class DecompCase { FewPlus, FewMinus, ManyBoth, RaySplit };

struct DecompSegment {
    Walk piece;
    Walk truncation;  // the certified backward-extendable part
    int anchor_index; // geodesic index of the segment's start
    bool certified = false;
};

struct Decomposition {
    DecompCase tag = DecompCase::ManyBoth;
    double delta = 0;
    int n = 0;
    std::vector<int> s_plus;  // geodesic indices i >= 0 met by w
    std::vector<int> s_minus; // geodesic indices i <= 0 met by w
    std::vector<DecompSegment> segments;
    double tail_min_length = 0; // 2 alpha delta n (ManyBoth only)
    bool all_certified = false;
};

// Three-case classification along a two-sided quasi-geodesic: few
// intersections with the positive half, few with the negative half, or many
// with both (single backward-extendable tail of length > 2 alpha delta n).
// Every emitted truncation is certified by the backward oracle.
Decomposition decompose_walk(const GraphFamily& g, const Walk& w,
                             const QuasiGeodesic& geo, double delta);

// One-sided geodesic-ray variant: split at the largest ray vertex on w into
// w^- (reversed initial part) and w^+, both backward extendable via the ray.
Decomposition decompose_walk(const GraphFamily& g, const Walk& w,
                             const std::vector<VertexId>& ray);

// Finite check of the two-term counting bound behind the non-unimodular
// argument: sigma_n(v_0) against the composition sum over backward counts
// plus the long-tail term, with this family's alpha, Delta and a chosen
// delta.  Every count on the right is exact.
struct BoundCheckResult {
    int n = 0;
    U128 lhs;        // sigma_n(v_0)
    U128 rhs_first;  // segment-decomposition term
    U128 rhs_second; // long-tail term
    bool holds = false;
};

BoundCheckResult bound_inequality_check(const GraphFamily& g, int n,
                                        const Rational& alpha, double delta,
                                        int threads = 1);

} // namespace sawkit

#endif
