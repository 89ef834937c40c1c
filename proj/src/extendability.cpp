#include "sawkit/extendability.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "sawkit/errors.hpp"

namespace sawkit {

namespace {

using VSet = std::unordered_set<VertexId, VertexHash>;

int embed_scale(const GraphFamily& g) {
    // Decorated-square coordinates are doubled, so margins double with them.
    return g.kind() == FamilyKind::DecoratedSquare ? 2 : 1;
}

VSet blocked_except(const Walk& w, const VertexId& keep) {
    VSet s;
    for (const auto& v : w.vertices)
        if (!(v == keep)) s.insert(v);
    return s;
}

// Fast certificate: an axis ray from the source that clears the blocked
// set's bounding box without touching a blocked vertex is an infinite escape
// on the box and strip families (their unit steps follow the axes and the
// blocked set is finite).  Directed families are excluded: a ray must be a
// directed walk there, which single axis steps need not be.
struct AxisRay {
    int axis = 0;
    int dir = 1;
    std::int64_t anchor[3] = {0, 0, 0}; // ray cells: anchor + t*dir*e_axis, t >= 1
};

std::vector<AxisRay> free_axis_rays(const GraphFamily& g, const VSet& blocked,
                                    const VertexId& source) {
    std::vector<AxisRay> rays;
    if (!g.is_undirected()) return rays;
    int dims = g.embedding() == EmbeddingKind::Box3D ? 3 : 2;
    if (g.embedding() == EmbeddingKind::Strip) dims = 1;
    std::int64_t lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0}, c[3];
    bool first = true;
    for (const auto& b : blocked) {
        g.embed(b, c);
        for (int a = 0; a < 3; ++a) {
            if (first || c[a] < lo[a]) lo[a] = c[a];
            if (first || c[a] > hi[a]) hi[a] = c[a];
        }
        first = false;
    }
    std::int64_t src[3];
    g.embed(source, src);
    for (int axis = 0; axis < dims; ++axis) {
        for (int dir = -1; dir <= 1; dir += 2) {
            std::int64_t reach =
                first ? 0 : (dir > 0 ? hi[axis] - src[axis] : src[axis] - lo[axis]);
            // walk to just past the blocked box; validity along an axis is
            // parity-periodic, so two clear steps beyond it certify the rest
            std::int64_t steps = std::max<std::int64_t>(reach + 1, 2);
            VertexId cur = source;
            bool clear = true;
            for (std::int64_t s = 0; s < steps && clear; ++s) {
                switch (axis) {
                case 0: cur.x += dir; break;
                case 1: cur.y += dir; break;
                default: cur.z += dir; break;
                }
                if (!g.vertex_valid(cur) || blocked.count(cur)) clear = false;
            }
            if (clear) {
                AxisRay r;
                r.axis = axis;
                r.dir = dir;
                for (int a = 0; a < 3; ++a) r.anchor[a] = src[a];
                rays.push_back(r);
            }
        }
    }
    return rays;
}

bool rays_disjoint(const AxisRay& a, const AxisRay& b) {
    if (a.axis != b.axis) {
        for (int ax = 0; ax < 3; ++ax)
            if (ax != a.axis && ax != b.axis && a.anchor[ax] != b.anchor[ax])
                return true;
        // unique candidate meeting cell
        std::int64_t t_a = (b.anchor[a.axis] - a.anchor[a.axis]) * a.dir;
        std::int64_t t_b = (a.anchor[b.axis] - b.anchor[b.axis]) * b.dir;
        return !(t_a >= 1 && t_b >= 1);
    }
    for (int ax = 0; ax < 3; ++ax)
        if (ax != a.axis && a.anchor[ax] != b.anchor[ax]) return true; // parallel lines
    if (a.dir == b.dir) return false; // same half-line tail
    // opposite directions on one line: they meet iff the gap leaves room
    std::int64_t fwd = a.dir > 0 ? a.anchor[a.axis] : b.anchor[a.axis];
    std::int64_t bwd = a.dir > 0 ? b.anchor[a.axis] : a.anchor[a.axis];
    return bwd - fwd < 2;
}

// BFS over the escape region; true iff the frame is reached, i.e. the
// reachable component is infinite.
bool flood_to_frame(const GraphFamily& g, const EscapeRegion& region,
                    const VSet& blocked, const VertexId& source, bool forward) {
    std::int64_t c[3];
    g.embed(source, c);
    if (region.on_frame(c)) return true;
    VSet seen{source};
    std::deque<VertexId> q{source};
    while (!q.empty()) {
        VertexId cur = q.front();
        q.pop_front();
        auto nbs = forward ? g.out_neighbors(cur) : g.in_neighbors(cur);
        for (const auto& nb : nbs) {
            if (blocked.count(nb.to) || seen.count(nb.to)) continue;
            g.embed(nb.to, c);
            if (!region.contains(c)) continue;
            if (region.on_frame(c)) return true;
            seen.insert(nb.to);
            q.push_back(nb.to);
        }
    }
    return false;
}

// Grandparent graph: certified flood.  Certificates (either implies the
// reachable component is infinite):
//   (a) level above every blocked level: the all-ancestors ray is fresh;
//   (b) descendant subtree free of blocked vertices: descend forever.
// Without a certificate a reachable vertex is an ancestor-or-self of some
// blocked vertex at level <= max blocked level, so the flood terminates.
bool gp_escape(const GraphFamily& g, const VSet& blocked, const VertexId& source,
               bool forward) {
    int max_level = source.x;
    for (const auto& b : blocked) max_level = std::max(max_level, b.x);
    auto certified = [&](const VertexId& x) {
        if (x.x > max_level) return true;
        for (const auto& b : blocked)
            if (g.gp_is_ancestor(x, b)) return false;
        return true;
    };
    if (certified(source)) return true;
    VSet seen{source};
    std::deque<VertexId> q{source};
    while (!q.empty()) {
        VertexId cur = q.front();
        q.pop_front();
        auto nbs = forward ? g.out_neighbors(cur) : g.in_neighbors(cur);
        for (const auto& nb : nbs) {
            if (blocked.count(nb.to) || seen.count(nb.to)) continue;
            if (certified(nb.to)) return true;
            seen.insert(nb.to);
            q.push_back(nb.to);
        }
    }
    return false;
}

// Walks on a tree are simple paths, so any branch at an end that the walk
// does not use is infinite and disjoint from it.
bool tree_end_free(const GraphFamily& g, const Walk& w, bool forward) {
    const VertexId& tip = forward ? w.end() : w.start();
    VSet on_walk(w.vertices.begin(), w.vertices.end());
    auto nbs = forward ? g.out_neighbors(tip) : g.in_neighbors(tip);
    for (const auto& nb : nbs)
        if (!on_walk.count(nb.to)) return true;
    return false;
}

bool single_side(const GraphFamily& g, const Walk& w, bool forward) {
    const VertexId& source = forward ? w.end() : w.start();
    switch (g.embedding()) {
    case EmbeddingKind::Box2D:
    case EmbeddingKind::Box3D:
    case EmbeddingKind::Strip: {
        VSet blocked = blocked_except(w, source);
        if (!free_axis_rays(g, blocked, source).empty()) return true;
        int margin = g.embedding() == EmbeddingKind::Strip ? 2 : 2 * embed_scale(g);
        EscapeRegion region = make_escape_region(g, w.vertices, margin);
        return flood_to_frame(g, region, blocked, source, forward);
    }
    case EmbeddingKind::TreeWord:
        return tree_end_free(g, w, forward);
    case EmbeddingKind::TreeEnd:
        return gp_escape(g, blocked_except(w, source), source, forward);
    }
    throw UnsupportedFamilyError("no extendability oracle for " + g.name());
}

// --- two vertex-disjoint escape paths via unit-capacity max-flow -----------

struct FlowNet {
    // node 2i = in-copy of cell i, 2i+1 = out-copy; then source, sink
    std::vector<std::vector<int>> adj; // arc ids per node
    std::vector<int> head, cap;
    int source = 0, sink = 0;

    int add_node() {
        adj.emplace_back();
        return static_cast<int>(adj.size()) - 1;
    }
    void add_arc(int u, int v, int c) {
        adj[u].push_back(static_cast<int>(head.size()));
        head.push_back(v);
        cap.push_back(c);
        adj[v].push_back(static_cast<int>(head.size()));
        head.push_back(u);
        cap.push_back(0);
    }

    bool augment() {
        std::vector<int> pred_arc(adj.size(), -1);
        std::deque<int> q{source};
        pred_arc[source] = -2;
        while (!q.empty() && pred_arc[sink] == -1) {
            int u = q.front();
            q.pop_front();
            for (int a : adj[u]) {
                if (cap[a] <= 0 || pred_arc[head[a]] != -1) continue;
                pred_arc[head[a]] = a;
                q.push_back(head[a]);
            }
        }
        if (pred_arc[sink] == -1) return false;
        for (int v = sink; v != source;) {
            int a = pred_arc[v];
            cap[a] -= 1;
            cap[a ^ 1] += 1;
            v = head[a ^ 1];
        }
        return true;
    }
};

bool two_disjoint_escapes(const GraphFamily& g, const Walk& w) {
    // fast certificate: a pair of disjoint straight escapes already forms the
    // two ends of a doubly infinite SAW through w
    {
        VSet blocked_f = blocked_except(w, w.end());
        VSet blocked_b = blocked_except(w, w.start());
        auto fwd = free_axis_rays(g, blocked_f, w.end());
        auto bwd = free_axis_rays(g, blocked_b, w.start());
        for (const auto& rf : fwd)
            for (const auto& rb : bwd)
                if (rays_disjoint(rf, rb)) return true;
    }

    EscapeRegion region = make_escape_region(g, w.vertices, 3 * embed_scale(g));
    VSet blocked;
    for (const auto& v : w.vertices)
        if (!(v == w.start()) && !(v == w.end())) blocked.insert(v);

    // region cells reachable from either end, frame included but not expanded
    std::unordered_map<VertexId, int, VertexHash> id;
    std::vector<VertexId> cells;
    std::vector<char> frame_flag;
    std::deque<VertexId> q;
    auto intern = [&](const VertexId& v) {
        auto it = id.find(v);
        if (it != id.end()) return it->second;
        std::int64_t c[3];
        g.embed(v, c);
        int i = static_cast<int>(cells.size());
        id.emplace(v, i);
        cells.push_back(v);
        frame_flag.push_back(region.on_frame(c) ? 1 : 0);
        if (!frame_flag.back()) q.push_back(v);
        return i;
    };
    intern(w.start());
    intern(w.end());
    while (!q.empty()) {
        VertexId cur = q.front();
        q.pop_front();
        std::int64_t c[3];
        for (const auto& nb : g.out_neighbors(cur)) {
            if (blocked.count(nb.to) || id.count(nb.to)) continue;
            g.embed(nb.to, c);
            if (!region.contains(c)) continue;
            intern(nb.to);
        }
    }

    FlowNet net;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        net.add_node();
        net.add_node();
    }
    net.source = net.add_node();
    net.sink = net.add_node();
    bool closed = w.start() == w.end(); // zero-length walk
    for (std::size_t i = 0; i < cells.size(); ++i) {
        bool is_end = cells[i] == w.start() || cells[i] == w.end();
        int vcap = (closed && is_end) ? 2 : 1;
        net.add_arc(2 * static_cast<int>(i), 2 * static_cast<int>(i) + 1, vcap);
        if (frame_flag[i]) net.add_arc(2 * static_cast<int>(i) + 1, net.sink, 1);
    }
    net.add_arc(net.source, 2 * id.at(w.start()), closed ? 2 : 1);
    if (!closed) net.add_arc(net.source, 2 * id.at(w.end()), 1);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (frame_flag[i]) continue;
        for (const auto& nb : g.out_neighbors(cells[i])) {
            auto it = id.find(nb.to);
            if (it == id.end()) continue;
            net.add_arc(2 * static_cast<int>(i) + 1, 2 * it->second, 1);
        }
    }
    return net.augment() && net.augment();
}

// --- finite-extension search ------------------------------------------------

struct ExtSearch {
    const GraphFamily& g;
    VSet used; // walk plus any fixed extension
    long long budget = 200'000'000;

    // At least `want` vertices reachable from src through the complement of
    // `used` (src itself counts and may sit in `used`).  A k-step extension
    // occupies k+1 reachable vertices, so this is a sound prune; it is what
    // keeps the search from re-enumerating tails behind a self-made seal.
    bool reachable_at_least(const VertexId& src, int want, bool forward) {
        if (want <= 1) return true;
        VSet seen{src};
        std::deque<VertexId> q{src};
        int count = 1;
        while (!q.empty()) {
            VertexId cur = q.front();
            q.pop_front();
            auto nbs = forward ? g.out_neighbors(cur) : g.in_neighbors(cur);
            for (const auto& nb : nbs) {
                if (seen.count(nb.to) || used.count(nb.to)) continue;
                if (++count >= want) return true;
                seen.insert(nb.to);
                q.push_back(nb.to);
            }
        }
        return false;
    }

    bool extend(const VertexId& from, int k, bool forward) {
        if (k == 0) return true;
        if (--budget <= 0) throw ResourceError("extendable_by search budget exhausted");
        auto nbs = forward ? g.out_neighbors(from) : g.in_neighbors(from);
        for (const auto& nb : nbs) {
            if (used.count(nb.to)) continue;
            used.insert(nb.to);
            bool ok = reachable_at_least(nb.to, k, forward) &&
                      extend(nb.to, k - 1, forward);
            used.erase(nb.to);
            if (ok) return true;
        }
        return false;
    }

    // Forward extension of k steps, then a backward extension of k steps
    // disjoint from it: iterate over complete forward extensions, pruning
    // any forward branch that strangles the backward side.
    bool joint(const Walk& w, int k) {
        return joint_rec(w, w.end(), k, k);
    }

    bool joint_rec(const Walk& w, const VertexId& from, int remaining, int k) {
        if (remaining == 0) return extend(w.start(), k, false);
        if (--budget <= 0) throw ResourceError("extendable_by search budget exhausted");
        for (const auto& nb : g.out_neighbors(from)) {
            if (used.count(nb.to)) continue;
            used.insert(nb.to);
            bool ok = reachable_at_least(nb.to, remaining, true) &&
                      reachable_at_least(w.start(), k + 1, false) &&
                      joint_rec(w, nb.to, remaining - 1, k);
            used.erase(nb.to);
            if (ok) return true;
        }
        return false;
    }
};

} // namespace

bool EscapeRegion::contains(const std::int64_t c[3]) const {
    for (int a = 0; a < dims; ++a)
        if (c[a] < lo[a] || c[a] > hi[a]) return false;
    return true;
}

bool EscapeRegion::on_frame(const std::int64_t c[3]) const {
    if (!contains(c)) return false;
    for (int a = 0; a < dims; ++a)
        if (c[a] == lo[a] || c[a] == hi[a]) return true;
    return false;
}

bool EscapeRegion::strictly_inside(const std::int64_t c[3]) const {
    return contains(c) && !on_frame(c);
}

EscapeRegion make_escape_region(const GraphFamily& g,
                                const std::vector<VertexId>& vertices, int margin) {
    if (margin < 1) throw InputError("escape margin must be >= 1");
    EscapeRegion r;
    switch (g.embedding()) {
    case EmbeddingKind::Box2D: r.dims = 2; break;
    case EmbeddingKind::Box3D: r.dims = 3; break;
    case EmbeddingKind::Strip: r.dims = 1; break;
    default:
        throw UnsupportedFamilyError("family " + g.name() + " has no box embedding");
    }
    r.margin = margin;
    std::int64_t c[3];
    bool first = true;
    for (const auto& v : vertices) {
        g.embed(v, c);
        for (int a = 0; a < r.dims; ++a) {
            if (first || c[a] < r.lo[a]) r.lo[a] = c[a];
            if (first || c[a] > r.hi[a]) r.hi[a] = c[a];
        }
        first = false;
    }
    if (first) throw InputError("escape region needs at least one vertex");
    for (int a = 0; a < r.dims; ++a) {
        r.lo[a] -= margin;
        r.hi[a] += margin;
    }
    return r;
}

bool forward_extendable(const GraphFamily& g, const Walk& w) {
    return single_side(g, w, true);
}

bool backward_extendable(const GraphFamily& g, const Walk& w) {
    return single_side(g, w, false);
}

bool doubly_extendable(const GraphFamily& g, const Walk& w) {
    switch (g.embedding()) {
    case EmbeddingKind::TreeWord:
        // fresh branches at the two ends of a simple path are disjoint
        return tree_end_free(g, w, true) && tree_end_free(g, w, false);
    case EmbeddingKind::Box2D:
    case EmbeddingKind::Box3D:
    case EmbeddingKind::Strip:
        if (!g.is_undirected())
            throw UnsupportedFamilyError(
                "doubly_extendable is not supported on directed family " + g.name() +
                "; use extendable_by");
        return two_disjoint_escapes(g, w);
    case EmbeddingKind::TreeEnd:
        throw UnsupportedFamilyError(
            "doubly_extendable is not supported on directed family " + g.name() +
            "; use extendable_by");
    }
    throw UnsupportedFamilyError("no extendability oracle for " + g.name());
}

bool extendable_by(const GraphFamily& g, const Walk& w, int k, Side side) {
    if (k < 0) throw InputError("extension length must be nonnegative");
    if (k == 0) return true;
    ExtSearch search{g, VSet(w.vertices.begin(), w.vertices.end())};
    switch (side) {
    case Side::F: return search.extend(w.end(), k, true);
    case Side::B: return search.extend(w.start(), k, false);
    case Side::Both: return search.joint(w, k);
    }
    return false;
}

int equivalence_steps(const GraphFamily& g, const Walk& w, bool doubly) {
    int margin = (doubly ? 3 : 2) * embed_scale(g);
    EscapeRegion r = make_escape_region(g, w.vertices, margin);
    std::int64_t cells = 1;
    for (int a = 0; a < r.dims; ++a) cells *= (r.hi[a] - r.lo[a] + 1);
    if (r.dims == 1) cells *= 2; // strips have two rows
    if (cells > 1'000'000) throw ResourceError("equivalence region too large");
    return static_cast<int>(cells);
}

} // namespace sawkit
