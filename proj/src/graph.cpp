#include "sawkit/graph.hpp"

#include <queue>
#include <unordered_map>

#include "sawkit/errors.hpp"

namespace sawkit {

namespace {

// Regular-tree words: 2 bits per letter.  The first letter picks one of the
// root's d subtrees, later letters one of d-1 children.
int tree_letter(const VertexId& v, unsigned i) {
    return static_cast<int>((v.word >> (2 * i)) & 3u);
}

constexpr unsigned kTreeMaxDepth = 30;
constexpr unsigned kGpMaxWord = 58;

} // namespace

const std::vector<std::string>& GraphFamily::known_names() {
    static const std::vector<std::string> names = {
        "square",  "cubic",       "triangular",       "ladder",     "tree3",
        "tree4",   "decorated-square", "grandparent", "oriented-ladder"};
    return names;
}

GraphFamily GraphFamily::by_name(const std::string& name) {
    GraphFamily g;
    g.name_ = name;
    if (name == "square") {
        g.kind_ = FamilyKind::Square;
        g.max_degree_ = 4;
        g.undirected_ = true;
        g.embedding_ = EmbeddingKind::Box2D;
    } else if (name == "cubic") {
        g.kind_ = FamilyKind::Cubic;
        g.max_degree_ = 6;
        g.undirected_ = true;
        g.embedding_ = EmbeddingKind::Box3D;
    } else if (name == "triangular") {
        g.kind_ = FamilyKind::Triangular;
        g.max_degree_ = 6;
        g.undirected_ = true;
        g.embedding_ = EmbeddingKind::Box2D;
    } else if (name == "ladder") {
        g.kind_ = FamilyKind::Ladder;
        g.max_degree_ = 3;
        g.undirected_ = true;
        g.embedding_ = EmbeddingKind::Strip;
    } else if (name == "tree3" || name == "tree4") {
        g.kind_ = FamilyKind::Tree;
        g.tree_degree_ = name == "tree3" ? 3 : 4;
        g.max_degree_ = g.tree_degree_;
        g.undirected_ = true;
        g.embedding_ = EmbeddingKind::TreeWord;
    } else if (name == "decorated-square") {
        g.kind_ = FamilyKind::DecoratedSquare;
        g.max_degree_ = 4;
        g.undirected_ = true;
        g.embedding_ = EmbeddingKind::Box2D;
    } else if (name == "grandparent") {
        g.kind_ = FamilyKind::Grandparent;
        g.max_degree_ = 7; // in-degree: parent + 2 children + 4 grandchildren
        g.undirected_ = false;
        g.unimodular_ = false;
        g.embedding_ = EmbeddingKind::TreeEnd;
    } else if (name == "oriented-ladder") {
        g.kind_ = FamilyKind::OrientedLadder;
        g.max_degree_ = 2;
        g.undirected_ = false;
        g.embedding_ = EmbeddingKind::Strip;
    } else {
        throw UnknownFamilyError("unknown graph family: " + name);
    }
    g.origin_ = VertexId{};
    if (g.kind_ == FamilyKind::DecoratedSquare) {
        g.representatives_ = {VertexId::at(0, 0), VertexId::at(1, 0)};
    } else {
        g.representatives_ = {g.origin_};
    }
    return g;
}

bool GraphFamily::vertex_valid(const VertexId& v) const {
    switch (kind_) {
    case FamilyKind::Square:
    case FamilyKind::Triangular:
        return v.z == 0 && v.word == 0 && v.wlen == 0;
    case FamilyKind::Cubic:
        return v.word == 0 && v.wlen == 0;
    case FamilyKind::Ladder:
    case FamilyKind::OrientedLadder:
        return (v.y == 0 || v.y == 1) && v.z == 0 && v.word == 0 && v.wlen == 0;
    case FamilyKind::DecoratedSquare:
        // sites have both coordinates even, midpoints exactly one odd
        return v.z == 0 && v.word == 0 && v.wlen == 0 &&
               !((v.x & 1) && (v.y & 1));
    case FamilyKind::Tree: {
        if (v.x != 0 || v.y != 0 || v.z != 0 || v.wlen > kTreeMaxDepth) return false;
        if (v.wlen < 32 && (v.word >> (2 * v.wlen)) != 0) return false;
        for (unsigned i = 0; i < v.wlen; ++i) {
            int limit = i == 0 ? tree_degree_ - 1 : tree_degree_ - 2;
            if (tree_letter(v, i) > limit) return false;
        }
        return true;
    }
    case FamilyKind::Grandparent:
        if (v.y != 0 || v.z != 0 || v.wlen > kGpMaxWord) return false;
        if (v.wlen < 64 && (v.word >> v.wlen) != 0) return false;
        // canonical form: the word is empty or starts with 1
        return v.wlen == 0 || (v.word & 1u) == 1u;
    }
    return false;
}

void GraphFamily::require_vertex(const VertexId& v) const {
    if (!vertex_valid(v))
        throw InvalidVertexError("invalid vertex for family " + name_ + ": " +
                                 format_vertex(v));
}

int GraphFamily::class_of(const VertexId& v) const {
    require_vertex(v);
    if (kind_ == FamilyKind::DecoratedSquare) return ((v.x & 1) || (v.y & 1)) ? 1 : 0;
    return 0;
}

Rational GraphFamily::weight(const VertexId& v) const {
    require_vertex(v);
    switch (kind_) {
    case FamilyKind::DecoratedSquare:
        // |stab(site) mid| / |stab(mid) site| = 4/2, so M(site) = 2 M(mid);
        // pinned by M(origin) = M(site) = 1.
        return class_of(v) == 0 ? Rational(1) : Rational(1, 2);
    case FamilyKind::Grandparent:
        // M(v) = c^level with modular constant c = 2 (an automorphism fixing
        // a vertex can swap its two children but must fix its parent).
        return Rational::pow2(v.x);
    default:
        return Rational(1);
    }
}

VertexId GraphFamily::gp_parent(const VertexId& v) const {
    VertexId p = v;
    p.x += 1;
    if (p.wlen > 0) {
        p.wlen -= 1;
        p.word &= (p.wlen == 0) ? 0u : ((1ULL << p.wlen) - 1);
    }
    return p;
}

VertexId GraphFamily::gp_child(const VertexId& v, int c) const {
    VertexId k = v;
    k.x -= 1;
    if (v.wlen == 0 && c == 0) return k; // stays on the spine
    k.word |= static_cast<std::uint64_t>(c) << k.wlen;
    k.wlen += 1;
    return k;
}

bool GraphFamily::gp_is_ancestor(const VertexId& anc, const VertexId& v) const {
    int k = anc.x - v.x;
    if (k < 0) return false;
    if (static_cast<unsigned>(k) >= v.wlen) return anc.wlen == 0;
    unsigned rem = v.wlen - static_cast<unsigned>(k);
    return anc.wlen == rem && anc.word == (v.word & ((1ULL << rem) - 1));
}

VertexId GraphFamily::gp_shift(const VertexId& v, int steps) const {
    VertexId r = v;
    r.x += steps;
    return r;
}

void GraphFamily::out_impl(const VertexId& v, std::vector<Neighbor>& out) const {
    switch (kind_) {
    case FamilyKind::Square:
        out.assign({{0, VertexId::at(v.x + 1, v.y)},
                    {1, VertexId::at(v.x - 1, v.y)},
                    {2, VertexId::at(v.x, v.y + 1)},
                    {3, VertexId::at(v.x, v.y - 1)}});
        break;
    case FamilyKind::Cubic:
        out.assign({{0, VertexId::at(v.x + 1, v.y, v.z)},
                    {1, VertexId::at(v.x - 1, v.y, v.z)},
                    {2, VertexId::at(v.x, v.y + 1, v.z)},
                    {3, VertexId::at(v.x, v.y - 1, v.z)},
                    {4, VertexId::at(v.x, v.y, v.z + 1)},
                    {5, VertexId::at(v.x, v.y, v.z - 1)}});
        break;
    case FamilyKind::Triangular:
        out.assign({{0, VertexId::at(v.x + 1, v.y)},
                    {1, VertexId::at(v.x - 1, v.y)},
                    {2, VertexId::at(v.x, v.y + 1)},
                    {3, VertexId::at(v.x, v.y - 1)},
                    {4, VertexId::at(v.x + 1, v.y + 1)},
                    {5, VertexId::at(v.x - 1, v.y - 1)}});
        break;
    case FamilyKind::Ladder:
        out.assign({{0, VertexId::at(v.x + 1, v.y)},
                    {1, VertexId::at(v.x - 1, v.y)},
                    {2, VertexId::at(v.x, 1 - v.y)}});
        break;
    case FamilyKind::Tree: {
        int d = tree_degree_;
        if (v.wlen == 0) {
            for (int c = 0; c < d; ++c) {
                VertexId k = v;
                k.word = static_cast<std::uint64_t>(c);
                k.wlen = 1;
                out.push_back({c, k});
            }
        } else {
            VertexId p = v;
            p.wlen -= 1;
            p.word &= (p.wlen == 0) ? 0u : ((1ULL << (2 * p.wlen)) - 1);
            out.push_back({0, p});
            for (int c = 0; c <= d - 2; ++c) {
                VertexId k = v;
                k.word |= static_cast<std::uint64_t>(c) << (2 * k.wlen);
                k.wlen += 1;
                out.push_back({1 + c, k});
            }
        }
        break;
    }
    case FamilyKind::DecoratedSquare: {
        bool site = !(v.x & 1) && !(v.y & 1);
        if (site) {
            out.assign({{0, VertexId::at(v.x + 1, v.y)},
                        {1, VertexId::at(v.x - 1, v.y)},
                        {2, VertexId::at(v.x, v.y + 1)},
                        {3, VertexId::at(v.x, v.y - 1)}});
        } else if (v.x & 1) { // midpoint of a horizontal edge
            out.assign({{0, VertexId::at(v.x + 1, v.y)}, {1, VertexId::at(v.x - 1, v.y)}});
        } else { // midpoint of a vertical edge
            out.assign({{0, VertexId::at(v.x, v.y + 1)}, {1, VertexId::at(v.x, v.y - 1)}});
        }
        break;
    }
    case FamilyKind::Grandparent: {
        VertexId p = gp_parent(v);
        out.assign({{0, p}, {1, gp_child(v, 0)}, {2, gp_child(v, 1)}, {3, gp_parent(p)}});
        break;
    }
    case FamilyKind::OrientedLadder:
        if (v.y == 0)
            out.assign({{0, VertexId::at(v.x + 1, 0)}, {1, VertexId::at(v.x, 1)}});
        else
            out.assign({{0, VertexId::at(v.x - 1, 1)}, {1, VertexId::at(v.x, 0)}});
        break;
    }
}

void GraphFamily::in_impl(const VertexId& v, std::vector<Neighbor>& in) const {
    // For the undirected families every edge is a pair of opposite arcs, so
    // the in-list is the out-list with each label replaced by the label of
    // the reversed arc at its source.
    switch (kind_) {
    case FamilyKind::Square:
    case FamilyKind::Cubic:
    case FamilyKind::Triangular:
    case FamilyKind::Ladder: {
        out_impl(v, in);
        for (auto& nb : in) nb.label ^= 1; // directions come in +/- pairs
        if (kind_ == FamilyKind::Ladder) in[2].label = 2; // rung is its own pair
        return;
    }
    case FamilyKind::Tree: {
        out_impl(v, in);
        if (v.wlen == 0) {
            for (auto& nb : in) nb.label = 0;
            return;
        }
        int last = tree_letter(v, v.wlen - 1);
        // parent -> v is the parent's child edge for letter `last`
        in[0].label = (v.wlen == 1) ? last : 1 + last;
        for (std::size_t i = 1; i < in.size(); ++i) in[i].label = 0;
        return;
    }
    case FamilyKind::DecoratedSquare: {
        out_impl(v, in);
        bool site = !(v.x & 1) && !(v.y & 1);
        if (site) {
            // midpoints label their minus side 1 and plus side 0, on any axis
            for (auto& nb : in) nb.label = (nb.label & 1) ^ 1;
        } else if (v.x & 1) { // horizontal midpoint: sites reach it by x labels
            in[0].label = 1;
            in[1].label = 0;
        } else { // vertical midpoint: sites reach it by y labels
            in[0].label = 3;
            in[1].label = 2;
        }
        return;
    }
    case FamilyKind::Grandparent: {
        VertexId p = gp_parent(v);
        int c = v.wlen == 0 ? 0 : static_cast<int>((v.word >> (v.wlen - 1)) & 1u);
        in.assign({{1 + c, p}, {0, gp_child(v, 0)}, {0, gp_child(v, 1)}});
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                in.push_back({3, gp_child(gp_child(v, a), b)});
        return;
    }
    case FamilyKind::OrientedLadder:
        if (v.y == 0)
            in.assign({{0, VertexId::at(v.x - 1, 0)}, {1, VertexId::at(v.x, 1)}});
        else
            in.assign({{0, VertexId::at(v.x + 1, 1)}, {1, VertexId::at(v.x, 0)}});
        return;
    }
}

std::vector<Neighbor> GraphFamily::out_neighbors(const VertexId& v) const {
    std::vector<Neighbor> out;
    out_neighbors_into(v, out);
    return out;
}

std::vector<Neighbor> GraphFamily::in_neighbors(const VertexId& v) const {
    std::vector<Neighbor> in;
    in_neighbors_into(v, in);
    return in;
}

void GraphFamily::out_neighbors_into(const VertexId& v, std::vector<Neighbor>& out) const {
    require_vertex(v);
    out.clear();
    reversed_ ? in_impl(v, out) : out_impl(v, out);
}

void GraphFamily::in_neighbors_into(const VertexId& v, std::vector<Neighbor>& in) const {
    require_vertex(v);
    in.clear();
    reversed_ ? out_impl(v, in) : in_impl(v, in);
}

void GraphFamily::embed(const VertexId& v, std::int64_t out[3]) const {
    out[0] = v.x;
    out[1] = v.y;
    out[2] = v.z;
}

std::string GraphFamily::format_vertex(const VertexId& v) const {
    auto num = [](std::int32_t n) { return std::to_string(n); };
    switch (kind_) {
    case FamilyKind::Cubic:
        return "(" + num(v.x) + "," + num(v.y) + "," + num(v.z) + ")";
    case FamilyKind::Tree: {
        if (v.wlen == 0) return "e";
        std::string s;
        for (unsigned i = 0; i < v.wlen; ++i) s += static_cast<char>('0' + tree_letter(v, i));
        return s;
    }
    case FamilyKind::Grandparent: {
        std::string w = "e";
        if (v.wlen > 0) {
            w.clear();
            for (unsigned i = 0; i < v.wlen; ++i)
                w += static_cast<char>('0' + ((v.word >> i) & 1u));
        }
        return "(" + num(v.x) + ";" + w + ")";
    }
    default:
        return "(" + num(v.x) + "," + num(v.y) + ")";
    }
}

GraphFamily reverse(const GraphFamily& g) {
    GraphFamily r = g;
    r.reversed_ = !r.reversed_;
    return r;
}

namespace {

std::optional<int> bfs_distance(const GraphFamily& g, const VertexId& u,
                                const VertexId& v, int cap, bool directed) {
    g.require_vertex(u);
    g.require_vertex(v);
    if (u == v) return 0;
    if (cap <= 0) return std::nullopt;
    std::unordered_map<VertexId, int, VertexHash> dist;
    std::queue<VertexId> q;
    dist.emplace(u, 0);
    q.push(u);
    while (!q.empty()) {
        VertexId cur = q.front();
        q.pop();
        int d = dist.at(cur);
        if (d == cap) continue;
        auto expand = [&](const std::vector<Neighbor>& nbs) -> std::optional<int> {
            for (const auto& nb : nbs) {
                if (dist.count(nb.to)) continue;
                if (nb.to == v) return d + 1;
                dist.emplace(nb.to, d + 1);
                q.push(nb.to);
            }
            return std::nullopt;
        };
        if (auto hit = expand(g.out_neighbors(cur))) return hit;
        if (!directed) {
            if (auto hit = expand(g.in_neighbors(cur))) return hit;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<int> undirected_distance(const GraphFamily& g, const VertexId& u,
                                       const VertexId& v, int cap) {
    return bfs_distance(g, u, v, cap, false);
}

std::optional<int> directed_distance(const GraphFamily& g, const VertexId& u,
                                     const VertexId& v, int cap) {
    return bfs_distance(g, u, v, cap, true);
}

} // namespace sawkit
