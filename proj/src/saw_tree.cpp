#include "sawkit/saw_tree.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_set>

#include "sawkit/errors.hpp"
#include "sawkit/extendability.hpp"

namespace sawkit {

namespace {

using VSet = std::unordered_set<VertexId, VertexHash>;

struct Builder {
    const GraphFamily& g;
    int depth;
    std::size_t budget;
    TruncatedTree t;
    VSet seen;

    void expand(std::int32_t idx, const VertexId& v, int level) {
        if (level == depth) return;
        std::vector<Neighbor> fresh;
        for (const auto& nb : g.out_neighbors(v))
            if (!seen.count(nb.to)) fresh.push_back(nb);
        if (t.nodes.size() + fresh.size() > budget)
            throw ResourceError("SAW tree exceeds node budget of " +
                                std::to_string(budget));
        std::int32_t first = static_cast<std::int32_t>(t.nodes.size());
        for (const auto& nb : fresh) {
            TruncatedTree::Node node;
            node.parent = idx;
            node.label = static_cast<std::int16_t>(nb.label);
            node.level = static_cast<std::int16_t>(level + 1);
            t.nodes.push_back(node);
        }
        t.nodes[idx].first_child = fresh.empty() ? -1 : first;
        t.nodes[idx].nchild = static_cast<std::int32_t>(fresh.size());
        t.level_sizes[level + 1] += fresh.size();
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            seen.insert(fresh[i].to);
            expand(first + static_cast<std::int32_t>(i), fresh[i].to, level + 1);
            seen.erase(fresh[i].to);
        }
    }
};

} // namespace

Walk TruncatedTree::walk_of(const GraphFamily& g, std::int32_t node) const {
    std::vector<EdgeLabel> labels;
    std::int32_t cur = node;
    while (nodes[cur].parent >= 0) {
        labels.push_back(nodes[cur].label);
        cur = nodes[cur].parent;
    }
    int sub = 0;
    if (joined) {
        if (node == 0) throw InputError("the joined root is not a walk");
        // identify the subtree and drop the join edge (topmost label, -1)
        std::int32_t anc = node;
        while (nodes[anc].parent != 0) anc = nodes[anc].parent;
        sub = anc - nodes[0].first_child;
        labels.pop_back();
    }
    std::reverse(labels.begin(), labels.end());
    return Walk::from_labels(g, sub_roots[sub], labels);
}

VertexId TruncatedTree::vertex_of(const GraphFamily& g, std::int32_t node) const {
    return walk_of(g, node).end();
}

void TruncatedTree::dump(const GraphFamily& g, std::ostream& os) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        std::string vtx = (joined && i == 0)
                              ? "o"
                              : g.format_vertex(vertex_of(g, static_cast<std::int32_t>(i)));
        os << i << ' ' << n.parent << ' ' << n.level << ' ' << n.label << ' ' << vtx
           << '\n';
    }
}

TruncatedTree build_saw_tree(const GraphFamily& g, const VertexId& v, int depth,
                             std::size_t node_budget) {
    g.require_vertex(v);
    if (depth < 0) throw InputError("tree depth must be nonnegative");
    Builder b{g, depth, node_budget, {}, {}};
    b.t.depth = depth;
    b.t.level_sizes.assign(depth + 1, 0);
    b.t.level_sizes[0] = 1;
    b.t.sub_roots = {v};
    b.t.nodes.push_back({});
    b.seen.insert(v);
    b.expand(0, v, 0);
    return b.t;
}

TruncatedTree prune_finite_bushes(const GraphFamily& g, const TruncatedTree& t,
                                  const std::function<bool(const Walk&)>& keep) {
    std::vector<char> kept(t.nodes.size(), 0);
    kept[0] = 1;
    // mark: DFS with an incremental walk; a node is examined only when its
    // whole ancestor chain is kept
    struct Mark {
        const GraphFamily& g;
        const TruncatedTree& t;
        const std::function<bool(const Walk&)>& keep;
        std::vector<char>& kept;
        Walk walk{};

        void visit(std::int32_t idx) {
            for (std::int32_t c = 0; c < t.nodes[idx].nchild; ++c) {
                std::int32_t ci = t.nodes[idx].first_child + c;
                auto nbs = g.out_neighbors(walk.end());
                const Neighbor& nb = nbs[t.nodes[ci].label];
                walk.vertices.push_back(nb.to);
                walk.edges.push_back(nb.label);
                if (keep(walk)) {
                    kept[ci] = 1;
                    visit(ci);
                }
                walk.vertices.pop_back();
                walk.edges.pop_back();
            }
        }
    };
    if (t.joined) {
        for (std::int32_t c = 0; c < t.nodes[0].nchild; ++c) {
            std::int32_t ci = t.nodes[0].first_child + c;
            Mark m{g, t, keep, kept, Walk::trivial(t.sub_roots[c])};
            if (keep(m.walk)) {
                kept[ci] = 1;
                m.visit(ci);
            }
        }
    } else {
        Mark m{g, t, keep, kept, Walk::trivial(t.sub_roots[0])};
        if (!keep(m.walk))
            throw InputError("pruning would remove the root walk");
        m.visit(0);
    }

    // compact, preserving child order
    TruncatedTree out;
    out.depth = t.depth;
    out.joined = t.joined;
    out.sub_roots = t.sub_roots;
    out.level_sizes.assign(t.depth + 1, 0);
    struct Copy {
        const TruncatedTree& t;
        const std::vector<char>& kept;
        TruncatedTree& out;

        void copy_children(std::int32_t old_idx, std::int32_t new_idx) {
            std::vector<std::int32_t> chosen;
            for (std::int32_t c = 0; c < t.nodes[old_idx].nchild; ++c) {
                std::int32_t ci = t.nodes[old_idx].first_child + c;
                if (kept[ci]) chosen.push_back(ci);
            }
            std::int32_t first = static_cast<std::int32_t>(out.nodes.size());
            for (std::int32_t ci : chosen) {
                TruncatedTree::Node n = t.nodes[ci];
                n.parent = new_idx;
                n.first_child = -1;
                n.nchild = 0;
                out.nodes.push_back(n);
                out.level_sizes[n.level] += 1;
            }
            out.nodes[new_idx].first_child = chosen.empty() ? -1 : first;
            out.nodes[new_idx].nchild = static_cast<std::int32_t>(chosen.size());
            for (std::size_t i = 0; i < chosen.size(); ++i)
                copy_children(chosen[i], first + static_cast<std::int32_t>(i));
        }
    };
    out.nodes.push_back(t.nodes[0]);
    out.nodes[0].first_child = -1;
    out.nodes[0].nchild = 0;
    out.level_sizes[0] = 1;
    Copy{t, kept, out}.copy_children(0, 0);
    return out;
}

TruncatedTree build_forward_saw_tree(const GraphFamily& g, const VertexId& v,
                                     int depth, std::size_t node_budget) {
    TruncatedTree full = build_saw_tree(g, v, depth, node_budget);
    return prune_finite_bushes(
        g, full, [&g](const Walk& w) { return forward_extendable(g, w); });
}

TruncatedTree join_trees(const std::vector<TruncatedTree>& trees) {
    if (trees.empty()) throw InputError("join_trees needs at least one tree");
    TruncatedTree out;
    int max_depth = 0;
    for (const auto& t : trees) {
        if (t.joined) throw InputError("join_trees inputs must be plain trees");
        max_depth = std::max(max_depth, t.depth);
    }
    out.depth = max_depth + 1;
    out.joined = true;
    out.level_sizes.assign(out.depth + 1, 0);
    out.level_sizes[0] = 1;
    std::size_t k = trees.size();

    TruncatedTree::Node root;
    root.level = 0;
    root.first_child = 1;
    root.nchild = static_cast<std::int32_t>(k);
    out.nodes.push_back(root);

    // old roots occupy slots 1..k; remaining nodes of tree i start at base[i]
    std::vector<std::int32_t> base(k);
    std::int32_t next = static_cast<std::int32_t>(k) + 1;
    for (std::size_t i = 0; i < k; ++i) {
        base[i] = next;
        next += static_cast<std::int32_t>(trees[i].nodes.size()) - 1;
    }
    out.nodes.resize(next);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& t = trees[i];
        out.sub_roots.push_back(t.sub_roots[0]);
        auto remap = [&](std::int32_t old) {
            return old == 0 ? static_cast<std::int32_t>(i) + 1 : base[i] + old - 1;
        };
        for (std::size_t j = 0; j < t.nodes.size(); ++j) {
            TruncatedTree::Node n = t.nodes[j];
            n.level = static_cast<std::int16_t>(n.level + 1);
            n.parent = (j == 0) ? 0 : remap(n.parent);
            if (n.first_child >= 0) n.first_child = remap(n.first_child);
            if (j == 0) n.label = -1;
            out.nodes[remap(static_cast<std::int32_t>(j))] = n;
            out.level_sizes[n.level] += 1;
        }
    }
    return out;
}

namespace {

struct Embedder {
    const TruncatedTree& t;
    std::map<std::tuple<std::int32_t, std::int32_t, int>, bool> memo;

    bool embeds(std::int32_t a, std::int32_t b, int d) {
        if (d == 0) return true;
        auto key = std::make_tuple(a, b, d);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool ok = match_children(a, b, d);
        memo.emplace(key, ok);
        return ok;
    }

    bool match_children(std::int32_t a, std::int32_t b, int d) {
        int p = t.nodes[a].nchild, q = t.nodes[b].nchild;
        if (p > q) return false;
        // injective assignment of a's children to b's children such that each
        // subtree embeds; Kuhn's matching on the feasibility relation
        std::vector<std::vector<char>> feas(p, std::vector<char>(q, 0));
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < q; ++j)
                feas[i][j] = embeds(t.nodes[a].first_child + i,
                                    t.nodes[b].first_child + j, d - 1);
        std::vector<int> match_b(q, -1);
        std::vector<char> used;
        std::function<bool(int)> tryi = [&](int i) -> bool {
            for (int j = 0; j < q; ++j) {
                if (!feas[i][j] || used[j]) continue;
                used[j] = 1;
                if (match_b[j] < 0 || tryi(match_b[j])) {
                    match_b[j] = i;
                    return true;
                }
            }
            return false;
        };
        for (int i = 0; i < p; ++i) {
            used.assign(q, 0);
            if (!tryi(i)) return false;
        }
        return true;
    }
};

} // namespace

SubperiodicReport check_subperiodic_witness(const GraphFamily& g,
                                            const TruncatedTree& t,
                                            int max_samples, int depth_cap) {
    SubperiodicReport report;
    Embedder emb{t, {}};

    // level-<=1 targets per class
    std::vector<std::int32_t> target_of_class(g.class_count(), -1);
    if (t.joined) {
        for (std::int32_t c = 0; c < t.nodes[0].nchild; ++c)
            target_of_class[g.class_of(t.sub_roots[c])] = t.nodes[0].first_child + c;
    } else {
        target_of_class[g.class_of(t.sub_roots[0])] = 0;
    }

    std::size_t stride = std::max<std::size_t>(1, t.nodes.size() / max_samples);
    for (std::size_t i = t.joined ? 1 : 0;
         i < t.nodes.size() && static_cast<int>(report.samples.size()) < max_samples;
         i += stride) {
        std::int32_t node = static_cast<std::int32_t>(i);
        SubperiodicSample s;
        s.node = node;
        VertexId endpoint = t.vertex_of(g, node);
        s.target = target_of_class[g.class_of(endpoint)];
        if (s.target < 0) {
            report.samples.push_back(s); // inconclusive: no class target
            continue;
        }
        int avail = t.depth - std::max<int>(t.nodes[node].level,
                                            t.nodes[s.target].level);
        s.depth_checked = std::max(0, std::min(depth_cap, avail));
        s.embedded = emb.embeds(node, s.target, s.depth_checked);
        report.samples.push_back(s);
    }
    report.samples_embedded = 0;
    for (const auto& s : report.samples)
        if (s.embedded) ++report.samples_embedded;
    report.all_embedded =
        report.samples_embedded == static_cast<int>(report.samples.size());
    return report;
}

} // namespace sawkit
