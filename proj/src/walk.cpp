#include "sawkit/walk.hpp"

#include <unordered_set>

#include "sawkit/errors.hpp"

namespace sawkit {

namespace {

const char* letters_for(const GraphFamily& g) {
    switch (g.kind()) {
    case FamilyKind::Square: return "EWNS";
    case FamilyKind::Cubic: return "EWNSUD";
    case FamilyKind::Triangular: return "EWNSAB";
    case FamilyKind::Ladder: return "EWR";
    default: return nullptr;
    }
}

std::vector<EdgeLabel> parse_directions(const GraphFamily& g, const std::string& dirs) {
    std::vector<EdgeLabel> labels;
    if (dirs.find(',') != std::string::npos ||
        (!dirs.empty() && dirs[0] >= '0' && dirs[0] <= '9')) {
        // numeric label list
        std::size_t i = 0;
        while (i < dirs.size()) {
            std::size_t j = dirs.find(',', i);
            if (j == std::string::npos) j = dirs.size();
            try {
                labels.push_back(std::stoi(dirs.substr(i, j - i)));
            } catch (const std::exception&) {
                throw InputError("bad edge label at position " + std::to_string(i + 1) +
                                 " of \"" + dirs + "\"");
            }
            i = j + 1;
        }
        return labels;
    }
    const char* alphabet = letters_for(g);
    if (!alphabet)
        throw InputError("family " + g.name() +
                         " has no direction letters; use comma-separated edge labels");
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const char* p = alphabet;
        EdgeLabel lab = 0;
        for (; *p && *p != dirs[i]; ++p, ++lab) {
        }
        if (!*p)
            throw InputError("bad direction character '" + std::string(1, dirs[i]) +
                             "' at position " + std::to_string(i + 1));
        labels.push_back(lab);
    }
    return labels;
}

} // namespace

char direction_letter(const GraphFamily& g, EdgeLabel label) {
    const char* alphabet = letters_for(g);
    if (!alphabet) return '\0';
    for (EdgeLabel i = 0; alphabet[i]; ++i)
        if (i == label) return alphabet[i];
    return '\0';
}

Walk Walk::from_labels(const GraphFamily& g, const VertexId& start,
                       const std::vector<EdgeLabel>& labels) {
    g.require_vertex(start);
    Walk w = trivial(start);
    std::unordered_set<VertexId, VertexHash> seen{start};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto nbs = g.out_neighbors(w.end());
        if (labels[i] < 0 || labels[i] >= static_cast<EdgeLabel>(nbs.size()))
            throw InputError("edge label " + std::to_string(labels[i]) +
                             " out of range at step " + std::to_string(i + 1));
        const VertexId& next = nbs[labels[i]].to;
        if (!seen.insert(next).second)
            throw InputError("not a SAW at step " + std::to_string(i + 1));
        w.vertices.push_back(next);
        w.edges.push_back(labels[i]);
    }
    return w;
}

Walk Walk::from_directions(const GraphFamily& g, const VertexId& start,
                           const std::string& dirs) {
    return from_labels(g, start, parse_directions(g, dirs));
}

bool Walk::valid_on(const GraphFamily& g) const {
    if (vertices.empty() || edges.size() + 1 != vertices.size()) return false;
    std::unordered_set<VertexId, VertexHash> seen;
    for (const auto& v : vertices) {
        if (!g.vertex_valid(v) || !seen.insert(v).second) return false;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto nbs = g.out_neighbors(vertices[i]);
        if (edges[i] < 0 || edges[i] >= static_cast<EdgeLabel>(nbs.size())) return false;
        if (!(nbs[edges[i]].to == vertices[i + 1])) return false;
    }
    return true;
}

Walk Walk::reversed(const GraphFamily& g) const {
    Walk r;
    r.vertices.assign(vertices.rbegin(), vertices.rend());
    for (std::size_t i = edges.size(); i-- > 0;) {
        // label of the arc vertices[i+1] -> vertices[i]
        auto nbs = g.out_neighbors(vertices[i + 1]);
        EdgeLabel lab = -1;
        for (const auto& nb : nbs)
            if (nb.to == vertices[i]) {
                lab = nb.label;
                break;
            }
        if (lab < 0) throw InputError("walk has no reversal on family " + g.name());
        r.edges.push_back(lab);
    }
    return r;
}

std::string Walk::direction_string(const GraphFamily& g) const {
    std::string s;
    const char* alphabet = letters_for(g);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (alphabet) {
            s += alphabet[edges[i]];
        } else {
            if (i) s += ',';
            s += std::to_string(edges[i]);
        }
    }
    return s;
}

} // namespace sawkit
