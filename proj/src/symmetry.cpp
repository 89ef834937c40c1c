#include "sawkit/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "sawkit/errors.hpp"
#include "sawkit/extendability.hpp"

namespace sawkit {

namespace {

U128 count_forward_into(const GraphFamily& g, const VertexId& s, int n) {
    U128 total = 0;
    enumerate_saws_into(g, s, n, [&](const Walk& w) {
        if (forward_extendable(g, w)) total += 1;
    });
    return total;
}

Rational u128_to_rational(const U128& c) {
    if (!c.fits_u64() || c.low64() > static_cast<std::uint64_t>(1) << 62)
        throw OverflowError("count too large for exact rational arithmetic");
    return Rational(static_cast<long long>(c.low64()));
}

} // namespace

MassTransportResult mass_transport_check(const GraphFamily& g, int n, int threads) {
    if (!g.is_unimodular())
        throw UnsupportedFamilyError(
            "mass transport requires a unimodular graph; " + g.name() +
            " is not unimodular (its weight function is not constant on classes)");
    if (n < 0) throw InputError("walk length must be nonnegative");
    MassTransportResult r;
    r.n = n;
    for (const auto& s : g.representatives()) {
        U128 from = count_extendable(g, s, n, ExtMode::F, threads);
        U128 into = count_forward_into(g, s, n);
        r.from_counts.push_back(from);
        r.into_counts.push_back(into);
        Rational inv_weight = g.weight(s).inverse();
        r.lhs += inv_weight * u128_to_rational(from);
        r.rhs += inv_weight * u128_to_rational(into);
    }
    r.equal = r.lhs == r.rhs;
    return r;
}

ReverseCountResult reverse_count_check(const GraphFamily& g, int n, int threads) {
    if (!g.is_unimodular())
        throw UnsupportedFamilyError("reversal count identity requires unimodularity");
    ReverseCountResult r;
    r.n = n;
    GraphFamily rev = reverse(g);
    for (const auto& s : g.representatives()) {
        r.sigma_f = std::max(r.sigma_f, count_extendable(g, s, n, ExtMode::F, threads));
        r.sigma_b_rev =
            std::max(r.sigma_b_rev, count_extendable(rev, s, n, ExtMode::B, threads));
    }
    // c bounds the weight ratios between representatives; C = c |S|
    Rational c(1);
    for (const auto& s : g.representatives())
        for (const auto& s2 : g.representatives()) {
            Rational ratio = g.weight(s) * g.weight(s2).inverse();
            if (c < ratio) c = ratio;
        }
    r.c_bound = c * Rational(g.class_count());
    r.exact_expected = g.class_count() == 1;
    r.exact_equal = r.sigma_f == r.sigma_b_rev;
    double ratio = r.sigma_f.to_double() / r.sigma_b_rev.to_double();
    double cb = r.c_bound.to_double();
    r.within_bounds = ratio >= 1.0 / cb - 1e-12 && ratio <= cb + 1e-12;
    if (r.exact_expected && !r.exact_equal)
        throw IdentityViolationError("sigmaF(G) != sigmaB(reverse G) at n=" +
                                     std::to_string(n) + " on transitive " + g.name());
    if (!r.within_bounds)
        throw IdentityViolationError("sigmaF(G)/sigmaB(reverse G) outside [1/C, C] at n=" +
                                     std::to_string(n) + " on " + g.name());
    return r;
}

std::vector<VertexId> find_geodesic_ray(const GraphFamily& g, const VertexId& v,
                                        int L) {
    if (!g.is_undirected())
        throw UnsupportedFamilyError("geodesic rays are built on undirected families");
    if (L < 1) throw InputError("ray length must be >= 1");
    std::vector<VertexId> ray{v};
    // greedy extension with backtracking; each candidate re-verified by BFS
    std::function<bool()> grow = [&]() -> bool {
        if (static_cast<int>(ray.size()) == L + 1) return true;
        int i = static_cast<int>(ray.size());
        for (const auto& nb : g.out_neighbors(ray.back())) {
            bool ok = true;
            for (int j = 0; ok && j < i; ++j) {
                auto d = undirected_distance(g, nb.to, ray[j], i - j);
                ok = d && *d == i - j;
            }
            if (!ok) continue;
            ray.push_back(nb.to);
            if (grow()) return true;
            ray.pop_back();
        }
        return false;
    };
    if (!grow())
        throw ConstructionError("no geodesic ray of length " + std::to_string(L) +
                                " found from " + g.format_vertex(v));
    return ray;
}

IndexedSequence loop_erase(IndexedSequence seq) {
    for (;;) {
        // duplicate pair (a, b), a < b, minimizing (|a|+|b|, a)
        std::ptrdiff_t best_a = 0, best_b = 0;
        bool found = false;
        for (std::size_t pa = 0; pa < seq.items.size(); ++pa) {
            for (std::size_t pb = pa + 1; pb < seq.items.size(); ++pb) {
                if (!(seq.items[pa] == seq.items[pb])) continue;
                std::ptrdiff_t a = static_cast<std::ptrdiff_t>(pa) - seq.zero_pos;
                std::ptrdiff_t b = static_cast<std::ptrdiff_t>(pb) - seq.zero_pos;
                auto key = std::abs(a) + std::abs(b);
                if (!found || key < std::abs(best_a) + std::abs(best_b) ||
                    (key == std::abs(best_a) + std::abs(best_b) && a < best_a)) {
                    best_a = a;
                    best_b = b;
                    found = true;
                }
            }
        }
        if (!found) return seq;
        std::ptrdiff_t pa = best_a + seq.zero_pos;
        std::ptrdiff_t pb = best_b + seq.zero_pos;
        seq.items.erase(seq.items.begin() + pa + 1, seq.items.begin() + pb + 1);
        if (best_a <= 0 && best_b >= 0) {
            seq.zero_pos = pa; // the old w_a becomes the new w_0
        } else if (best_b < 0) {
            seq.zero_pos -= (pb - pa);
        }
        // loops entirely right of w_0 leave the zero position unchanged
    }
}

namespace {

// verification helper shared by the quasi-geodesic constructors
void verify_window(const GraphFamily& g, const std::vector<VertexId>& vs, int W,
                   const Rational& alpha, int bfs_pair_cutoff) {
    // self-avoidance
    std::unordered_map<VertexId, int, VertexHash> seen;
    for (int i = 0; i < static_cast<int>(vs.size()); ++i)
        if (!seen.emplace(vs[i], i).second)
            throw ConstructionError("quasi-geodesic window revisits a vertex");

    // Per-edge Lipschitz constant of the first embedding coordinate: every
    // edge changes the level by at most 2 on the grandparent graph and any
    // lattice coordinate by at most 1 (structural facts of the neighbor
    // generators, re-checked here on the window's own edges).
    std::int64_t lip = g.kind() == FamilyKind::Grandparent ? 2 : 1;
    std::int64_t c1[3], c2[3];
    for (const auto& v : vs) {
        g.embed(v, c1);
        for (const auto& nb : g.out_neighbors(v)) {
            g.embed(nb.to, c2);
            if (std::abs(c2[0] - c1[0]) > lip)
                throw ConstructionError("edge violates the family level bound");
        }
    }

    double a = alpha.to_double();
    for (int i = -W; i <= W; ++i) {
        for (int j = i + 1; j <= W; ++j) {
            double need = a * (j - i);
            const VertexId& u = vs[i + W];
            const VertexId& v = vs[j + W];
            if (j - i <= bfs_pair_cutoff) {
                int cap = static_cast<int>(std::ceil(need)) - 1;
                if (cap >= 0 && undirected_distance(g, u, v, cap))
                    throw ConstructionError(
                        "quasi-geodesic violated at pair (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
            } else {
                // d >= |level difference| / lip, exact for far pairs
                g.embed(u, c1);
                g.embed(v, c2);
                double lower =
                    static_cast<double>(std::abs(c2[0] - c1[0])) / static_cast<double>(lip);
                if (lower + 1e-9 < need)
                    throw ConstructionError(
                        "quasi-geodesic level bound violated at pair (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
}

QuasiGeodesic finish_quasi_geodesic(const GraphFamily& g,
                                    std::vector<VertexId> vertices, int W,
                                    Rational alpha) {
    QuasiGeodesic qg;
    qg.window = W;
    qg.vertices = std::move(vertices);
    qg.alpha = alpha;
    for (int i = 0; i < W; ++i) {
        auto find_label = [&g](const VertexId& from, const VertexId& to) {
            for (const auto& nb : g.out_neighbors(from))
                if (nb.to == to) return nb.label;
            throw ConstructionError("missing directed edge certificate on window");
        };
        qg.cert_pos.push_back(find_label(qg.at(i + 1), qg.at(i)));
        qg.cert_neg.push_back(find_label(qg.at(-i - 1), qg.at(-i)));
    }
    for (int i = -W; i <= W; ++i) qg.index_of.emplace(qg.at(i), i);
    return qg;
}

} // namespace

QuasiGeodesic verified_quasi_geodesic(const GraphFamily& g,
                                      std::vector<VertexId> vertices,
                                      Rational alpha, int bfs_pair_cutoff) {
    if (vertices.size() % 2 == 0) throw InputError("window must have odd size");
    int W = static_cast<int>(vertices.size() / 2);
    verify_window(g, vertices, W, alpha, bfs_pair_cutoff);
    return finish_quasi_geodesic(g, std::move(vertices), W, alpha);
}

QuasiGeodesic build_quasi_geodesic(const GraphFamily& g, int W) {
    if (g.kind() != FamilyKind::Grandparent)
        throw UnsupportedFamilyError(
            "the quasi-geodesic construction is built for the grandparent graph");
    if (W < 1) throw InputError("window must be >= 1");

    const VertexId u0 = g.origin();
    const VertexId u1 = g.gp_shift(u0, 1);   // phi(u0), one level toward xi
    const VertexId um1 = g.gp_shift(u0, -1); // phi^{-1}(u0)

    // shortest directed walks xi: u1 -> u0 and zeta: u_-1 -> u0; both are the
    // single bidirected tree edge, validated here rather than assumed
    auto shortest_len = [&](const VertexId& a, const VertexId& b) {
        auto d = directed_distance(g, a, b, 4);
        if (!d) throw ConstructionError("no short directed walk for the construction");
        return *d;
    };
    if (shortest_len(u1, u0) != 1 || shortest_len(um1, u0) != 1)
        throw ConstructionError("xi/zeta are expected to be single edges");
    std::vector<VertexId> xi = {u1, u0};
    std::vector<VertexId> zeta = {um1, u0};

    // concatenate ..., phi^-1 zeta, zeta, xi-reversed, phi xi-reversed, ...
    // (duplicate meeting vertices omitted), indexed so that w_0 = u0
    IndexedSequence seq;
    std::vector<VertexId> xibar(xi.rbegin(), xi.rend());
    int extra = static_cast<int>(std::max(xi.size(), zeta.size()));
    for (int k = W + extra; k >= 1; --k) {
        // piece phi^{-(k-1)} zeta runs u_{-k} -> u_{-k+1}
        for (std::size_t t = 0; t + 1 < zeta.size(); ++t)
            seq.items.push_back(g.gp_shift(zeta[t], -(k - 1)));
    }
    seq.zero_pos = static_cast<std::ptrdiff_t>(seq.items.size());
    for (int k = 0; k <= W + extra; ++k) {
        // piece phi^{k} xibar runs u_k -> u_{k+1}
        for (std::size_t t = 0; t + 1 < xibar.size(); ++t)
            seq.items.push_back(g.gp_shift(xibar[t], k));
        if (k == W + extra) seq.items.push_back(g.gp_shift(xibar.back(), k));
    }

    seq = loop_erase(seq);
    if (seq.lo() > -W || seq.hi() < W)
        throw ConstructionError("loop erasure consumed the requested window");
    std::vector<VertexId> window;
    for (int i = -W; i <= W; ++i) window.push_back(seq.items[i + seq.zero_pos]);

    // largest alpha on the 1/64 grid that verifies on the window
    for (int num = 64; num >= 1; --num) {
        Rational alpha(num, 64);
        try {
            verify_window(g, window, W, alpha, 16);
        } catch (const ConstructionError&) {
            continue;
        }
        return finish_quasi_geodesic(g, std::move(window), W, alpha);
    }
    throw ConstructionError("no positive alpha on the grid verifies the window");
}

namespace {

Walk subwalk(const Walk& w, int from, int to) {
    Walk s;
    s.vertices.assign(w.vertices.begin() + from, w.vertices.begin() + to + 1);
    s.edges.assign(w.edges.begin() + from, w.edges.begin() + to);
    return s;
}

// positions in w (ascending) of the given geodesic-index set
std::vector<int> walk_positions(const Walk& w, const QuasiGeodesic& geo,
                                bool positive) {
    std::vector<int> pos;
    for (int p = 0; p < static_cast<int>(w.vertices.size()); ++p) {
        auto it = geo.index_of.find(w.vertices[p]);
        if (it == geo.index_of.end()) continue;
        if (positive ? it->second >= 0 : it->second <= 0) pos.push_back(p);
    }
    return pos;
}

} // namespace

Decomposition decompose_walk(const GraphFamily& g, const Walk& w,
                             const QuasiGeodesic& geo, double delta) {
    if (!(w.start() == geo.at(0)))
        throw InputError("walk must start at v_0 of the quasi-geodesic");
    if (delta <= 0 || delta >= 0.5) throw InputError("delta must lie in (0, 1/2)");
    Decomposition d;
    d.delta = delta;
    d.n = w.length();
    for (int p = 0; p < static_cast<int>(w.vertices.size()); ++p) {
        auto it = geo.index_of.find(w.vertices[p]);
        if (it == geo.index_of.end()) continue;
        if (it->second >= 0) d.s_plus.push_back(it->second);
        if (it->second <= 0) d.s_minus.push_back(it->second);
    }
    std::sort(d.s_plus.begin(), d.s_plus.end());
    std::sort(d.s_minus.begin(), d.s_minus.end());

    auto emit = [&](int a, int b, bool truncate, int anchor) {
        DecompSegment seg;
        seg.piece = subwalk(w, a, b);
        seg.truncation = truncate && b > a ? subwalk(w, a, b - 1) : seg.piece;
        seg.anchor_index = anchor;
        seg.certified = backward_extendable(g, seg.truncation);
        d.segments.push_back(std::move(seg));
    };

    auto split_along = [&](bool positive) {
        std::vector<int> pos = walk_positions(w, geo, positive);
        for (std::size_t i = 0; i + 1 < pos.size(); ++i)
            emit(pos[i], pos[i + 1], true, geo.index_of.at(w.vertices[pos[i]]));
        if (pos.back() < w.length() || d.segments.empty())
            emit(pos.back(), w.length(), false,
                 geo.index_of.at(w.vertices[pos.back()]));
    };

    double dn = delta * d.n;
    if (static_cast<double>(d.s_plus.size()) <= dn) {
        d.tag = DecompCase::FewPlus;
        split_along(true);
    } else if (static_cast<double>(d.s_minus.size()) <= dn) {
        d.tag = DecompCase::FewMinus;
        split_along(false);
    } else {
        d.tag = DecompCase::ManyBoth;
        int ip = d.s_plus.back();
        int im = -d.s_minus.front();
        int a = -1, b = -1;
        for (int p = 0; p < static_cast<int>(w.vertices.size()); ++p) {
            if (w.vertices[p] == geo.at(ip)) a = p;
            if (w.vertices[p] == geo.at(-im)) b = p;
        }
        int m = std::min(a, b);
        d.tail_min_length = 2.0 * geo.alpha.to_double() * delta * d.n;
        emit(m, w.length(), false, a < b ? ip : -im);
    }
    d.all_certified = true;
    for (const auto& seg : d.segments) d.all_certified &= seg.certified;
    return d;
}

Decomposition decompose_walk(const GraphFamily& g, const Walk& w,
                             const std::vector<VertexId>& ray) {
    if (!g.is_undirected())
        throw UnsupportedFamilyError("the ray decomposition needs an undirected family");
    if (ray.empty() || !(w.start() == ray.front()))
        throw InputError("walk must start at the ray's first vertex");
    Decomposition d;
    d.n = w.length();
    d.tag = DecompCase::RaySplit;
    int L = 0, posL = 0;
    for (int p = 0; p < static_cast<int>(w.vertices.size()); ++p)
        for (int i = 0; i < static_cast<int>(ray.size()); ++i)
            if (w.vertices[p] == ray[i] && i >= L) {
                L = i;
                posL = p;
            }
    d.s_plus.push_back(L);
    // w^-: the initial portion reversed so it starts at v_L; w^+: the rest
    DecompSegment minus;
    minus.piece = subwalk(w, 0, posL).reversed(g);
    minus.truncation = minus.piece;
    minus.anchor_index = L;
    minus.certified = backward_extendable(g, minus.truncation);
    DecompSegment plus;
    plus.piece = subwalk(w, posL, w.length());
    plus.truncation = plus.piece;
    plus.anchor_index = L;
    plus.certified = backward_extendable(g, plus.truncation);
    d.segments.push_back(std::move(minus));
    d.segments.push_back(std::move(plus));
    d.all_certified = d.segments[0].certified && d.segments[1].certified;
    return d;
}

BoundCheckResult bound_inequality_check(const GraphFamily& g, int n,
                                        const Rational& alpha, double delta,
                                        int threads) {
    if (n < 1) throw InputError("the bound check needs n >= 1");
    if (delta <= 0 || delta >= 0.5) throw InputError("delta must lie in (0, 1/2)");
    BoundCheckResult r;
    r.n = n;
    const VertexId v0 = g.origin();
    r.lhs = count_saws(g, v0, n, threads);

    std::vector<U128> sigma(n + 1), sigma_b(n + 1);
    for (int j = 0; j <= n; ++j) {
        sigma[j] = count_saws(g, v0, j, threads);
        sigma_b[j] = count_extendable(g, v0, j, ExtMode::B, threads);
    }

    double a = alpha.to_double();
    int floor_n_over_alpha = static_cast<int>(std::floor(n / a + 1e-9));
    int delta_n = static_cast<int>(std::floor(delta * n + 1e-9));
    U128 two_delta_pow(1);

    auto binom = [](int m, int k) {
        U128 r(1);
        for (int i = 0; i < k; ++i) {
            r *= U128(static_cast<std::uint64_t>(m - i));
            if (!r.fits_u64()) throw OverflowError("binomial too large");
            // exact at every step for products of consecutive integers
            r = U128(r.low64() / (i + 1));
        }
        return r;
    };

    // compositions j_1 + .. + j_k = m, j_i >= 1, weight prod sigmaB_{j_i - 1}
    std::vector<std::vector<U128>> comp(delta_n + 1, std::vector<U128>(n + 1, U128(0)));
    comp[0][0] = 1;
    for (int k = 1; k <= delta_n; ++k)
        for (int m = 0; m <= n; ++m)
            for (int j = 1; j <= m; ++j)
                comp[k][m] += sigma_b[j - 1] * comp[k - 1][m - j];

    U128 first(0);
    U128 two_delta(static_cast<std::uint64_t>(2 * g.max_degree()));
    for (int k = 0; k <= delta_n; ++k) {
        first += binom(floor_n_over_alpha, k) * two_delta_pow * comp[k][n];
        two_delta_pow *= two_delta;
    }
    r.rhs_first = U128(2) * first;

    double tail_from = 2.0 * a * delta * n;
    U128 second(0);
    for (int j = 0; j <= n; ++j) {
        if (static_cast<double>(j) + 1e-9 < tail_from) continue;
        second += sigma_b[j] * sigma[n - j];
    }
    r.rhs_second = U128(2) * U128(static_cast<std::uint64_t>(floor_n_over_alpha)) * second;

    r.holds = r.lhs <= r.rhs_first + r.rhs_second;
    return r;
}

} // namespace sawkit
