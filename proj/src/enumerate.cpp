#include "sawkit/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

#include "sawkit/errors.hpp"
#include "sawkit/extendability.hpp"
#include "sawkit/path_set.hpp"

namespace sawkit {

namespace {

// Runs fn(0..count-1) on `threads` workers; rethrows the first exception.
void run_partitioned(std::size_t count, int threads,
                     const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct Dfs {
    const GraphFamily& g;
    int target;
    const std::function<void(const Walk&)>& visit;
    Walk walk;
    PathSet seen;
    std::vector<std::vector<Neighbor>> bufs; // per-depth neighbor buffers

    void run() {
        int depth = walk.length();
        if (depth == target) {
            visit(walk);
            return;
        }
        if (static_cast<int>(bufs.size()) <= depth) bufs.resize(depth + 1);
        std::vector<Neighbor>& nbs = bufs[depth];
        g.out_neighbors_into(walk.end(), nbs);
        for (const auto& nb : nbs) {
            if (seen.contains(nb.to)) continue;
            seen.push(nb.to);
            walk.vertices.push_back(nb.to);
            walk.edges.push_back(nb.label);
            run();
            walk.vertices.pop_back();
            walk.edges.pop_back();
            seen.pop();
        }
    }
};

void enumerate_from(const GraphFamily& g, const Walk& prefix, int n,
                    const std::function<void(const Walk&)>& visit) {
    Dfs dfs{g, n, visit, prefix, PathSet(static_cast<std::size_t>(n) + 1), {}};
    dfs.walk.vertices.reserve(n + 1);
    dfs.walk.edges.reserve(n);
    for (const auto& v : prefix.vertices) dfs.seen.push(v);
    dfs.run();
}

// Walk prefixes of length k used as independent work units.  k is the
// smallest length whose prefix count reaches 4x the worker count.
std::vector<Walk> make_partitions(const GraphFamily& g, const VertexId& v, int n,
                                  int threads, int& prefix_len) {
    std::vector<Walk> prefixes{Walk::trivial(v)};
    prefix_len = 0;
    std::size_t want = 4u * static_cast<unsigned>(threads);
    while (prefix_len < n && prefixes.size() < want) {
        std::vector<Walk> next;
        for (const auto& p : prefixes)
            enumerate_from(g, p, prefix_len + 1,
                           [&next](const Walk& w) { next.push_back(w); });
        prefixes = std::move(next);
        ++prefix_len;
        if (prefixes.empty()) break;
    }
    return prefixes;
}

U128 count_filtered(const GraphFamily& g, const VertexId& v, int n, int threads,
                    const std::function<bool(const Walk&)>& keep) {
    g.require_vertex(v);
    if (n < 0) throw InputError("walk length must be nonnegative");
    if (n == 0) return keep(Walk::trivial(v)) ? U128(1) : U128(0);
    if (threads <= 1) {
        U128 total = 0;
        enumerate_from(g, Walk::trivial(v), n, [&](const Walk& w) {
            if (keep(w)) total += 1;
        });
        return total;
    }
    int k = 0;
    std::vector<Walk> prefixes = make_partitions(g, v, n, threads, k);
    if (k == n) {
        U128 total = 0;
        for (const auto& w : prefixes)
            if (keep(w)) total += 1;
        return total;
    }
    std::vector<U128> part(prefixes.size(), U128(0));
    run_partitioned(prefixes.size(), threads, [&](std::size_t i) {
        U128 local = 0;
        enumerate_from(g, prefixes[i], n, [&](const Walk& w) {
            if (keep(w)) local += 1;
        });
        part[i] = local;
    });
    U128 total = 0;
    for (const auto& c : part) total += c;
    return total;
}

std::string fmt12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace

std::string ext_mode_name(ExtMode m) {
    switch (m) {
    case ExtMode::F: return "F";
    case ExtMode::B: return "B";
    case ExtMode::FB: return "FB";
    }
    return "?";
}

U128 count_saws(const GraphFamily& g, const VertexId& v, int n, int threads) {
    return count_filtered(g, v, n, threads, [](const Walk&) { return true; });
}

void enumerate_saws(const GraphFamily& g, const VertexId& v, int n,
                    const std::function<void(const Walk&)>& visit) {
    g.require_vertex(v);
    if (n < 0) throw InputError("walk length must be nonnegative");
    enumerate_from(g, Walk::trivial(v), n, visit);
}

U128 sigma_sup(const GraphFamily& g, int n, int threads) {
    U128 best = 0;
    for (const auto& rep : g.representatives())
        best = std::max(best, count_saws(g, rep, n, threads));
    return best;
}

U128 count_extendable(const GraphFamily& g, const VertexId& v, int n, ExtMode mode,
                      int threads) {
    switch (mode) {
    case ExtMode::F:
        return count_filtered(g, v, n, threads,
                              [&g](const Walk& w) { return forward_extendable(g, w); });
    case ExtMode::B:
        return count_filtered(g, v, n, threads,
                              [&g](const Walk& w) { return backward_extendable(g, w); });
    case ExtMode::FB:
        return count_filtered(g, v, n, threads,
                              [&g](const Walk& w) { return doubly_extendable(g, w); });
    }
    throw InputError("bad extendability mode");
}

U128 count_bridges(int d, int n) {
    if (d != 2 && d != 3) throw InputError("bridges are defined on Z^2 and Z^3 only");
    if (n < 0) throw InputError("walk length must be nonnegative");
    if (n == 0) return 1; // the empty walk is a bridge by convention
    GraphFamily g = GraphFamily::by_name(d == 2 ? "square" : "cubic");
    U128 total = 0;
    // Prefix condition x_i > x_0 prunes during the search; the terminal
    // condition max_i x_i <= x_n is checked at full length.
    struct Rec {
        const GraphFamily& g;
        int n;
        U128& total;
        Walk walk;
        PathSet seen;
        std::vector<std::vector<Neighbor>> bufs;
        int xmax = 0;

        void run() {
            int depth = walk.length();
            if (depth == n) {
                if (walk.end().x == xmax) total += 1;
                return;
            }
            if (static_cast<int>(bufs.size()) <= depth) bufs.resize(depth + 1);
            std::vector<Neighbor>& nbs = bufs[depth];
            g.out_neighbors_into(walk.end(), nbs);
            for (const auto& nb : nbs) {
                if (nb.to.x <= 0 || seen.contains(nb.to)) continue;
                int old_max = xmax;
                xmax = std::max(xmax, nb.to.x);
                seen.push(nb.to);
                walk.vertices.push_back(nb.to);
                walk.edges.push_back(nb.label);
                run();
                walk.vertices.pop_back();
                walk.edges.pop_back();
                seen.pop();
                xmax = old_max;
            }
        }
    } rec{g, n, total, Walk::trivial(g.origin()), PathSet(static_cast<std::size_t>(n) + 1), {}, 0};
    rec.seen.push(g.origin());
    rec.run();
    return total;
}

void CountTable::check_ordering() const {
    for (const auto& r : rows) {
        U128 lo = r.sigma, hi = U128(0);
        bool any = false;
        auto take = [&](const std::optional<U128>& c) {
            if (!c) return;
            lo = std::min(lo, *c);
            hi = std::max(hi, *c);
            any = true;
        };
        take(r.sigma_f);
        take(r.sigma_b);
        if (any && hi > r.sigma)
            throw IdentityViolationError("extendable count exceeds sigma at n=" +
                                         std::to_string(r.n));
        if (r.sigma_fb && r.sigma_f && *r.sigma_fb > *r.sigma_f)
            throw IdentityViolationError("sigmaFB > sigmaF at n=" + std::to_string(r.n));
        if (r.sigma_fb && r.sigma_b && *r.sigma_fb > *r.sigma_b)
            throw IdentityViolationError("sigmaFB > sigmaB at n=" + std::to_string(r.n));
        if (r.sigma_fb && *r.sigma_fb > r.sigma)
            throw IdentityViolationError("sigmaFB > sigma at n=" + std::to_string(r.n));
    }
}

void CountTable::write_csv(std::ostream& os) const {
    os << "class,n,sigma,sigmaF,sigmaB,sigmaFB,ratioF,ratioB,ratioFB,rootN\n";
    for (const auto& r : rows) {
        auto cell = [](const std::optional<U128>& c) {
            return c ? c->str() : std::string();
        };
        auto ratio = [&r](const std::optional<U128>& c) -> std::string {
            if (!c) return {};
            if (r.n == 0) return fmt12(1.0);
            return fmt12(c->to_double() / r.sigma.to_double());
        };
        os << r.cls << ',' << r.n << ',' << r.sigma.str() << ',' << cell(r.sigma_f)
           << ',' << cell(r.sigma_b) << ',' << cell(r.sigma_fb) << ','
           << ratio(r.sigma_f) << ',' << ratio(r.sigma_b) << ',' << ratio(r.sigma_fb)
           << ',';
        if (r.n > 0)
            os << fmt12(std::pow(r.sigma.to_double(), 1.0 / r.n));
        os << '\n';
    }
}

CountTable compute_count_table(const GraphFamily& g, int n_max,
                               const CountTableOptions& opt) {
    if (n_max < 0) throw InputError("n_max must be nonnegative");
    CountTable table;
    table.graph = g.name();
    for (int cls = 0; cls < g.class_count(); ++cls) {
        const VertexId& rep = g.representatives()[cls];
        for (int n = 0; n <= n_max; ++n) {
            CountRow row;
            row.cls = cls;
            row.n = n;
            row.sigma = count_saws(g, rep, n, opt.threads);
            if (opt.f) row.sigma_f = count_extendable(g, rep, n, ExtMode::F, opt.threads);
            if (opt.b) row.sigma_b = count_extendable(g, rep, n, ExtMode::B, opt.threads);
            if (opt.fb)
                row.sigma_fb = count_extendable(g, rep, n, ExtMode::FB, opt.threads);
            table.rows.push_back(row);
        }
    }
    table.check_ordering();
    return table;
}

void enumerate_saws_into(const GraphFamily& g, const VertexId& v, int n,
                         const std::function<void(const Walk&)>& visit) {
    g.require_vertex(v);
    if (n < 0) throw InputError("walk length must be nonnegative");
    // Build backward from v over in-edges; emit with vertices and labels in
    // forward order.
    struct Rec {
        const GraphFamily& g;
        int n;
        const std::function<void(const Walk&)>& visit;
        std::vector<VertexId> rview;   // v first
        std::vector<EdgeLabel> redges; // label at source, innermost first
        PathSet seen;
        std::vector<std::vector<Neighbor>> bufs;

        void run() {
            int depth = static_cast<int>(redges.size());
            if (depth == n) {
                Walk w;
                w.vertices.assign(rview.rbegin(), rview.rend());
                w.edges.assign(redges.rbegin(), redges.rend());
                visit(w);
                return;
            }
            if (static_cast<int>(bufs.size()) <= depth) bufs.resize(depth + 1);
            std::vector<Neighbor>& nbs = bufs[depth];
            g.in_neighbors_into(rview.back(), nbs);
            for (const auto& nb : nbs) {
                if (seen.contains(nb.to)) continue;
                seen.push(nb.to);
                rview.push_back(nb.to);
                redges.push_back(nb.label);
                run();
                rview.pop_back();
                redges.pop_back();
                seen.pop();
            }
        }
    } rec{g, n, visit, {v}, {}, PathSet(static_cast<std::size_t>(n) + 1), {}};
    rec.seen.push(v);
    rec.run();
}

} // namespace sawkit
