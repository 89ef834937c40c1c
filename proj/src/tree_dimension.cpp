#include "sawkit/tree_dimension.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "sawkit/errors.hpp"
#include "sawkit/rng.hpp"

namespace sawkit {

namespace {

constexpr double kFeasEps = 1e-12;
constexpr double kInf = 1e300;

// Bottom-up max flow; children always have larger arena indices than their
// parent, so a reverse index sweep is a post-order traversal.
std::vector<double> subtree_flow(const TruncatedTree& t, double lambda) {
    std::vector<double> cap(t.depth + 1, 1.0);
    for (int l = 1; l <= t.depth; ++l) cap[l] = std::pow(lambda, -l);
    std::vector<double> f(t.nodes.size(), 0.0);
    for (std::size_t i = t.nodes.size(); i-- > 0;) {
        const auto& n = t.nodes[i];
        if (n.level == t.depth) {
            f[i] = kInf;
            continue;
        }
        double total = 0;
        for (std::int32_t c = 0; c < n.nchild; ++c) {
            std::int32_t ci = n.first_child + c;
            total += std::min(cap[t.nodes[ci].level], f[ci]);
            if (total >= kInf) break;
        }
        f[i] = std::min(total, kInf);
    }
    return f;
}

} // namespace

GrowthEstimate growth_estimates(const TruncatedTree& t, int n0) {
    if (n0 < 1 || n0 > t.depth) throw InputError("growth window is empty");
    GrowthEstimate ge;
    ge.n0 = n0;
    ge.depth = t.depth;
    for (int n = n0; n <= t.depth; ++n) {
        double wn = static_cast<double>(t.level_sizes[n]);
        double root = wn > 0 ? std::pow(wn, 1.0 / n) : 0.0;
        ge.root_values.push_back(root);
    }
    ge.lower = *std::min_element(ge.root_values.begin(), ge.root_values.end());
    ge.upper = *std::max_element(ge.root_values.begin(), ge.root_values.end());
    return ge;
}

FlowCheck branching_lower_flow(const TruncatedTree& t, double lambda, double demand) {
    if (lambda <= 0) throw InputError("lambda must be positive");
    FlowCheck fc;
    fc.demand = demand;
    fc.node_flow.assign(t.nodes.size(), 0.0);
    if (t.depth == 0) {
        fc.feasible = true;
        fc.value = demand;
        fc.node_flow[0] = demand;
        return fc;
    }
    std::vector<double> f = subtree_flow(t, lambda);
    fc.feasible = f[0] >= demand - kFeasEps;
    fc.value = std::min(f[0], demand);
    // route the achieved amount top-down, greedily in child order
    std::vector<double> cap(t.depth + 1, 1.0);
    for (int l = 1; l <= t.depth; ++l) cap[l] = std::pow(lambda, -l);
    fc.node_flow[0] = fc.value;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& n = t.nodes[i];
        if (n.level == t.depth) continue;
        double remaining = fc.node_flow[i];
        for (std::int32_t c = 0; c < n.nchild && remaining > 0; ++c) {
            std::int32_t ci = n.first_child + c;
            double take = std::min({cap[t.nodes[ci].level], f[ci], remaining});
            fc.node_flow[ci] = take;
            remaining -= take;
        }
    }
    return fc;
}

bool verify_flow_certificate(const TruncatedTree& t, double lambda,
                             const FlowCheck& fc, double eps) {
    if (fc.node_flow.size() != t.nodes.size()) return false;
    std::vector<double> cap(t.depth + 1, 1.0);
    for (int l = 1; l <= t.depth; ++l) cap[l] = std::pow(lambda, -l);
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& n = t.nodes[i];
        if (i > 0 && fc.node_flow[i] > cap[n.level] * (1 + eps) + eps) return false;
        if (fc.node_flow[i] < -eps) return false;
        if (n.level == t.depth) continue;
        double out = 0;
        for (std::int32_t c = 0; c < n.nchild; ++c) out += fc.node_flow[n.first_child + c];
        // interior conservation; dead-end leaves must carry nothing
        if (std::abs(out - fc.node_flow[i]) > eps) return false;
    }
    return fc.node_flow[0] >= fc.value - eps;
}

BranchingBound branching_estimate(const TruncatedTree& t, double tol, double demand) {
    if (tol <= 0) throw InputError("tolerance must be positive");
    BranchingBound bb;
    bb.depth = t.depth;
    if (t.depth == 0 || t.level_sizes[t.depth] == 0) {
        bb.lambda_lo = bb.lambda_hi = 0;
        return bb;
    }
    double lo = 1.0;
    if (!branching_lower_flow(t, lo, demand).feasible) {
        bb.lambda_lo = bb.lambda_hi = 0;
        return bb;
    }
    double hi = static_cast<double>(t.level_sizes[1]) + 1.0;
    while (branching_lower_flow(t, hi, demand).feasible) hi *= 2;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (branching_lower_flow(t, mid, demand).feasible)
            lo = mid;
        else
            hi = mid;
    }
    bb.lambda_lo = lo;
    bb.lambda_hi = hi;
    bb.certificate = branching_lower_flow(t, lo, demand);
    if (!verify_flow_certificate(t, lo, bb.certificate))
        throw Error("flow certificate failed its conservation re-check");
    return bb;
}

namespace {

// One percolation trial: does an open path reach level D?  Edge states are
// drawn lazily in DFS order from the trial's own stream.
bool percolation_trial(const TruncatedTree& t, double p, SplitMix64& rng) {
    if (t.depth == 0) return true;
    std::vector<std::int32_t> stack{0};
    while (!stack.empty()) {
        std::int32_t i = stack.back();
        stack.pop_back();
        const auto& n = t.nodes[i];
        for (std::int32_t c = 0; c < n.nchild; ++c) {
            std::int32_t ci = n.first_child + c;
            if (rng.u01() < p) {
                if (t.nodes[ci].level == t.depth) return true;
                stack.push_back(ci);
            }
        }
    }
    return false;
}

double crossing_from_grid(const std::vector<std::pair<double, int>>& grid,
                          int trials) {
    // largest p with frequency < 1/2, interpolated to the next grid point
    double half = 0.5 * trials;
    int idx = -1;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (grid[i].second < half && grid[i + 1].second >= half)
            idx = static_cast<int>(i);
    if (idx < 0) {
        if (!grid.empty() && grid.front().second >= half) return grid.front().first;
        return 1.0;
    }
    double f1 = grid[idx].second / static_cast<double>(trials);
    double f2 = grid[idx + 1].second / static_cast<double>(trials);
    double p1 = grid[idx].first, p2 = grid[idx + 1].first;
    if (f2 <= f1) return p2;
    return p1 + (p2 - p1) * (0.5 - f1) / (f2 - f1);
}

} // namespace

PcEstimate percolation_pc_estimate(const TruncatedTree& t, int trials,
                                   std::uint64_t seed, int threads,
                                   double grid_step) {
    if (trials < 1) throw InputError("trials must be >= 1");
    if (grid_step <= 0 || grid_step >= 1) throw InputError("bad grid step");
    PcEstimate pe;
    pe.trials = trials;
    pe.seed = seed;
    pe.grid_step = grid_step;

    std::vector<double> ps;
    for (double p = grid_step; p < 1.0 - grid_step / 2; p += grid_step) ps.push_back(p);

    std::vector<std::atomic<int>> survived(ps.size());
    for (auto& s : survived) s.store(0);

    auto work = [&](std::size_t gi) {
        int count = 0;
        for (int trial = 0; trial < trials; ++trial) {
            SplitMix64 rng(SplitMix64::derive(seed, trial, gi));
            if (percolation_trial(t, ps[gi], rng)) ++count;
        }
        survived[gi].store(count);
    };
    if (threads <= 1) {
        for (std::size_t gi = 0; gi < ps.size(); ++gi) work(gi);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t gi = next.fetch_add(1);
                if (gi >= ps.size()) return;
                work(gi);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    for (std::size_t gi = 0; gi < ps.size(); ++gi)
        pe.survivals.emplace_back(ps[gi], survived[gi].load());
    pe.pc = crossing_from_grid(pe.survivals, trials);

    // bootstrap the crossing point over per-grid binomial resamples
    constexpr int kBoot = 200;
    std::vector<double> boots;
    boots.reserve(kBoot);
    for (int b = 0; b < kBoot; ++b) {
        SplitMix64 rng(SplitMix64::derive(seed ^ 0x626f6f74ULL, b));
        std::vector<std::pair<double, int>> resampled = pe.survivals;
        for (auto& [p, count] : resampled) {
            double f = count / static_cast<double>(trials);
            int c = 0;
            for (int i = 0; i < trials; ++i)
                if (rng.u01() < f) ++c;
            count = c;
        }
        boots.push_back(crossing_from_grid(resampled, trials));
    }
    std::sort(boots.begin(), boots.end());
    pe.ci_lo = boots[static_cast<std::size_t>(0.025 * kBoot)];
    pe.ci_hi = boots[static_cast<std::size_t>(0.975 * kBoot) - 1];
    return pe;
}

LevelCutReport check_br_le_gr(const TruncatedTree& t, const BranchingBound& bb) {
    LevelCutReport r;
    r.threshold = bb.lambda_lo;
    r.min_margin = kInf;
    for (int n = 1; n <= t.depth; ++n) {
        double wn = static_cast<double>(t.level_sizes[n]);
        double root = wn > 0 ? std::pow(wn, 1.0 / n) : 0.0;
        r.level_roots.push_back(root);
        r.min_margin = std::min(r.min_margin, root - bb.lambda_lo);
    }
    r.ok = r.min_margin >= -1e-9;
    return r;
}

} // namespace sawkit
