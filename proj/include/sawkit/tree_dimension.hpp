#ifndef SAWKIT_TREE_DIMENSION_HPP
#define SAWKIT_TREE_DIMENSION_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "sawkit/saw_tree.hpp"

namespace sawkit {

// Per-level root values |W_n|^{1/n} over a window, with the window extremes.
struct GrowthEstimate {
    int n0 = 1;
    int depth = 0;
    std::vector<double> root_values; // index i = n0 + i
    double lower = 0;                // min over the window
    double upper = 0;                // max over the window
};

GrowthEstimate growth_estimates(const TruncatedTree& t, int n0 = 1);

// Max flow from the root to level D under edge capacities lambda^{-|e|}
// (|e| = child level).  On a tree the max flow is a single bottom-up sweep.
struct FlowCheck {
    bool feasible = false;        // max flow >= demand - 1e-12
    double value = 0;             // min(max flow, demand): the routed amount
    double demand = 1;
    std::vector<double> node_flow; // certificate: flow on the edge into node i
};

FlowCheck branching_lower_flow(const TruncatedTree& t, double lambda,
                               double demand = 1.0);

// Re-checks a certificate by explicit conservation and capacity tests.
bool verify_flow_certificate(const TruncatedTree& t, double lambda,
                             const FlowCheck& fc, double eps = 1e-9);

// Bisection bracket [lambda_lo, lambda_hi] of the depth-D flow threshold.
// The threshold is an upper bound for br of the infinite tree and is
// non-increasing in D; no convergence rate is claimed.
struct BranchingBound {
    double lambda_lo = 0;
    double lambda_hi = 0;
    int depth = 0;
    FlowCheck certificate; // at lambda_lo
};

BranchingBound branching_estimate(const TruncatedTree& t, double tol,
                                  double demand = 1.0);

// Monte Carlo estimate of the bond-percolation critical probability on the
// truncated tree: survival = an open path root -> level D.  The crossing of
// survival frequency through 1/2 is linearly interpolated on a fixed p-grid;
// the CI is a seeded bootstrap over trial outcomes.  The generator is
// SplitMix64 with per-(trial, grid-point) derived streams, so results do not
// depend on the thread count.
struct PcEstimate {
    double pc = 1.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    int trials = 0;
    std::uint64_t seed = 0;
    double grid_step = 0.02;
    std::vector<std::pair<double, int>> survivals; // (p, surviving trials)
};

PcEstimate percolation_pc_estimate(const TruncatedTree& t, int trials,
                                   std::uint64_t seed, int threads = 1,
                                   double grid_step = 0.02);

// Finite form of the br <= gr inequality: the level-n cut forces
// threshold_D <= |W_n|^{1/n} for every n <= D.
struct LevelCutReport {
    bool ok = false;
    double threshold = 0;            // lambda_lo of the bound being checked
    std::vector<double> level_roots; // |W_n|^{1/n}, n = 1..D
    double min_margin = 0;           // min over n of root_n - threshold
};

LevelCutReport check_br_le_gr(const TruncatedTree& t, const BranchingBound& bb);

} // namespace sawkit

#endif
