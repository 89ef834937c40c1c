#ifndef SAWKIT_ENUMERATE_HPP
#define SAWKIT_ENUMERATE_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sawkit/checked_int.hpp"
#include "sawkit/walk.hpp"

namespace sawkit {

// Extendability modes for filtered counts: forward, backward, doubly.
enum class ExtMode { F, B, FB };

std::string ext_mode_name(ExtMode m);

// Exact sigma_n(v): the number of n-step directed SAWs from v, by depth-first
// backtracking over out-edges.  sigma_0(v) = 1.  threads > 1 partitions the
// walk set by its first few steps and reduces per-partition counts; the sum
// is order-independent, so the result is identical for any thread count.
U128 count_saws(const GraphFamily& g, const VertexId& v, int n, int threads = 1);

// Visits every length-n SAW from v exactly once, in the deterministic order
// induced by edge-label order.  Exceptions from the visitor propagate.
void enumerate_saws(const GraphFamily& g, const VertexId& v, int n,
                    const std::function<void(const Walk&)>& visit);

// sup_v sigma_n(v) = max over class representatives (automorphism-invariant).
U128 sigma_sup(const GraphFamily& g, int n, int threads = 1);

// Exact count of forward / backward / doubly extendable n-step SAWs from v.
// Complete length-n walks are filtered through the exact oracles; there is no
// extendability-based pruning mid-search.
U128 count_extendable(const GraphFamily& g, const VertexId& v, int n, ExtMode mode,
                      int threads = 1);

// Number of n-step bridges on Z^d, d in {2,3}: SAWs w with
//     x(v_0) < x(v_i) <= x(v_n)   for all 0 < i <= n
// (Hammersley--Welsh convention; the empty walk counts as a bridge).
U128 count_bridges(int d, int n);

// Per-class, per-length exact counts for each requested mode, with derived
// ratio and root columns at emission time.
struct CountRow {
    int cls = 0;
    int n = 0;
    U128 sigma;
    std::optional<U128> sigma_f, sigma_b, sigma_fb;
};

struct CountTable {
    std::string graph;
    std::vector<CountRow> rows; // ordered by (class, n)

    // Checks sigma_fb <= min(sigma_f, sigma_b) <= max <= sigma per row.
    void check_ordering() const; // throws IdentityViolationError

    // CSV schema: class,n,sigma,sigmaF,sigmaB,sigmaFB,ratioF,ratioB,ratioFB,rootN
    // Floats use 12 significant digits; disabled modes print empty cells.
    void write_csv(std::ostream& os) const;
};

struct CountTableOptions {
    bool plain = true;
    bool f = false;
    bool b = false;
    bool fb = false;
    int threads = 1;
};

CountTable compute_count_table(const GraphFamily& g, int n_max,
                               const CountTableOptions& opt);

// Enumerates walks of length n ending at v (built backward over in-edges), in
// deterministic order.  Used by the mass-transport and reversal checks.
void enumerate_saws_into(const GraphFamily& g, const VertexId& v, int n,
                         const std::function<void(const Walk&)>& visit);

} // namespace sawkit

#endif
