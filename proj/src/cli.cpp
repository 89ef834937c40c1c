#include "sawkit/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sawkit/enumerate.hpp"
#include "sawkit/errors.hpp"
#include "sawkit/extendability.hpp"
#include "sawkit/saw_tree.hpp"
#include "sawkit/symmetry.hpp"
#include "sawkit/tree_dimension.hpp"

namespace sawkit {

namespace {

using nlohmann::json;

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

void parse_modes(const std::string& modes, RunConfig& cfg) {
    cfg.mode_plain = cfg.mode_f = cfg.mode_b = cfg.mode_fb = false;
    std::stringstream ss(modes);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "plain")
            cfg.mode_plain = true;
        else if (item == "F")
            cfg.mode_f = true;
        else if (item == "B")
            cfg.mode_b = true;
        else if (item == "FB")
            cfg.mode_fb = true;
        else
            throw InputError("unknown mode '" + item + "' (use plain,F,B,FB)");
    }
}

// Writes to --out or to the provided stream.
void deliver(const RunConfig& cfg, std::ostream& fallback, const std::string& text) {
    if (cfg.out.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw InputError("cannot open output file " + cfg.out);
    f << text;
}

json count_table_json(const CountTable& t, const GraphFamily& g) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row;
        row["class"] = r.cls;
        row["n"] = r.n;
        row["sigma"] = r.sigma.str();
        if (r.sigma_f) row["sigmaF"] = r.sigma_f->str();
        if (r.sigma_b) row["sigmaB"] = r.sigma_b->str();
        if (r.sigma_fb) row["sigmaFB"] = r.sigma_fb->str();
        rows.push_back(row);
    }
    json j;
    j["version"] = 1;
    j["graph"] = {{"name", g.name()},
                  {"classes", g.class_count()},
                  {"max_degree", g.max_degree()},
                  {"undirected", g.is_undirected()},
                  {"unimodular", g.is_unimodular()}};
    j["rows"] = rows;
    return j;
}

int cmd_counts(const RunConfig& cfg, std::ostream& out) {
    auto t0 = std::chrono::steady_clock::now();
    GraphFamily g = GraphFamily::by_name(cfg.graph);
    CountTableOptions opt;
    opt.plain = true; // sigma is always computed; ratios need it
    opt.f = cfg.mode_f;
    opt.b = cfg.mode_b;
    opt.fb = cfg.mode_fb;
    opt.threads = cfg.threads;
    CountTable table = compute_count_table(g, cfg.n_max, opt);
    if (cfg.format == "json") {
        json j = count_table_json(table, g);
        j["command"] = "counts";
        j["threads"] = cfg.threads;
        j["wall_time_ms"] = elapsed_ms(t0);
        deliver(cfg, out, j.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        table.write_csv(csv);
        deliver(cfg, out, csv.str());
    }
    return kExitOk;
}

int cmd_classify(const RunConfig& cfg, const std::string& walk_str, std::ostream& out) {
    GraphFamily g = GraphFamily::by_name(cfg.graph);
    Walk w = Walk::from_directions(g, g.origin(), walk_str);
    out << "graph: " << g.name() << "\n";
    out << "walk: " << (walk_str.empty() ? "(trivial)" : walk_str) << "  length "
        << w.length() << "  " << g.format_vertex(w.start()) << " -> "
        << g.format_vertex(w.end()) << "\n";
    bool f = forward_extendable(g, w);
    bool b = backward_extendable(g, w);
    out << "F: " << (f ? "yes" : "no") << (f ? "" : "  (escape component of the endpoint is finite)") << "\n";
    out << "B: " << (b ? "yes" : "no") << (b ? "" : "  (escape component of the start is finite)") << "\n";
    try {
        bool fb = doubly_extendable(g, w);
        out << "FB: " << (fb ? "yes" : "no")
            << (fb ? "" : "  (no two vertex-disjoint escapes)") << "\n";
    } catch (const UnsupportedFamilyError&) {
        out << "FB: unsupported on this family\n";
    }
    if (g.embedding() == EmbeddingKind::Box2D || g.embedding() == EmbeddingKind::Box3D) {
        EscapeRegion r = make_escape_region(g, w.vertices, 2);
        out << "escape region: [" << r.lo[0] << "," << r.hi[0] << "] x [" << r.lo[1]
            << "," << r.hi[1] << "]";
        if (r.dims == 3) out << " x [" << r.lo[2] << "," << r.hi[2] << "]";
        out << "  margin " << r.margin << "\n";
    }
    return kExitOk;
}

int cmd_tree_dim(const RunConfig& cfg, std::ostream& out) {
    auto t0 = std::chrono::steady_clock::now();
    GraphFamily g = GraphFamily::by_name(cfg.graph);
    TruncatedTree tree = cfg.mode_f
                             ? build_forward_saw_tree(g, g.origin(), cfg.depth)
                             : build_saw_tree(g, g.origin(), cfg.depth);
    json j;
    j["version"] = 1;
    j["command"] = "tree-dim";
    j["tree"] = std::string(cfg.mode_f ? "forward-saw-tree" : "saw-tree") + ":" + g.name();
    j["D"] = cfg.depth;
    j["levels"] = tree.level_sizes;
    if (cfg.depth >= 1) {
        GrowthEstimate ge = growth_estimates(tree);
        j["growth_window"] = {{"n0", ge.n0},
                              {"lower", ge.lower},
                              {"upper", ge.upper},
                              {"roots", ge.root_values}};
        BranchingBound bb = branching_estimate(tree, cfg.tol);
        j["threshold_lo"] = bb.lambda_lo;
        j["threshold_hi"] = bb.lambda_hi;
        LevelCutReport lc = check_br_le_gr(tree, bb);
        j["level_cut_ok"] = lc.ok;
        j["level_cut_min_margin"] = lc.min_margin;
        if (!lc.ok)
            throw IdentityViolationError("level-cut bound threshold <= |W_n|^{1/n} failed");
    } else {
        j["growth_window"] = nullptr;
        j["threshold_lo"] = 0.0;
        j["threshold_hi"] = 0.0;
    }
    if (cfg.trials > 0 && cfg.depth >= 1) {
        PcEstimate pc =
            percolation_pc_estimate(tree, cfg.trials, cfg.seed, cfg.threads);
        j["pc_estimate"] = pc.pc;
        j["ci"] = {pc.ci_lo, pc.ci_hi};
        j["seed"] = pc.seed;
        j["trials"] = pc.trials;
    } else {
        j["pc_estimate"] = nullptr;
        j["ci"] = nullptr;
        j["seed"] = cfg.seed;
        j["trials"] = 0;
    }
    j["threads"] = cfg.threads;
    j["wall_time_ms"] = elapsed_ms(t0);
    deliver(cfg, out, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_symmetry(const RunConfig& cfg, std::ostream& out) {
    auto t0 = std::chrono::steady_clock::now();
    GraphFamily g = GraphFamily::by_name(cfg.graph);
    json j;
    j["version"] = 1;
    j["command"] = "symmetry";
    j["graph"] = g.name();
    bool violated = false;

    if (g.is_unimodular()) {
        json mt = json::array();
        for (int n = 0; n <= cfg.n_max; ++n) {
            MassTransportResult r = mass_transport_check(g, n, cfg.threads);
            mt.push_back({{"n", n},
                          {"lhs", r.lhs.str()},
                          {"rhs", r.rhs.str()},
                          {"equal", r.equal}});
            violated |= !r.equal;
        }
        j["mass_transport"] = mt;

        json rev = json::array();
        for (int n = 0; n <= cfg.n_max; ++n) {
            ReverseCountResult r = reverse_count_check(g, n, cfg.threads);
            rev.push_back({{"n", n},
                           {"sigmaF", r.sigma_f.str()},
                           {"sigmaB_rev", r.sigma_b_rev.str()},
                           {"C", r.c_bound.str()},
                           {"exact", r.exact_equal},
                           {"within_bounds", r.within_bounds}});
            violated |= !(r.exact_expected ? r.exact_equal : r.within_bounds);
        }
        j["reversal"] = rev;
    } else {
        j["mass_transport"] = {{"skipped", true},
                               {"reason", g.name() + " is not unimodular"}};
        j["reversal"] = {{"skipped", true},
                         {"reason", g.name() + " is not unimodular"}};
    }

    if (g.kind() == FamilyKind::Grandparent) {
        int W = 40;
        QuasiGeodesic qg = build_quasi_geodesic(g, W);
        json window = json::array();
        for (int i = -qg.window; i <= qg.window; ++i)
            window.push_back(g.format_vertex(qg.at(i)));
        j["quasi_geodesic"] = {{"window", qg.window},
                               {"alpha", qg.alpha.str()},
                               {"alpha_value", qg.alpha.to_double()},
                               {"certificates", 2 * qg.window},
                               {"vertices", window}};
        int demo_n = std::min(cfg.n_max, 6);
        std::size_t total = 0, certified = 0;
        for (int n = 0; n <= demo_n; ++n) {
            enumerate_saws(g, g.origin(), n, [&](const Walk& w) {
                Decomposition d = decompose_walk(g, w, qg, cfg.delta);
                ++total;
                if (d.all_certified) ++certified;
            });
        }
        j["decomposition"] = {{"walks", total},
                              {"certified", certified},
                              {"delta", cfg.delta}};
        violated |= certified != total;

        json bounds = json::array();
        for (int n = 1; n <= demo_n; ++n) {
            BoundCheckResult bc =
                bound_inequality_check(g, n, qg.alpha, cfg.delta, cfg.threads);
            bounds.push_back({{"n", n},
                              {"lhs", bc.lhs.str()},
                              {"rhs_first", bc.rhs_first.str()},
                              {"rhs_second", bc.rhs_second.str()},
                              {"holds", bc.holds}});
            violated |= !bc.holds;
        }
        j["counting_bound"] = bounds;
    }

    j["threads"] = cfg.threads;
    j["wall_time_ms"] = elapsed_ms(t0);
    j["ok"] = !violated;
    deliver(cfg, out, j.dump(2) + "\n");
    return violated ? kExitIdentity : kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"exact enumeration and extendability analysis of self-avoiding "
                 "walks on infinite quasi-transitive graphs"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string modes, walk_str;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--graph", cfg.graph,
                        "graph family: square, cubic, triangular, ladder, tree3, "
                        "tree4, decorated-square, grandparent, oriented-ladder");
        sub->add_option("--threads", cfg.threads, "worker threads")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "seed for randomized estimates");
        sub->add_option("--format", cfg.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out, "output file (default stdout)");
        sub->add_option("--delta", cfg.delta, "decomposition delta in (0, 1/2)");
        sub->add_option("--tol", cfg.tol, "bisection tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--trials", cfg.trials, "Monte Carlo trials (0 disables)");
    };

    CLI::App* counts = app.add_subcommand("counts", "per-length SAW count table");
    add_common(counts);
    counts->add_option("--n-max", cfg.n_max, "maximum walk length")
        ->check(CLI::NonNegativeNumber);
    counts->add_option("--modes", modes, "comma list of plain,F,B,FB");

    CLI::App* classify = app.add_subcommand(
        "classify", "extendability verdicts for one walk given as directions");
    add_common(classify);
    classify->add_option("walk", walk_str, "direction string, e.g. EENN")
        ->required();

    CLI::App* tree_dim =
        app.add_subcommand("tree-dim", "growth and branching of the SAW tree");
    add_common(tree_dim);
    tree_dim->add_option("--depth", cfg.depth, "tree depth cap")
        ->check(CLI::NonNegativeNumber);
    tree_dim->add_option("--modes", modes, "F builds the forward SAW tree");

    CLI::App* symmetry = app.add_subcommand(
        "symmetry", "mass-transport, reversal and quasi-geodesic checks");
    add_common(symmetry);
    symmetry->add_option("--n-max", cfg.n_max, "maximum walk length")
        ->check(CLI::NonNegativeNumber);

    std::vector<const char*> argv;
    argv.push_back("sawkit");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (!modes.empty()) parse_modes(modes, cfg);
        if (cfg.delta <= 0 || cfg.delta >= 0.5)
            throw InputError("delta must lie in (0, 1/2)");
        if (counts->parsed()) return cmd_counts(cfg, out);
        if (classify->parsed()) return cmd_classify(cfg, walk_str, out);
        if (tree_dim->parsed()) return cmd_tree_dim(cfg, out);
        if (symmetry->parsed()) return cmd_symmetry(cfg, out);
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << "\n";
        return kExitResource;
    } catch (const IdentityViolationError& e) {
        err << "identity violation: " << e.what() << "\n";
        return kExitIdentity;
    } catch (const ConstructionError& e) {
        err << "construction failed: " << e.what() << "\n";
        return kExitIdentity;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace sawkit
