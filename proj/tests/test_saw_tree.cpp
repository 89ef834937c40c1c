#include <doctest.h>

#include <set>
#include <sstream>

#include "naive_oracle.hpp"
#include "sawkit/enumerate.hpp"
#include "sawkit/errors.hpp"
#include "sawkit/extendability.hpp"
#include "sawkit/saw_tree.hpp"

using namespace sawkit;

namespace {

// node set as canonical walk strings, for tree equality by content
std::multiset<std::string> walk_keys(const GraphFamily& g, const TruncatedTree& t) {
    std::multiset<std::string> keys;
    for (std::size_t i = t.joined ? 1 : 0; i < t.nodes.size(); ++i) {
        Walk w = t.walk_of(g, static_cast<std::int32_t>(i));
        keys.insert(g.format_vertex(w.start()) + ":" + w.direction_string(g));
    }
    return keys;
}

} // namespace

TEST_CASE("saw tree level sizes are the SAW counts") {
    GraphFamily t3 = GraphFamily::by_name("tree3");
    TruncatedTree tt = build_saw_tree(t3, t3.origin(), 10);
    std::uint64_t expect = 3;
    for (int n = 1; n <= 10; ++n) {
        CHECK(tt.level_sizes[n] == expect);
        expect *= 2;
    }

    GraphFamily sq = GraphFamily::by_name("square");
    TruncatedTree st = build_saw_tree(sq, sq.origin(), 4);
    CHECK(st.level_sizes[0] == 1);
    CHECK(st.level_sizes[4] == naive::count_saws(sq, sq.origin(), 4));
    std::size_t total = 0;
    for (auto s : st.level_sizes) total += s;
    CHECK(total == st.node_count());

    // parent/child level bookkeeping
    for (std::size_t i = 1; i < st.nodes.size(); ++i)
        CHECK(st.nodes[i].level == st.nodes[st.nodes[i].parent].level + 1);

    TruncatedTree d0 = build_saw_tree(sq, sq.origin(), 0);
    CHECK(d0.node_count() == 1);
    CHECK(d0.level_sizes == std::vector<std::uint64_t>{1});
}

TEST_CASE("node budget is enforced") {
    GraphFamily sq = GraphFamily::by_name("square");
    CHECK_THROWS_AS(build_saw_tree(sq, sq.origin(), 8, 100), ResourceError);
}

TEST_CASE("forward saw tree: equal through depth 6, thinner at 7") {
    GraphFamily sq = GraphFamily::by_name("square");
    TruncatedTree full6 = build_saw_tree(sq, sq.origin(), 6);
    TruncatedTree fwd6 = build_forward_saw_tree(sq, sq.origin(), 6);
    CHECK(full6.level_sizes == fwd6.level_sizes);

    TruncatedTree fwd7 = build_forward_saw_tree(sq, sq.origin(), 7);
    TruncatedTree full7 = build_saw_tree(sq, sq.origin(), 7);
    CHECK(fwd7.level_sizes[7] < full7.level_sizes[7]);
    CHECK(full7.level_sizes[7] - fwd7.level_sizes[7] == 8);

    GraphFamily t3 = GraphFamily::by_name("tree3");
    CHECK(build_forward_saw_tree(t3, t3.origin(), 8).level_sizes ==
          build_saw_tree(t3, t3.origin(), 8).level_sizes);
}

TEST_CASE("pruning finite bushes") {
    GraphFamily sq = GraphFamily::by_name("square");
    TruncatedTree full = build_saw_tree(sq, sq.origin(), 8);

    TruncatedTree same =
        prune_finite_bushes(sq, full, [](const Walk&) { return true; });
    CHECK(same.level_sizes == full.level_sizes);
    CHECK(same.node_count() == full.node_count());

    TruncatedTree fwd = prune_finite_bushes(
        sq, full, [&sq](const Walk& w) { return forward_extendable(sq, w); });
    TruncatedTree fwd_direct = build_forward_saw_tree(sq, sq.origin(), 8);
    CHECK(fwd.level_sizes == fwd_direct.level_sizes);
    CHECK(walk_keys(sq, fwd) == walk_keys(sq, fwd_direct));

    // doubly-extendable tree = FB pruning of the backward tree
    TruncatedTree bwd = prune_finite_bushes(
        sq, full, [&sq](const Walk& w) { return backward_extendable(sq, w); });
    TruncatedTree fb_of_bwd = prune_finite_bushes(
        sq, bwd, [&sq](const Walk& w) { return doubly_extendable(sq, w); });
    TruncatedTree fb_direct = prune_finite_bushes(
        sq, full, [&sq](const Walk& w) { return doubly_extendable(sq, w); });
    CHECK(walk_keys(sq, fb_of_bwd) == walk_keys(sq, fb_direct));

    // pruning never increases level sizes; interior nodes keep a child
    for (int n = 0; n <= 8; ++n) CHECK(fwd.level_sizes[n] <= full.level_sizes[n]);
    for (std::size_t i = 0; i < fwd.nodes.size(); ++i)
        if (fwd.nodes[i].level < fwd.depth) CHECK(fwd.nodes[i].nchild >= 1);
}

TEST_CASE("joined trees") {
    GraphFamily t3 = GraphFamily::by_name("tree3");
    TruncatedTree sub = build_saw_tree(t3, t3.origin(), 6);
    TruncatedTree joined = join_trees({sub});
    REQUIRE(joined.depth == 7);
    CHECK(joined.level_sizes[0] == 1);
    CHECK(joined.level_sizes[1] == 1); // |W_1| = |S|
    for (int n = 0; n <= 6; ++n) CHECK(joined.level_sizes[n + 1] == sub.level_sizes[n]);

    GraphFamily dec = GraphFamily::by_name("decorated-square");
    std::vector<TruncatedTree> subs;
    for (const auto& rep : dec.representatives())
        subs.push_back(build_saw_tree(dec, rep, 4));
    TruncatedTree wedge = join_trees(subs);
    CHECK(wedge.level_sizes[1] == 2);
    CHECK(wedge.level_sizes[3] ==
          naive::count_saws(dec, dec.representatives()[0], 2) +
              naive::count_saws(dec, dec.representatives()[1], 2));
    CHECK(wedge.level_sizes[3] == 10);

    // per-node structure survives the index remap
    for (std::size_t i = 1; i < wedge.nodes.size(); ++i) {
        CHECK(wedge.nodes[i].level == wedge.nodes[wedge.nodes[i].parent].level + 1);
        for (std::int32_t c = 0; c < wedge.nodes[i].nchild; ++c)
            CHECK(wedge.nodes[wedge.nodes[i].first_child + c].parent ==
                  static_cast<std::int32_t>(i));
    }
    CHECK_THROWS_AS(join_trees({}), InputError);
}

TEST_CASE("tree dump format") {
    GraphFamily sq = GraphFamily::by_name("square");
    TruncatedTree t = build_saw_tree(sq, sq.origin(), 2);
    std::ostringstream os;
    t.dump(sq, os);
    std::istringstream is(os.str());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(is, line)) {
        if (lines == 0) CHECK(line == "0 -1 0 -1 (0,0)");
        ++lines;
    }
    CHECK(lines == t.node_count());
}

TEST_CASE("subperiodicity witness") {
    GraphFamily t3 = GraphFamily::by_name("tree3");
    TruncatedTree tt = build_saw_tree(t3, t3.origin(), 8);
    SubperiodicReport r1 = check_subperiodic_witness(t3, tt, 32, 4);
    CHECK(r1.all_embedded);

    // depth-0 checks always pass
    SubperiodicReport r0 = check_subperiodic_witness(t3, tt, 8, 0);
    CHECK(r0.all_embedded);

    GraphFamily sq = GraphFamily::by_name("square");
    TruncatedTree st = build_saw_tree(sq, sq.origin(), 8);
    SubperiodicReport r2 = check_subperiodic_witness(sq, st, 48, 4);
    CHECK(r2.all_embedded);

    // joined quasi-transitive tree: targets are the level-1 class nodes
    GraphFamily dec = GraphFamily::by_name("decorated-square");
    std::vector<TruncatedTree> subs;
    for (const auto& rep : dec.representatives())
        subs.push_back(build_saw_tree(dec, rep, 7));
    TruncatedTree wedge = join_trees(subs);
    SubperiodicReport r3 = check_subperiodic_witness(dec, wedge, 48, 4);
    CHECK(r3.all_embedded);
}
