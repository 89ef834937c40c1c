#include <doctest.h>

#include "naive_oracle.hpp"
#include "sawkit/enumerate.hpp"
#include "sawkit/errors.hpp"
#include "sawkit/extendability.hpp"
#include "test_util.hpp"

using namespace sawkit;

namespace {

const char* kSpiral = "ENNWWSE"; // endpoint (0,0)-shifted spiral, fully trapped

Walk spiral_walk(const GraphFamily& g) {
    return Walk::from_directions(g, g.origin(), kSpiral);
}

} // namespace

TEST_CASE("escape region invariants") {
    GraphFamily g = GraphFamily::by_name("square");
    Walk w = Walk::from_directions(g, g.origin(), "EENNW");
    EscapeRegion r = make_escape_region(g, w.vertices, 2);
    std::int64_t c[3];
    for (const auto& v : w.vertices) {
        g.embed(v, c);
        CHECK(r.strictly_inside(c));
    }
    CHECK(r.margin == 2);
    CHECK_THROWS_AS(make_escape_region(g, w.vertices, 0), InputError);
}

TEST_CASE("square lattice: straight, spiral, and reversal symmetry") {
    GraphFamily g = GraphFamily::by_name("square");
    Walk straight = Walk::from_directions(g, g.origin(), "EEEEE");
    CHECK(forward_extendable(g, straight));
    CHECK(backward_extendable(g, straight));
    CHECK(doubly_extendable(g, Walk::from_directions(g, g.origin(), "E")));

    Walk sp = spiral_walk(g);
    CHECK(!forward_extendable(g, sp));
    CHECK(backward_extendable(g, sp)); // escapes via (-1,-1) or (0,-2)
    CHECK(!doubly_extendable(g, sp));

    // backward = forward of the reversed walk on undirected families
    for (int i = 0; i < 40; ++i) {
        Walk w = test::random_saw(g, g.origin(), 10, 1000 + i);
        CHECK(backward_extendable(g, w) == forward_extendable(g, w.reversed(g)));
    }
}

TEST_CASE("finite-extension semi-oracle basics") {
    GraphFamily g = GraphFamily::by_name("square");
    Walk sp = spiral_walk(g);
    CHECK(extendable_by(g, sp, 0, Side::F)); // k = 0 is vacuous
    CHECK(!extendable_by(g, sp, 1, Side::F));
    CHECK(extendable_by(g, sp, 20, Side::B));

    // monotone in k, and the exact oracle implies every finite k
    for (int i = 0; i < 20; ++i) {
        Walk w = test::random_saw(g, g.origin(), 9, 2000 + i);
        bool prev = true;
        for (int k : {20, 12, 6, 2, 1}) {
            bool now = extendable_by(g, w, k, Side::F);
            // larger k passed implies smaller k passes
            if (prev && k < 20) CHECK(now);
            prev = now;
        }
        if (forward_extendable(g, w)) CHECK(extendable_by(g, w, 20, Side::F));
    }
}

TEST_CASE("exact oracles match extendable_by(K) exhaustively at small n") {
    GraphFamily g = GraphFamily::by_name("square");
    for (int n = 0; n <= 6; ++n) {
        for (const auto& w : naive::all_saws(g, g.origin(), n)) {
            int kf = equivalence_steps(g, w, false);
            CHECK(forward_extendable(g, w) == extendable_by(g, w, kf, Side::F));
            CHECK(backward_extendable(g, w) == extendable_by(g, w, kf, Side::B));
        }
    }
    for (int n = 0; n <= 4; ++n) {
        for (const auto& w : naive::all_saws(g, g.origin(), n)) {
            int kb = equivalence_steps(g, w, true);
            CHECK(doubly_extendable(g, w) == extendable_by(g, w, kb, Side::Both));
        }
    }
}

TEST_CASE("FB implies F and B") {
    GraphFamily g = GraphFamily::by_name("square");
    for (int n = 0; n <= 5; ++n)
        for (const auto& w : naive::all_saws(g, g.origin(), n))
            if (doubly_extendable(g, w)) {
                CHECK(forward_extendable(g, w));
                CHECK(backward_extendable(g, w));
            }
}

TEST_CASE("count_extendable equals the oracle filter count") {
    GraphFamily g = GraphFamily::by_name("square");
    for (int n = 4; n <= 6; ++n) {
        std::uint64_t f = 0, b = 0;
        for (const auto& w : naive::all_saws(g, g.origin(), n)) {
            if (forward_extendable(g, w)) ++f;
            if (backward_extendable(g, w)) ++b;
        }
        CHECK(count_extendable(g, g.origin(), n, ExtMode::F) == U128(f));
        CHECK(count_extendable(g, g.origin(), n, ExtMode::B) == U128(b));
    }
}

TEST_CASE("ladder: strip escapes and colliding double escapes") {
    GraphFamily g = GraphFamily::by_name("ladder");
    // U across a rung pair: (1,0) (0,0) (0,1) (1,1)
    Walk u_walk = Walk::from_labels(g, VertexId::at(1, 0), {1, 2, 0});
    CHECK(forward_extendable(g, u_walk));
    CHECK(backward_extendable(g, u_walk));
    bool fb = doubly_extendable(g, u_walk);
    int kb = equivalence_steps(g, u_walk, true);
    CHECK(fb == extendable_by(g, u_walk, kb, Side::Both));

    // exhaustive agreement at small n
    for (int n = 0; n <= 6; ++n) {
        for (const auto& w : naive::all_saws(g, g.origin(), n)) {
            int kf = equivalence_steps(g, w, false);
            CHECK(forward_extendable(g, w) == extendable_by(g, w, kf, Side::F));
            CHECK(backward_extendable(g, w) == extendable_by(g, w, kf, Side::B));
            CHECK(doubly_extendable(g, w) ==
                  extendable_by(g, w, equivalence_steps(g, w, true), Side::Both));
        }
    }
}

TEST_CASE("oriented ladder: direction-aware escapes") {
    GraphFamily g = GraphFamily::by_name("oriented-ladder");
    for (int n = 0; n <= 7; ++n) {
        for (const auto& w : naive::all_saws(g, g.origin(), n)) {
            CHECK(forward_extendable(g, w) == extendable_by(g, w, 16, Side::F));
            CHECK(backward_extendable(g, w) == extendable_by(g, w, 16, Side::B));
        }
    }
    CHECK_THROWS_AS(doubly_extendable(g, naive::all_saws(g, g.origin(), 1)[0]),
                    UnsupportedFamilyError);
}

TEST_CASE("decorated square escapes at doubled margins") {
    GraphFamily g = GraphFamily::by_name("decorated-square");
    for (int n = 0; n <= 6; ++n)
        for (const auto& w : naive::all_saws(g, g.origin(), n)) {
            CHECK(forward_extendable(g, w));
            int kf = equivalence_steps(g, w, false);
            CHECK(extendable_by(g, w, kf, Side::F));
        }
}

TEST_CASE("grandparent graph: certified flood agrees with deep finite search") {
    GraphFamily g = GraphFamily::by_name("grandparent");
    for (int n = 0; n <= 4; ++n) {
        for (const auto& w : naive::all_saws(g, g.origin(), n)) {
            CHECK(forward_extendable(g, w) == extendable_by(g, w, 12, Side::F));
            CHECK(backward_extendable(g, w) == extendable_by(g, w, 12, Side::B));
        }
    }
    // longer sampled walks
    auto walks = naive::all_saws(g, g.origin(), 7);
    for (std::size_t i = 0; i < walks.size(); i += 97) {
        CHECK(forward_extendable(g, walks[i]) ==
              extendable_by(g, walks[i], 14, Side::F));
        CHECK(backward_extendable(g, walks[i]) ==
              extendable_by(g, walks[i], 14, Side::B));
    }
    // the certified flood also works on the reversed graph
    GraphFamily rg = reverse(g);
    for (const auto& w : naive::all_saws(rg, rg.origin(), 3))
        CHECK(forward_extendable(rg, w) == extendable_by(rg, w, 12, Side::F));
}

TEST_CASE("triangular lattice spot checks") {
    GraphFamily g = GraphFamily::by_name("triangular");
    for (int n = 0; n <= 4; ++n)
        for (const auto& w : naive::all_saws(g, g.origin(), n)) {
            int kf = equivalence_steps(g, w, false);
            CHECK(forward_extendable(g, w) == extendable_by(g, w, kf, Side::F));
        }
}
