#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "naive_oracle.hpp"
#include "sawkit/enumerate.hpp"
#include "sawkit/errors.hpp"

using namespace sawkit;

TEST_CASE("checked 128-bit counter") {
    CHECK((U128(3) * U128(4)).str() == "12");
    U128 big(0xffffffffffffffffULL);
    CHECK((big + U128(1)).str() == "18446744073709551616");
    CHECK_THROWS_AS(U128::max() + U128(1), OverflowError);
    CHECK_THROWS_AS(U128::max() * U128(2), OverflowError);
    CHECK_THROWS_AS(U128(1) - U128(2), OverflowError);
    CHECK(U128(0) * U128::max() == U128(0));
}

TEST_CASE("sigma on the square lattice: trivial and oracle-frozen values") {
    GraphFamily g = GraphFamily::by_name("square");
    CHECK(count_saws(g, g.origin(), 0) == U128(1));
    CHECK(count_saws(g, g.origin(), 2) == U128(12)); // 4*3, no 2-step collision
    // frozen from the naive enumerator (also recomputed here)
    CHECK(naive::count_saws(g, g.origin(), 4) == 100);
    CHECK(count_saws(g, g.origin(), 4) == U128(100));
    for (int n = 0; n <= 9; ++n)
        CHECK(count_saws(g, g.origin(), n).low64() == naive::count_saws(g, g.origin(), n));
}

TEST_CASE("sigma on regular trees matches d(d-1)^(n-1)") {
    // tree3 to depth 20; tree4 capped where enumeration stays cheap (the
    // acceptance suite carries the deep runs)
    for (auto [d, n_max] : {std::pair{3, 20}, std::pair{4, 13}}) {
        GraphFamily g = GraphFamily::by_name("tree" + std::to_string(d));
        U128 expect(static_cast<std::uint64_t>(d));
        for (int n = 1; n <= n_max; ++n) {
            CHECK(count_saws(g, g.origin(), n) == expect);
            expect *= U128(static_cast<std::uint64_t>(d - 1));
        }
    }
}

TEST_CASE("enumerate_saws visits in label order, once each") {
    GraphFamily g = GraphFamily::by_name("square");
    std::vector<Walk> walks;
    enumerate_saws(g, g.origin(), 1, [&](const Walk& w) { walks.push_back(w); });
    REQUIRE(walks.size() == 4);
    CHECK(walks[0].end() == VertexId::at(1, 0));
    CHECK(walks[1].end() == VertexId::at(-1, 0));
    CHECK(walks[2].end() == VertexId::at(0, 1));
    CHECK(walks[3].end() == VertexId::at(0, -1));

    for (const auto& name : GraphFamily::known_names()) {
        GraphFamily f = GraphFamily::by_name(name);
        for (int n = 0; n <= 6; ++n) {
            std::size_t visits = 0;
            enumerate_saws(f, f.origin(), n, [&](const Walk&) { ++visits; });
            CHECK(U128(visits) == count_saws(f, f.origin(), n));
        }
    }

    // pairwise distinct as (vertices, edges) pairs
    std::set<std::string> seen;
    GraphFamily lad = GraphFamily::by_name("ladder");
    enumerate_saws(lad, lad.origin(), 5, [&](const Walk& w) {
        std::ostringstream key;
        for (const auto& v : w.vertices) key << lad.format_vertex(v) << ';';
        for (auto e : w.edges) key << e << ',';
        CHECK(seen.insert(key.str()).second);
    });

    // visitor abort propagates
    struct Abort {};
    CHECK_THROWS_AS(
        enumerate_saws(g, g.origin(), 3, [](const Walk&) { throw Abort{}; }), Abort);
}

TEST_CASE("parallel and serial enumeration agree") {
    GraphFamily g = GraphFamily::by_name("square");
    for (int n : {5, 9}) {
        U128 serial = count_saws(g, g.origin(), n, 1);
        CHECK(serial == count_saws(g, g.origin(), n, 4));
        CHECK(serial == count_saws(g, g.origin(), n, 13));
    }
    // visit multiset equals the union over a manual prefix partition
    std::multiset<std::string> direct, merged;
    auto key = [&](const Walk& w) { return w.direction_string(g); };
    enumerate_saws(g, g.origin(), 6, [&](const Walk& w) { direct.insert(key(w)); });
    enumerate_saws(g, g.origin(), 2, [&](const Walk& prefix) {
        enumerate_saws(g, prefix.start(), 6, [&](const Walk& w) {
            // keep only completions of this prefix
            if (std::equal(prefix.edges.begin(), prefix.edges.end(), w.edges.begin()))
                merged.insert(key(w));
        });
    });
    CHECK(direct == merged);
}

TEST_CASE("sigma_sup takes the max over classes") {
    GraphFamily g = GraphFamily::by_name("square");
    CHECK(sigma_sup(g, 5) == count_saws(g, g.origin(), 5));

    GraphFamily dec = GraphFamily::by_name("decorated-square");
    std::uint64_t site = naive::count_saws(dec, dec.representatives()[0], 2);
    std::uint64_t mid = naive::count_saws(dec, dec.representatives()[1], 2);
    CHECK(site == 4);
    CHECK(mid == 6);
    CHECK(sigma_sup(dec, 2) == U128(std::max(site, mid)));
}

TEST_CASE("plain submultiplicativity at unit-test scale") {
    for (const char* name : {"square", "ladder", "tree3", "oriented-ladder"}) {
        GraphFamily g = GraphFamily::by_name(name);
        std::vector<U128> sig;
        for (int n = 0; n <= 10; ++n) sig.push_back(sigma_sup(g, n));
        for (int m = 1; m <= 9; ++m)
            for (int n = 1; m + n <= 10; ++n)
                CHECK(sig[m + n] <= sig[m] * sig[n]);
    }
}

TEST_CASE("forward-extendable counts on the square lattice") {
    GraphFamily g = GraphFamily::by_name("square");
    for (int n = 0; n <= 6; ++n)
        CHECK(count_extendable(g, g.origin(), n, ExtMode::F) ==
              count_saws(g, g.origin(), n));
    U128 s7 = count_saws(g, g.origin(), 7);
    U128 f7 = count_extendable(g, g.origin(), 7, ExtMode::F);
    CHECK(f7 < s7);
    CHECK(s7 - f7 == U128(8)); // the trapped spiral and its 8 symmetries
}

TEST_CASE("every mode equals sigma on regular trees") {
    GraphFamily g = GraphFamily::by_name("tree3");
    for (int n = 0; n <= 8; ++n) {
        U128 s = count_saws(g, g.origin(), n);
        CHECK(count_extendable(g, g.origin(), n, ExtMode::F) == s);
        CHECK(count_extendable(g, g.origin(), n, ExtMode::B) == s);
        CHECK(count_extendable(g, g.origin(), n, ExtMode::FB) == s);
    }
}

TEST_CASE("unsupported (family, mode) pairs raise") {
    GraphFamily gp = GraphFamily::by_name("grandparent");
    CHECK_THROWS_AS(count_extendable(gp, gp.origin(), 2, ExtMode::FB),
                    UnsupportedFamilyError);
    GraphFamily ol = GraphFamily::by_name("oriented-ladder");
    CHECK_THROWS_AS(count_extendable(ol, ol.origin(), 2, ExtMode::FB),
                    UnsupportedFamilyError);
}

TEST_CASE("reversal symmetry sigmaF(v) = sigmaB(v) on undirected families") {
    for (const char* name : {"square", "ladder", "triangular", "decorated-square"}) {
        GraphFamily g = GraphFamily::by_name(name);
        for (const auto& rep : g.representatives())
            for (int n = 0; n <= 6; ++n)
                CHECK(count_extendable(g, rep, n, ExtMode::F) ==
                      count_extendable(g, rep, n, ExtMode::B));
    }
}

TEST_CASE("bridge counts") {
    GraphFamily g = GraphFamily::by_name("square");
    CHECK(count_bridges(2, 0) == U128(1)); // empty walk convention
    CHECK(count_bridges(2, 1) == U128(1)); // only the +x step
    CHECK(count_bridges(3, 1) == U128(1));

    // agreement with filtering the full enumeration
    for (int n = 0; n <= 8; ++n)
        CHECK(count_bridges(2, n) == U128(naive::count_bridges(g, n)));
    GraphFamily c = GraphFamily::by_name("cubic");
    for (int n = 0; n <= 5; ++n)
        CHECK(count_bridges(3, n) == U128(naive::count_bridges(c, n)));

    std::vector<U128> b;
    for (int n = 0; n <= 12; ++n) b.push_back(count_bridges(2, n));
    for (int n = 0; n <= 12; ++n) CHECK(b[n] <= sigma_sup(g, n));
    // supermultiplicative composition
    for (int m = 1; m <= 11; ++m)
        for (int n = 1; m + n <= 12; ++n)
            CHECK(b[m] * b[n] <= b[m + n]);
}

TEST_CASE("count table ordering and CSV shape") {
    GraphFamily g = GraphFamily::by_name("square");
    CountTableOptions opt;
    opt.f = opt.b = opt.fb = true;
    opt.threads = 2;
    CountTable t = compute_count_table(g, 5, opt);
    REQUIRE(t.rows.size() == 6);
    for (const auto& r : t.rows) {
        CHECK(*r.sigma_fb <= std::min(*r.sigma_f, *r.sigma_b));
        CHECK(std::max(*r.sigma_f, *r.sigma_b) <= r.sigma);
    }
    std::ostringstream csv;
    t.write_csv(csv);
    std::string first_line = csv.str().substr(0, csv.str().find('\n'));
    CHECK(first_line == "class,n,sigma,sigmaF,sigmaB,sigmaFB,ratioF,ratioB,ratioFB,rootN");

    CountTable bad;
    bad.rows.push_back({0, 1, U128(3), U128(4), {}, {}});
    CHECK_THROWS_AS(bad.check_ordering(), IdentityViolationError);
}
