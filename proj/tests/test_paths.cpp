#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "tempnet/paths.hpp"

using namespace tempnet;
using testutil::net_from_rows;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_tree_shape(const PathTree& tree, int n) {
    REQUIRE(static_cast<int>(tree.tdist.size()) == n);
    REQUIRE(static_cast<int>(tree.previous.size()) == n);
    REQUIRE(static_cast<int>(tree.gsteps.size()) == n);
    CHECK(tree.tdist[static_cast<size_t>(tree.seed - 1)] == 0);
    CHECK(tree.gsteps[static_cast<size_t>(tree.seed - 1)] == 0);
    CHECK(tree.previous[static_cast<size_t>(tree.seed - 1)] == 0);
    for (int v = 1; v <= n; ++v) {
        const size_t i = static_cast<size_t>(v - 1);
        const bool reached = std::isfinite(tree.tdist[i]);
        CHECK(std::isfinite(tree.gsteps[i]) == reached);
        if (!reached) CHECK(tree.previous[i] == 0);
        if (reached && v != tree.seed) {
            // predecessor chain: one hop back costs exactly one gstep
            const int p = tree.previous[i];
            REQUIRE(p >= 1);
            CHECK(tree.gsteps[static_cast<size_t>(p - 1)] == tree.gsteps[i] - 1);
            CHECK(tree.tdist[static_cast<size_t>(p - 1)] <= tree.tdist[i]);
        }
    }
    // chains terminate at the seed in <= n steps
    for (int v = 1; v <= n; ++v) {
        if (!std::isfinite(tree.tdist[static_cast<size_t>(v - 1)])) continue;
        int cur = v, hops = 0;
        while (cur != tree.seed && hops <= n) {
            cur = tree.previous[static_cast<size_t>(cur - 1)];
            ++hops;
        }
        CHECK(cur == tree.seed);
    }
}

void check_against_oracle(const TemporalNetwork& net, int seed, double start, double end,
                          double step, TraversalRule rule) {
    auto tree = earliest_path_tree(net, seed, start, end, PathDirection::kFwd, step, rule);
    auto ref = oracle::earliest_paths(net, seed, start, end, step,
                                      rule == TraversalRule::kArriveWithinSpell);
    const int n = net.vertex_count();
    for (int v = 1; v <= n; ++v) {
        const size_t i = static_cast<size_t>(v - 1);
        CAPTURE(seed);
        CAPTURE(v);
        CAPTURE(start);
        CAPTURE(end);
        CAPTURE(step);
        if (std::isinf(ref.tdist[i])) {
            CHECK(std::isinf(tree.tdist[i]));
        } else {
            CHECK(tree.tdist[i] == doctest::Approx(ref.tdist[i]).epsilon(1e-12));
            CHECK(tree.gsteps[i] == ref.gsteps[i]);
            CHECK(tree.previous[i] == ref.previous[i]);
        }
    }
}

}  // namespace

TEST_CASE("single edge with a late spell: wait, then traverse") {
    auto net = net_from_rows(2, {{2, 10, 1, 2}});
    auto tree = earliest_path_tree(net, 1, 0, 30, PathDirection::kFwd, 0);
    CHECK(tree.tdist[1] == 2.0);
    CHECK(tree.gsteps[1] == 1);
    CHECK(tree.previous[1] == 1);
    CHECK(tree.type == "earliest.arrive");
    CHECK(tree.start == 0);
    CHECK(tree.end == 30);
    check_tree_shape(tree, 2);
}

TEST_CASE("seed-only tree on an edgeless network") {
    TemporalNetwork net(testutil::vertices(3), {}, true, 0, 10);
    auto tree = earliest_path_tree(net, 2, 0, 10);
    CHECK(reachable_set(tree) == std::vector<int>{2});
    CHECK(transmission_timeline(tree).empty());
    CHECK(tree_as_edgelist(tree).empty());
    CHECK(tree.tdist[0] == kInf);
    CHECK(tree.previous[0] == 0);
    CHECK(tree.gsteps[0] == kInf);
}

TEST_CASE("chain arrivals feed the transmission timeline") {
    auto net = net_from_rows(3, {{2, 10, 1, 2}, {5, 10, 2, 3}});
    auto tree = earliest_path_tree(net, 1, 0, 10);
    REQUIRE(reachable_set(tree) == std::vector<int>{1, 2, 3});
    auto events = transmission_timeline(tree);
    REQUIRE(events.size() == 2);
    CHECK(events[0].vertex == 2);
    CHECK(events[0].generation == 1);
    CHECK(events[0].clock_time == 2.0);
    CHECK(events[0].parent == 1);
    CHECK(events[1].vertex == 3);
    CHECK(events[1].generation == 2);
    CHECK(events[1].clock_time == 5.0);
    CHECK(events[1].parent == 2);

    CHECK(tree_as_edgelist(tree) == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});
}

TEST_CASE("complete always-active network reaches everyone in one hop") {
    std::vector<SpellRow> rows;
    const int n = 5;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            if (a != b) rows.push_back({0, 10, a, b});
    auto net = net_from_rows(n, rows);
    auto tree = earliest_path_tree(net, 3, 0, 10, PathDirection::kFwd, 0);
    CHECK(static_cast<int>(reachable_set(tree).size()) == n);
    for (int v = 1; v <= n; ++v)
        if (v != 3) {
            CHECK(tree.tdist[static_cast<size_t>(v - 1)] == 0.0);
            CHECK(tree.gsteps[static_cast<size_t>(v - 1)] == 1);
            CHECK(tree.previous[static_cast<size_t>(v - 1)] == 3);
        }
    CHECK(tree_as_edgelist(tree).size() == static_cast<size_t>(n - 1));
}

TEST_CASE("per-hop duration delays each generation") {
    auto net = net_from_rows(3, {{0, 20, 1, 2}, {0, 20, 2, 3}});
    auto tree = earliest_path_tree(net, 1, 0, 20, PathDirection::kFwd, 7);
    CHECK(tree.tdist[1] == 7.0);
    CHECK(tree.tdist[2] == 14.0);

    SUBCASE("arrival may pass the horizon, but such vertices cannot relay") {
        auto cut = earliest_path_tree(net, 1, 0, 10, PathDirection::kFwd, 7);
        CHECK(cut.tdist[1] == 7.0);   // contact at 0 <= 10, arrives at 7
        CHECK(cut.tdist[2] == 14.0);  // contact at 7 <= 10, arrives past end
        auto blocked = earliest_path_tree(net, 1, 0, 6, PathDirection::kFwd, 7);
        CHECK(blocked.tdist[1] == 7.0);      // contact 0, arrival 7 > 6 is still recorded
        CHECK(blocked.tdist[2] == kInf);     // relay would need contact at 7 > end
    }
    SUBCASE("arrive-within-spell rule also bounds the hop by the spell") {
        auto net2 = net_from_rows(2, {{0, 5, 1, 2}});
        auto depart = earliest_path_tree(net2, 1, 0, 30, PathDirection::kFwd, 7,
                                         TraversalRule::kDepartWithinSpell);
        CHECK(depart.tdist[1] == 7.0);
        auto arrive = earliest_path_tree(net2, 1, 0, 30, PathDirection::kFwd, 7,
                                         TraversalRule::kArriveWithinSpell);
        CHECK(arrive.tdist[1] == kInf);  // 0 + 7 > spell terminus 5
    }
}

TEST_CASE("equal arrivals break ties by fewer hops, then smaller id") {
    // two routes into vertex 4 arriving at the same instant
    auto net = net_from_rows(4, {{5, 9, 1, 2},   // contact 5
                                 {5, 9, 1, 3},   // contact 5
                                 {9, 9, 2, 4},   // relay contact 9
                                 {9, 9, 3, 4},   // relay contact 9, same arrival
                                 {9, 9, 1, 4}}); // direct contact 9, fewer hops
    auto tree = earliest_path_tree(net, 1, 0, 30);
    CHECK(tree.tdist[3] == 9.0);
    CHECK(tree.gsteps[3] == 1);     // direct hop wins on hop count
    CHECK(tree.previous[3] == 1);

    SUBCASE("without the direct arc, the smaller relay id wins") {
        auto relay = net_from_rows(4, {{5, 9, 1, 2}, {5, 9, 1, 3}, {9, 9, 2, 4}, {9, 9, 3, 4}});
        auto t2 = earliest_path_tree(relay, 1, 0, 30);
        CHECK(t2.tdist[3] == 9.0);
        CHECK(t2.gsteps[3] == 2);
        CHECK(t2.previous[3] == 2);
    }
}

TEST_CASE("a later relaxation with an equal route lowers the predecessor id") {
    // v4 (reached at 1) relaxes 4->3 first, recording prev 4; v2 (reached at
    // 2) then finds the identical (arrival 5, 2 hops) route, so prev drops
    // to the smaller id without any re-queueing
    auto net = net_from_rows(4, {{1, 1, 1, 4},
                                 {2, 2, 1, 2},
                                 {5, 5, 4, 3},
                                 {5, 5, 2, 3}});
    auto tree = earliest_path_tree(net, 1, 0, 10);
    CHECK(tree.tdist[2] == 5.0);
    CHECK(tree.gsteps[2] == 2);
    CHECK(tree.previous[2] == 2);
}

TEST_CASE("validation errors") {
    auto net = net_from_rows(2, {{0, 5, 1, 2}});
    CHECK_THROWS_AS(earliest_path_tree(net, 0, 0, 5), Error);
    CHECK_THROWS_AS(earliest_path_tree(net, 7, 0, 5), Error);
    CHECK_THROWS_AS(earliest_path_tree(net, 1, 5, 0), Error);
    CHECK_THROWS_AS(earliest_path_tree(net, 1, 0, 5, PathDirection::kFwd, -1), Error);
}

TEST_CASE("with step 0 and ever-active spells, gsteps is BFS hop count") {
    std::mt19937 rng(921);
    for (int trial = 0; trial < 60; ++trial) {
        StaticSlice shape = oracle::random_slice(rng, 7);
        std::vector<SpellRow> rows;
        for (auto [t, h] : shape.arcs) rows.push_back({0, 1000, t, h});
        if (rows.empty()) continue;
        auto net = net_from_rows(shape.vertex_count, rows);
        auto tree = earliest_path_tree(net, 1, 0, 1000, PathDirection::kFwd, 0);
        auto dist = oracle::geodesics(oracle::arc_matrix(shape, false));
        for (int v = 1; v <= shape.vertex_count; ++v) {
            const size_t i = static_cast<size_t>(v - 1);
            if (std::isinf(dist[0][i]))
                CHECK(std::isinf(tree.gsteps[i]));
            else
                CHECK(tree.gsteps[i] == dist[0][i]);
        }
    }
}

TEST_CASE("random temporal networks match the fixpoint oracle") {
    std::mt19937 rng(922);
    for (int trial = 0; trial < 250; ++trial) {
        auto net = oracle::random_temporal(rng, 8, 3);
        std::uniform_int_distribution<int> seed_pick(1, net.vertex_count());
        std::uniform_real_distribution<double> step_pick(0, 3);
        const int seed = seed_pick(rng);
        const double step = trial % 3 == 0 ? 0.0 : step_pick(rng);
        check_against_oracle(net, seed, 0, 10, step, TraversalRule::kDepartWithinSpell);
        check_against_oracle(net, seed, 2, 8, step, TraversalRule::kArriveWithinSpell);

        auto tree = earliest_path_tree(net, seed, 0, 10, PathDirection::kFwd, step);
        check_tree_shape(tree, net.vertex_count());

        auto arcs = tree_as_edgelist(tree);
        CHECK(arcs.size() + 1 == reachable_set(tree).size());
        std::set<int> targets;
        for (auto [p, c] : arcs) {
            CHECK(targets.insert(c).second);  // in-degree <= 1
            CHECK(p != c);
        }
    }
}

TEST_CASE("monotonicity in the window and the spell set") {
    std::mt19937 rng(923);
    for (int trial = 0; trial < 120; ++trial) {
        auto net = oracle::random_temporal(rng, 7, 3);
        const int seed = 1 + static_cast<int>(rng() % static_cast<unsigned>(net.vertex_count()));

        auto narrow = earliest_path_tree(net, seed, 2, 7, PathDirection::kFwd, 0.5);
        auto wide = earliest_path_tree(net, seed, 2, 10, PathDirection::kFwd, 0.5);
        for (size_t i = 0; i < narrow.tdist.size(); ++i)
            CHECK(wide.tdist[i] <= narrow.tdist[i]);

        // dropping spells can only delay arrivals
        std::vector<TemporalEdge> pruned = net.edges();
        for (auto& e : pruned)
            if (!e.spells.empty() && rng() % 2 == 0) e.spells.pop_back();
        TemporalNetwork thin(net.vertices(), pruned, true, net.obs_start(), net.obs_end());
        auto sparse = earliest_path_tree(thin, seed, 2, 10, PathDirection::kFwd, 0.5);
        for (size_t i = 0; i < sparse.tdist.size(); ++i)
            CHECK(sparse.tdist[i] >= wide.tdist[i]);
    }
}

TEST_CASE("backward search mirrors the forward search on the reversed network") {
    std::mt19937 rng(924);
    for (int trial = 0; trial < 120; ++trial) {
        auto net = oracle::random_temporal(rng, 7, 3);
        const int seed = 1 + static_cast<int>(rng() % static_cast<unsigned>(net.vertex_count()));
        const double start = 1, end = 9, step = trial % 2 ? 0.0 : 1.5;

        auto bkwd = earliest_path_tree(net, seed, start, end, PathDirection::kBkwd, step);
        CHECK(bkwd.type == "latest.depart");

        // hand-built mirror: arcs flipped, every spell [o,t] -> [-t,-o]
        std::vector<TemporalEdge> mirrored = net.edges();
        for (auto& e : mirrored) {
            std::swap(e.tail, e.head);
            for (auto& sp : e.spells) {
                EdgeSpell flipped;
                flipped.onset = -sp.terminus;
                flipped.terminus = -sp.onset;
                flipped.onset_censored = sp.terminus_censored;
                flipped.terminus_censored = sp.onset_censored;
                sp = flipped;
            }
            std::sort(e.spells.begin(), e.spells.end(),
                      [](const EdgeSpell& a, const EdgeSpell& b) { return a.onset < b.onset; });
        }
        TemporalNetwork mirror(net.vertices(), mirrored, true, -net.obs_end(), -net.obs_start());
        auto fwd = earliest_path_tree(mirror, seed, -end, -start, PathDirection::kFwd, step);

        REQUIRE(bkwd.tdist.size() == fwd.tdist.size());
        for (size_t i = 0; i < bkwd.tdist.size(); ++i) {
            if (std::isinf(fwd.tdist[i])) {
                CHECK(std::isinf(bkwd.tdist[i]));
            } else {
                CHECK(bkwd.tdist[i] == doctest::Approx(fwd.tdist[i]).epsilon(1e-12));
                CHECK(bkwd.gsteps[i] == fwd.gsteps[i]);
                CHECK(bkwd.previous[i] == fwd.previous[i]);
            }
        }
        check_tree_shape(bkwd, net.vertex_count());
    }
}

TEST_CASE("backward tdist measures time before the window end") {
    // seed 3 can be reached from 1 departing at latest 4 (spell of 1->2 ends
    // then), so tdist(1) = end - 4
    auto net = net_from_rows(3, {{0, 4, 1, 2}, {6, 8, 2, 3}});
    auto tree = earliest_path_tree(net, 3, 0, 10, PathDirection::kBkwd, 0);
    CHECK(tree.tdist[2] == 0.0);
    CHECK(tree.tdist[1] == 2.0);   // depart 2 at 8 (latest contact of 2->3)
    CHECK(tree.tdist[0] == 6.0);   // depart 1 at 4
    CHECK(tree.previous[0] == 2);
    CHECK(tree.gsteps[0] == 2);
    auto events = transmission_timeline(tree);
    REQUIRE(events.size() == 2);
    CHECK(events[0].clock_time == 4.0);  // end - tdist
    CHECK(events[0].vertex == 1);
    CHECK(events[1].clock_time == 8.0);
}
