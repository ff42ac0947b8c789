#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rsg/arena.hpp"
#include "rsg/generator.hpp"

#include "test_support.hpp"

using namespace rsg;
using test_support::arena_a1;

TEST_CASE("NodeSet basic operations", "[arena]") {
    NodeSet s{3, 1, 100};
    REQUIRE(s.size() == 3);
    REQUIRE(s.contains(1));
    REQUIRE(s.contains(100));
    REQUIRE_FALSE(s.contains(2));
    REQUIRE_FALSE(s.contains(101));

    REQUIRE_FALSE(s.insert(3)); // already present
    REQUIRE(s.insert(4));
    REQUIRE(s.erase(100));
    REQUIRE_FALSE(s.erase(100));
    REQUIRE(s.size() == 3);

    REQUIRE(s.to_vector() == std::vector<NodeId>{1, 3, 4}); // ascending iteration
}

TEST_CASE("NodeSet algebra", "[arena]") {
    NodeSet a{0, 1, 2, 64};
    NodeSet b{2, 64, 65};
    REQUIRE((a | b) == NodeSet{0, 1, 2, 64, 65});
    REQUIRE((a & b) == NodeSet{2, 64});
    REQUIRE((a - b) == NodeSet{0, 1});
    REQUIRE(NodeSet{2, 64}.is_subset_of(a));
    REQUIRE_FALSE(b.is_subset_of(a));
    REQUIRE(NodeSet{}.is_subset_of(a));
    REQUIRE(a.intersects(b));
    REQUIRE_FALSE(NodeSet{5}.intersects(b));

    REQUIRE(NodeSet::full(3) == NodeSet{0, 1, 2});
    REQUIRE(NodeSet{1}.complement(3) == NodeSet{0, 2});
    REQUIRE(NodeSet{}.complement(0) == NodeSet{});

    // members beyond the universe are dropped by complement
    REQUIRE(NodeSet{1, 9}.complement(3) == NodeSet{0, 2});
}

TEST_CASE("NodeSet matches a std::set reference on random operations", "[arena]") {
    Rng rng(7);
    for (int round = 0; round < 50; ++round) {
        NodeSet lhs;
        std::set<NodeId> ref;
        for (int op = 0; op < 200; ++op) {
            auto v = static_cast<NodeId>(rng.rand_int(0, 200));
            if (rng.coin()) {
                lhs.insert(v);
                ref.insert(v);
            } else {
                lhs.erase(v);
                ref.erase(v);
            }
        }
        REQUIRE(lhs.size() == ref.size());
        REQUIRE(lhs.to_vector() == std::vector<NodeId>(ref.begin(), ref.end()));
    }
}

TEST_CASE("build_arena derives the transpose", "[arena]") {
    Arena a1 = arena_a1();
    REQUIRE(a1.num_nodes() == 4);
    REQUIRE(a1.num_edges() == 5);
    REQUIRE(a1.pred(3) == NodeSet{2, 3});
    REQUIRE(a1.pred(0) == NodeSet{1});
    REQUIRE(a1.owner(0) == Owner::Reachability);
    REQUIRE(a1.owner(1) == Owner::Safety);
}

TEST_CASE("build_arena edge cases", "[arena]") {
    SECTION("single node, no edges") {
        Arena a = build_arena({}, {0}, {});
        REQUIRE(a.num_nodes() == 1);
        REQUIRE(a.succ(0).empty());
        REQUIRE(a.pred(0).empty());
    }
    SECTION("node declared in both lists") {
        REQUIRE_THROWS_AS(build_arena({0}, {0}, {}), OverlappingOwnership);
    }
    SECTION("gap in the node ids") {
        REQUIRE_THROWS_AS(build_arena({0}, {2}, {}), DanglingNode);
    }
    SECTION("edge endpoint out of range") {
        REQUIRE_THROWS_AS(build_arena({0}, {1}, {{0, 2}}), EdgeOutOfRange);
    }
    SECTION("parallel edges collapse") {
        Arena a = build_arena({0}, {1}, {{0, 1}, {0, 1}, {1, 0}});
        REQUIRE(a.num_edges() == 2);
        REQUIRE(a.succ(0) == NodeSet{1});
    }
}

TEST_CASE("neighbors view", "[arena]") {
    Arena a1 = arena_a1();
    REQUIRE(neighbors(a1, 1, Direction::Straight) == NodeSet{0, 2});
    REQUIRE(neighbors(a1, 3, Direction::Transpose) == NodeSet{2, 3});
    REQUIRE(neighbors(a1, 0, Direction::Transpose) == NodeSet{1});
    REQUIRE_THROWS_AS(neighbors(a1, 4, Direction::Straight), NodeOutOfRange);
}

TEST_CASE("transpose consistency and ownership totality on generated arenas", "[arena]") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Arena arena = test_support::random_game(seed, 2, 40).arena;
        std::size_t n = arena.num_nodes();
        bool consistent = true;
        for (NodeId u = 0; u < n && consistent; ++u)
            for (NodeId v = 0; v < n; ++v)
                if (arena.succ(u).contains(v) != arena.pred(v).contains(u)) {
                    consistent = false;
                    break;
                }
        REQUIRE(consistent);
        const NodeSet& vs = arena.nodes_of(Owner::Safety);
        const NodeSet& vr = arena.nodes_of(Owner::Reachability);
        REQUIRE((vs | vr) == NodeSet::full(n));
        REQUIRE_FALSE(vs.intersects(vr));
    }
}

TEST_CASE("GameSpec validates the target range", "[arena]") {
    Arena a1 = arena_a1();
    REQUIRE_NOTHROW(GameSpec(a1, NodeSet{3}, Objective::Reach));
    REQUIRE_THROWS_AS(GameSpec(a1, NodeSet{4}, Objective::Reach), NodeOutOfRange);
}
