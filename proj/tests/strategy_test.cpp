#include <catch2/catch_amalgamated.hpp>

#include "rsg/oracle.hpp"
#include "rsg/solvers.hpp"
#include "rsg/strategy.hpp"

#include "test_support.hpp"

using namespace rsg;
using test_support::arena_a1;
using test_support::as_policy;
using test_support::random_game;

TEST_CASE("rank ordering", "[strategy]") {
    REQUIRE(Rank::finite(0) < Rank::finite(1));
    REQUIRE(Rank::finite(7) < Rank::infinite());
    REQUIRE_FALSE(Rank::infinite() < Rank::infinite());
    REQUIRE(Rank::infinite() == Rank::infinite());
    REQUIRE_FALSE(Rank::finite(3) == Rank::infinite());
}

TEST_CASE("compute_ranks labels attractor stages", "[strategy]") {
    Arena a1 = arena_a1();
    RankTable ranks = compute_ranks(a1, NodeSet{3});
    REQUIRE(ranks[3] == Rank::finite(0));
    REQUIRE(ranks[2] == Rank::finite(1));
    REQUIRE_FALSE(ranks[0].is_finite());
    REQUIRE_FALSE(ranks[1].is_finite());

    for (const Rank& r : compute_ranks(a1, NodeSet{})) REQUIRE_FALSE(r.is_finite());
    for (const Rank& r : compute_ranks(a1, NodeSet::full(4))) REQUIRE(r == Rank::finite(0));
}

TEST_CASE("finite ranks coincide with the reach winning region", "[strategy]") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto game = random_game(seed, 2, 40);
        RankTable ranks = compute_ranks(game.arena, game.target);
        NodeSet finite;
        for (NodeId v = 0; v < game.arena.num_nodes(); ++v)
            if (ranks[v].is_finite()) finite.insert(v);
        SolveResult r = solve_backward_improved(GameSpec(game.arena, game.target, Objective::Reach));
        REQUIRE(finite == r.win_reach);
    }
}

TEST_CASE("extract_strategies picks rank witnesses", "[strategy]") {
    Arena a1 = arena_a1();
    RankTable ranks = compute_ranks(a1, NodeSet{3});
    StrategyPair s = extract_strategies(a1, ranks);
    REQUIRE(s.reach_choice == std::map<NodeId, NodeId>{{2, 3}});
    REQUIRE(s.safe_choice == std::map<NodeId, NodeId>{{1, 0}});

    StrategyPair trivial = extract_strategies(a1, compute_ranks(a1, NodeSet::full(4)));
    REQUIRE(trivial.reach_choice.empty());
    REQUIRE(trivial.safe_choice.empty());

    Arena chain = build_arena({}, {0, 1, 2}, {{0, 1}, {1, 2}});
    StrategyPair cs = extract_strategies(chain, compute_ranks(chain, NodeSet{2}));
    REQUIRE(cs.reach_choice == std::map<NodeId, NodeId>{{0, 1}, {1, 2}});
}

TEST_CASE("corrupt rank tables are rejected", "[strategy]") {
    Arena a1 = arena_a1();
    // node 2 claims a finite stage but its only successor does not descend
    RankTable bogus{Rank::infinite(), Rank::infinite(), Rank::finite(1), Rank::finite(1)};
    REQUIRE_THROWS_AS(extract_strategies(a1, bogus), MissingWitness);
    // safety node 1 outside the attractor, yet both successors rank finite
    RankTable bogus_safe{Rank::finite(0), Rank::infinite(), Rank::finite(0), Rank::finite(0)};
    REQUIRE_THROWS_AS(extract_strategies(a1, bogus_safe), MissingWitness);
}

TEST_CASE("simulate_play follows strategies and policies", "[strategy]") {
    Arena a1 = arena_a1();
    NodeSet target{3};
    StrategyPair s = extract_strategies(a1, compute_ranks(a1, target));

    SECTION("winning start reaches the target in one move") {
        auto adversary = as_policy({{1, 0}, {3, 3}});
        PlayOutcome out = simulate_play(a1, target, 2, s, Owner::Safety, adversary, 4);
        REQUIRE(out.status == PlayStatus::ReachedTarget);
        REQUIRE(out.steps_to_target == 1);
        REQUIRE(out.trace == std::vector<NodeId>{2, 3});
    }
    SECTION("losing start cycles under the safety strategy") {
        auto adversary = as_policy(s.safe_choice); // g is the safety player's play
        PlayOutcome out = simulate_play(a1, target, 0, s, Owner::Safety, adversary, 4);
        REQUIRE(out.status == PlayStatus::Undecided);
        REQUIRE(out.trace == std::vector<NodeId>{0, 1, 0, 1, 0});
    }
    SECTION("start on the target wins in zero steps") {
        Arena single = build_arena({}, {0}, {});
        PlayOutcome out = simulate_play(single, NodeSet{0}, 0, StrategyPair{}, Owner::Safety,
                                        as_policy({}), 4);
        REQUIRE(out.status == PlayStatus::ReachedTarget);
        REQUIRE(out.steps_to_target == 0);
    }
    SECTION("dead end halts the play") {
        Arena chain = build_arena({}, {0, 1}, {{0, 1}});
        PlayOutcome out = simulate_play(chain, NodeSet{}, 0, StrategyPair{}, Owner::Safety,
                                        as_policy({}), 9);
        REQUIRE(out.status == PlayStatus::Halted);
        REQUIRE(out.trace == std::vector<NodeId>{0, 1});
    }
    SECTION("illegal adversary move throws") {
        auto bad = as_policy({{1, 3}}); // 1 -> 3 is not an edge of A1
        REQUIRE_THROWS_AS(simulate_play(a1, target, 1, s, Owner::Safety, bad, 4), IllegalMove);
    }
    SECTION("adversary may not halt while moves exist") {
        auto quitter = as_policy({});
        REQUIRE_THROWS_AS(simulate_play(a1, target, 1, s, Owner::Safety, quitter, 4), IllegalMove);
    }
}

TEST_CASE("rank descent along strategy-conformant plays", "[strategy]") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto game = random_game(seed, 2, 12);
        std::size_t n = game.arena.num_nodes();
        RankTable ranks = compute_ranks(game.arena, game.target);
        StrategyPair s = extract_strategies(game.arena, ranks);
        Rng rng(seed * 31 + 1);
        auto adversary = test_support::random_policy(game.arena, Owner::Safety, rng);
        for (NodeId v = 0; v < n; ++v) {
            if (!ranks[v].is_finite()) continue;
            PlayOutcome out =
                simulate_play(game.arena, game.target, v, s, Owner::Safety, as_policy(adversary), n);
            REQUIRE(out.status == PlayStatus::ReachedTarget);
            for (std::size_t i = 0; i + 1 <= out.steps_to_target; ++i)
                REQUIRE(ranks[out.trace[i + 1]] < ranks[out.trace[i]]);
        }
    }
}

TEST_CASE("strategies win everywhere on their regions (small exhaustive check)", "[strategy]") {
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; checked < 12 && seed < 200; ++seed) {
        auto game = random_game(seed, 2, 9);
        std::size_t n = game.arena.num_nodes();
        auto safety_policies = test_support::enumerate_policies(game.arena, Owner::Safety, 300);
        auto reach_policies = test_support::enumerate_policies(game.arena, Owner::Reachability, 300);
        if (!safety_policies || !reach_policies) continue;
        ++checked;

        RankTable ranks = compute_ranks(game.arena, game.target);
        StrategyPair s = extract_strategies(game.arena, ranks);
        NodeSet win_reach = oracle_attractor(game.arena, game.target);

        for (NodeId v = 0; v < n; ++v) {
            if (win_reach.contains(v)) {
                for (const auto& policy : *safety_policies) {
                    PlayOutcome out = simulate_play(game.arena, game.target, v, s, Owner::Safety,
                                                    as_policy(policy), n);
                    REQUIRE(out.status == PlayStatus::ReachedTarget);
                    REQUIRE(out.steps_to_target <= n);
                }
            } else {
                for (const auto& policy : *reach_policies) {
                    PlayOutcome out = simulate_play(game.arena, game.target, v, s,
                                                    Owner::Reachability, as_policy(policy), 2 * n);
                    REQUIRE(out.status != PlayStatus::ReachedTarget);
                }
            }
        }
    }
    REQUIRE(checked == 12);
}
