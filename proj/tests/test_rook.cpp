#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pebblab/rook.hpp"

using namespace pebblab;

namespace {
PebbleConfiguration make_config(const RookGraph& rook,
                                std::initializer_list<std::pair<GridVertex, uint32_t>> pebbles) {
    PebbleConfiguration c(rook.vertex_count());
    for (const auto& [v, count] : pebbles) c.counts[rook.index(v)] = count;
    return c;
}
} // namespace

TEST_CASE("rook graph structure") {
    RookGraph r2(2);
    auto g2 = r2.to_simple();
    CHECK(g2.vertex_count() == 4);
    for (uint32_t v = 0; v < 4; ++v) CHECK(g2.neighbors(v).size() == 2); // the 4-cycle

    RookGraph r3(3);
    auto g3 = r3.to_simple();
    CHECK(g3.vertex_count() == 9);
    CHECK(g3.edge_count() == 18); // n^2 (n-1)
    for (uint32_t v = 0; v < 9; ++v) CHECK(g3.neighbors(v).size() == 4); // 2(n-1)

    for (uint32_t a = 0; a < 9; ++a) {
        CHECK(!r3.adjacent(r3.vertex(a), r3.vertex(a)));
        for (uint32_t b = 0; b < 9; ++b)
            CHECK(r3.adjacent(r3.vertex(a), r3.vertex(b)) ==
                  r3.adjacent(r3.vertex(b), r3.vertex(a)));
    }
}

TEST_CASE("sees") {
    CHECK(sees({1, 2}, {1, 5}));
    CHECK(sees({2, 3}, {5, 3}));
    CHECK(!sees({1, 2}, {3, 4}));
    CHECK_THROWS_AS(sees({2, 2}, {2, 2}), std::invalid_argument);
}

TEST_CASE("classify partitions the board") {
    RookGraph rook(3);
    auto c = make_config(rook, {{{1, 1}, 2}, {{1, 2}, 1}});
    auto p = classify(rook, c);
    CHECK(p.cops == std::vector<GridVertex>{{1, 1}});
    CHECK(p.citizens == std::vector<GridVertex>{{1, 2}});
    CHECK(p.robbers.size() == 7);

    auto empty = classify(rook, PebbleConfiguration(9));
    CHECK(empty.robbers.size() == 9);

    SplitMix64 rng(31);
    for (int iter = 0; iter < 50; ++iter) {
        auto rc = sample_configuration(9, rng.below(20), rng.next());
        auto part = classify(rook, rc);
        CHECK(part.cops.size() + part.citizens.size() + part.robbers.size() == 9);
    }
}

TEST_CASE("robocop and direct catch") {
    RookGraph rook(3);
    CHECK(has_robocop(make_config(rook, {{{2, 2}, 4}})));
    CHECK(!has_robocop(make_config(rook, {{{2, 2}, 3}})));
    CHECK(!has_robocop(PebbleConfiguration(9)));

    CHECK(direct_catch(rook, make_config(rook, {{{2, 2}, 1}}), {2, 2})); // root occupied
    CHECK(direct_catch(rook, make_config(rook, {{{2, 3}, 2}}), {2, 1})); // cop in root's row
    CHECK(!direct_catch(rook, make_config(rook, {{{2, 3}, 1}}), {2, 1})); // only a citizen
}

TEST_CASE("citizen components") {
    RookGraph rook(3);
    auto chain = make_config(rook, {{{1, 1}, 2}, {{1, 2}, 1}, {{3, 2}, 2}});
    auto comps = citizen_components(rook, chain);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size == 3);
    CHECK(comps[0].cop_count == 2);
    CHECK(has_police_component(rook, chain));

    RookGraph r2(2);
    auto diagonal = make_config(r2, {{{1, 1}, 2}, {{2, 2}, 2}});
    auto dcomps = citizen_components(r2, diagonal);
    REQUIRE(dcomps.size() == 2);
    CHECK(dcomps[0].cop_count == 1);
    CHECK(dcomps[1].cop_count == 1);
    CHECK(!has_police_component(r2, diagonal)); // sufficiency, not necessity
    CHECK(is_solvable_exact(r2.to_simple(), diagonal) == SolveStatus::Solvable);

    CHECK(citizen_components(rook, PebbleConfiguration(9)).empty());
    CHECK(!has_police_component(rook, make_config(rook, {{{2, 2}, 2}})));
}

TEST_CASE("component cop counts sum to |P|") {
    RookGraph rook(4);
    SplitMix64 rng(555);
    for (int iter = 0; iter < 200; ++iter) {
        auto c = sample_configuration(16, rng.below(30), rng.next());
        uint32_t cops = static_cast<uint32_t>(classify(rook, c).cops.size());
        uint32_t sum = 0;
        for (const auto& comp : citizen_components(rook, c)) sum += comp.cop_count;
        CHECK(sum == cops);
    }
}

TEST_CASE("catch_plan: the chain example") {
    RookGraph rook(3);
    auto chain = make_config(rook, {{{1, 1}, 2}, {{1, 2}, 1}, {{3, 2}, 2}});
    std::string tier;
    auto plan = catch_plan(rook, chain, {2, 3}, &tier);
    REQUIRE(plan.has_value());
    CHECK(tier == "police-component");
    CHECK(*plan == CatchPlan{{{1, 1}, {1, 3}}, {{3, 2}, {1, 2}}, {{1, 2}, {1, 3}}, {{1, 3}, {2, 3}}});
    auto final_cfg = replay_plan(rook, chain, *plan);
    CHECK(final_cfg.counts[rook.index({2, 3})] >= 1);
}

TEST_CASE("catch_plan: direct and robocop") {
    RookGraph rook(3);
    auto cop = make_config(rook, {{{2, 1}, 2}});
    auto plan = catch_plan(rook, cop, {2, 3});
    REQUIRE(plan.has_value());
    CHECK(plan->size() == 1);

    auto occupied = catch_plan(rook, make_config(rook, {{{2, 3}, 1}}), {2, 3});
    REQUIRE(occupied.has_value());
    CHECK(occupied->empty());

    auto robo = make_config(rook, {{{1, 1}, 4}});
    std::string tier;
    auto rplan = catch_plan(rook, robo, {2, 3}, &tier);
    REQUIRE(rplan.has_value());
    CHECK(tier == "robocop");
    CHECK(rplan->size() == 3);
    CHECK(replay_plan(rook, robo, *rplan).counts[rook.index({2, 3})] >= 1);

    CHECK(!catch_plan(rook, make_config(rook, {{{1, 1}, 1}}), {2, 3}).has_value());
}

TEST_CASE("catch_plan replay holds on random instances") {
    SplitMix64 rng(808);
    int replayed = 0;
    while (replayed < 400) {
        uint32_t n = 2 + static_cast<uint32_t>(rng.below(5));
        RookGraph rook(n);
        auto c = sample_configuration(rook.vertex_count(), rng.below(3 * n) + 1, rng.next());
        GridVertex root = rook.vertex(static_cast<uint32_t>(rng.below(rook.vertex_count())));
        auto plan = catch_plan(rook, c, root);
        if (!plan) continue;
        auto fin = replay_plan(rook, c, *plan); // throws on any illegal step
        CHECK(fin.counts[rook.index(root)] >= 1);
        ++replayed;
    }
}

TEST_CASE("tiered solver verdicts") {
    RookGraph rook(3);
    auto chain = make_config(rook, {{{1, 1}, 2}, {{1, 2}, 1}, {{3, 2}, 2}});
    CHECK(solvable_tiered(rook, chain).verdict == Verdict::Solvable);
    CHECK(solvable_tiered(rook, chain).tier == "police-component");

    auto lone = make_config(rook, {{{2, 2}, 1}});
    auto v = solvable_tiered(rook, lone);
    CHECK(v.verdict == Verdict::Unsolvable); // one pebble solves only its own vertex

    auto diag = make_config(rook, {{{1, 1}, 2}, {{2, 2}, 2}});
    auto vr = solvable_tiered(rook, diag, GridVertex{3, 3});
    CHECK(vr.verdict == Verdict::Unsolvable);
    CHECK(vr.tier == "exact");

    // degenerate n = 1
    RookGraph r1(1);
    CHECK(solvable_tiered(r1, PebbleConfiguration(1)).verdict == Verdict::Unsolvable);
    PebbleConfiguration one(1);
    one.counts[0] = 1;
    CHECK(solvable_tiered(r1, one).verdict == Verdict::Solvable);
}

TEST_CASE("tier sufficiency and certificates agree with the exact solver") {
    SplitMix64 rng(1234);
    for (int iter = 0; iter < 600; ++iter) {
        uint32_t n = 2 + static_cast<uint32_t>(rng.below(2)); // 2 or 3
        RookGraph rook(n);
        auto c = sample_configuration(rook.vertex_count(), rng.below(3 * n * n), rng.next());
        auto v = solvable_tiered(rook, c);
        auto exact = is_solvable_exact(rook.to_simple(), c);
        if (v.verdict == Verdict::Solvable) CHECK(exact == SolveStatus::Solvable);
        if (v.verdict == Verdict::Unsolvable) CHECK(exact == SolveStatus::Unsolvable);
    }
}

TEST_CASE("line graph of K_{n,n}") {
    CHECK(verify_line_graph_iso(2));
    CHECK(verify_line_graph_iso(3));
    CHECK(verify_line_graph_iso(7));
}

TEST_CASE("rook json round trip and verdict json") {
    RookGraph rook(3);
    auto c = make_config(rook, {{{1, 1}, 2}, {{3, 2}, 1}});
    auto j = rook_config_to_json(rook, c);
    RookGraph parsed(1);
    auto c2 = rook_config_from_json(j, parsed);
    CHECK(parsed.n() == 3);
    CHECK(c2 == c);

    auto v = solvable_tiered(rook, c, GridVertex{1, 3});
    auto vj = verdict_to_json(v);
    CHECK(vj["verdict"] == "solvable");
    CHECK(vj.contains("plan"));
}
