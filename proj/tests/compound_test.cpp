#include <cstdint>
#include <functional>

#include "doctest.h"
#include "helpers.hpp"
#include "pdsm/compound.hpp"
#include "pdsm/generator.hpp"
#include "pdsm/stability.hpp"
#include "quad_fixture.hpp"

using namespace pdsm;

TEST_CASE("zero levels is exactly the elemental run") {
    for (int p : {2, 3, 4})
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const Instance inst = generate({p, 3, seed, Profile::uniform});
            CompoundRecipe flat;
            flat.final_plan = path_plan(p);
            const CompoundRun c = run_compound(inst, flat);
            const ElementalRun e = run_elemental(inst, path_plan(p));
            CHECK(c.matching == e.matching);
            CHECK(c.total_rounds == e.total_rounds);
            CHECK(c.final_rounds == e.total_rounds);
            CHECK(c.levels.empty());
            CHECK(c.reductions.empty());
        }
}

TEST_CASE("one member per party leaves a single family") {
    const Instance inst = generate({4, 1, 0, Profile::uniform});
    const CompoundRun run =
        run_compound(inst, default_recipe(4, Strategy::balanced_bisection));
    REQUIRE(run.matching.families.size() == 1);
    CHECK(run.matching.families[0].member_indices() == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("the quad fixture runs the bisection exactly as derived by hand") {
    const Instance inst = testutil::quad();
    const CompoundRecipe recipe = default_recipe(4, Strategy::balanced_bisection);
    const CompoundRun run = run_compound(inst, recipe);

    CHECK(run.matching == testutil::matching_of({{0, 1, 1, 0}, {1, 0, 0, 1}}));
    CHECK(run.total_rounds == 5);
    CHECK(run.final_rounds == 1);
    REQUIRE(run.levels.size() == 1);
    CHECK(run.levels[0].parties_before == 4);
    CHECK(run.levels[0].parties_after == 2);
    CHECK(run.levels[0].rounds == 4);
    CHECK(run.levels[0].ties_broken == 0);
    REQUIRE(run.reductions.size() == 1);
    CHECK(run.reductions[0].derived.party_names() ==
          std::vector<std::string>{"A+B", "C+D"});
    CHECK(verify(inst, run.matching).stable);
}

TEST_CASE("default recipes have the documented shape") {
    const CompoundRecipe two = default_recipe(2, Strategy::balanced_bisection);
    CHECK(two.levels.empty());
    CHECK(two.final_plan == path_plan(2));

    const CompoundRecipe four = default_recipe(4, Strategy::balanced_bisection);
    REQUIRE(four.levels.size() == 1);
    CHECK(four.levels[0].partition == Partition{{{0, 1}, {2, 3}}});
    REQUIRE(four.levels[0].block_plans.size() == 2);
    CHECK(four.levels[0].block_plans[0] == path_plan(2));
    CHECK(four.final_plan == path_plan(2));

    const CompoundRecipe five = default_recipe(5, Strategy::balanced_bisection);
    REQUIRE(five.levels.size() == 1);
    CHECK(five.levels[0].partition == Partition{{{0, 1, 2}, {3, 4}}});
    CHECK(five.levels[0].block_plans[0] == path_plan(3));

    const CompoundRecipe path5 = default_recipe(5, Strategy::path);
    CHECK(path5.levels.empty());
    CHECK(path5.final_plan == path_plan(5));
}

TEST_CASE("a two-level recipe narrows five parties to two") {
    CompoundRecipe recipe;
    RecipeLevel first;
    first.partition = Partition{{{0, 1}, {2, 3}, {4}}};
    first.block_plans = {path_plan(2), path_plan(2)};
    RecipeLevel second;
    second.partition = Partition{{{0, 1}, {2}}};
    second.block_plans = {path_plan(2)};
    recipe.levels = {first, second};
    recipe.final_plan = path_plan(2);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Instance inst = generate({5, 2, seed, Profile::uniform});
        const CompoundRun run = run_compound(inst, recipe);
        REQUIRE(run.levels.size() == 2);
        CHECK(run.levels[0].parties_before == 5);
        CHECK(run.levels[0].parties_after == 3);
        CHECK(run.levels[1].parties_before == 3);
        CHECK(run.levels[1].parties_after == 2);
        CHECK(check_matching(inst, run.matching).ok());
        int ties = 0;
        for (const LevelStats& lv : run.levels) ties += lv.ties_broken;
        if (ties == 0) CHECK(verify(inst, run.matching).stable);
    }
}

TEST_CASE("two-level expansion composes the per-level expansions") {
    const std::uint64_t seed = 3;
    const Instance inst = generate({5, 2, seed, Profile::uniform});

    CompoundRecipe recipe;
    recipe.levels.resize(2);
    recipe.levels[0].partition = Partition{{{0, 1}, {2, 3}, {4}}};
    recipe.levels[0].block_plans = {path_plan(2), path_plan(2)};
    recipe.levels[1].partition = Partition{{{0, 1}, {2}}};
    recipe.levels[1].block_plans = {path_plan(2)};
    recipe.final_plan = path_plan(2);

    const CompoundRun run = run_compound(inst, recipe);
    REQUIRE(run.reductions.size() == 2);

    // replay the final run on the innermost reduced instance, then expand
    // through the recorded reductions by hand
    const Instance& innermost = run.reductions[1].derived;
    Matching m = run_elemental(innermost, recipe.final_plan).matching;
    m = expand(m, run.reductions[1]);
    m = expand(m, run.reductions[0]);
    CHECK(m == run.matching);
}

TEST_CASE("the quad fixture expands the same through two levels") {
    const Instance inst = testutil::quad();

    CompoundRecipe recipe;
    recipe.levels.resize(2);
    recipe.levels[0].partition = Partition{{{0, 1}, {2}, {3}}};
    recipe.levels[0].block_plans = {path_plan(2)};
    recipe.levels[1].partition = Partition{{{0, 1}, {2}}};
    recipe.levels[1].block_plans = {path_plan(2)};
    recipe.final_plan = path_plan(2);

    const CompoundRun run = run_compound(inst, recipe);
    REQUIRE(run.reductions.size() == 2);
    CHECK(check_matching(inst, run.matching).ok());

    Matching m = run_elemental(run.reductions[1].derived, recipe.final_plan).matching;
    m = expand(m, run.reductions[1]);
    m = expand(m, run.reductions[0]);
    CHECK(m == run.matching);
}

TEST_CASE("levels must strictly shrink the problem") {
    const Instance inst = generate({3, 2, 0, Profile::uniform});
    CompoundRecipe recipe;
    recipe.levels.resize(1);
    recipe.levels[0].partition = Partition{{{0, 1}, {2}}};
    recipe.levels[0].block_plans = {path_plan(2)};
    recipe.final_plan = path_plan(2);
    CHECK_NOTHROW(run_compound(inst, recipe));
}

TEST_CASE("structural faults name the level") {
    const Instance inst = generate({4, 2, 0, Profile::uniform});

    CompoundRecipe bad_partition;
    bad_partition.levels.resize(1);
    bad_partition.levels[0].partition = Partition{{{0, 1}, {2, 7}}};
    bad_partition.levels[0].block_plans = {path_plan(2), path_plan(2)};
    bad_partition.final_plan = path_plan(2);
    CHECK_THROWS_WITH_AS(run_compound(inst, bad_partition),
                         doctest::Contains("level 0:"), structure_error);

    CompoundRecipe missing_plan;
    missing_plan.levels.resize(1);
    missing_plan.levels[0].partition = Partition{{{0, 1}, {2, 3}}};
    missing_plan.levels[0].block_plans = {path_plan(2)};
    missing_plan.final_plan = path_plan(2);
    CHECK_THROWS_WITH_AS(run_compound(inst, missing_plan),
                         doctest::Contains("level 0:"), structure_error);

    CompoundRecipe wrong_block_plan;
    wrong_block_plan.levels.resize(1);
    wrong_block_plan.levels[0].partition = Partition{{{0, 1}, {2, 3}}};
    wrong_block_plan.levels[0].block_plans = {path_plan(2), path_plan(3)};
    wrong_block_plan.final_plan = path_plan(2);
    CHECK_THROWS_WITH_AS(run_compound(inst, wrong_block_plan),
                         doctest::Contains("level 0: block 1:"), structure_error);

    CompoundRecipe wrong_final;
    wrong_final.levels.resize(1);
    wrong_final.levels[0].partition = Partition{{{0, 1}, {2, 3}}};
    wrong_final.levels[0].block_plans = {path_plan(2), path_plan(2)};
    wrong_final.final_plan = path_plan(3);
    CHECK_THROWS_WITH_AS(run_compound(inst, wrong_final),
                         doctest::Contains("final plan:"), structure_error);
}

namespace {

// all partitions of 0..p-1 with >= 2 blocks, one of size >= 2
std::vector<Partition> one_level_partitions(int p) {
    std::vector<Partition> out;
    std::vector<int> assign(p, 0);
    const std::function<void(int, int)> rec = [&](int i, int maxb) {
        if (i == p) {
            const int blocks = maxb + 1;
            if (blocks < 2 || blocks == p) return;
            Partition part;
            part.blocks.resize(blocks);
            for (int q = 0; q < p; ++q) part.blocks[assign[q]].push_back(q);
            out.push_back(std::move(part));
            return;
        }
        for (int b = 0; b <= maxb + 1; ++b) {
            assign[i] = b;
            rec(i + 1, std::max(maxb, b));
        }
    };
    rec(0, -1);
    return out;
}

}  // namespace

TEST_CASE("every one-level recipe with path blocks is stable when tie-free") {
    int tie_free = 0;
    for (int p : {3, 4}) {
        const auto partitions = one_level_partitions(p);
        CHECK(partitions.size() == (p == 3 ? 3 : 13));
        for (int n : {2, 3})
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                const Instance inst = generate({p, n, seed, Profile::uniform});
                for (const Partition& part : partitions) {
                    CompoundRecipe recipe;
                    RecipeLevel level;
                    level.partition = part;
                    for (const auto& block : part.blocks)
                        if (block.size() >= 2)
                            level.block_plans.push_back(
                                path_plan(static_cast<int>(block.size())));
                    recipe.levels.push_back(std::move(level));
                    recipe.final_plan = path_plan(static_cast<int>(part.blocks.size()));
                    const CompoundRun run = run_compound(inst, recipe);
                    CHECK(check_matching(inst, run.matching).ok());
                    int ties = 0;
                    for (const LevelStats& lv : run.levels) ties += lv.ties_broken;
                    if (ties == 0) {
                        ++tie_free;
                        CHECK(verify(inst, run.matching).stable);
                    }
                }
            }
    }
    CHECK(tie_free >= 50);
}

TEST_CASE("one-level runs on random instances stay inside the model") {
    int tied = 0, tie_free = 0;
    for (int n : {2, 3})
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const Instance inst = generate({3, n, seed, Profile::uniform});
            const CompoundRun run =
                run_compound(inst, default_recipe(3, Strategy::balanced_bisection));
            CHECK(check_matching(inst, run.matching).ok());
            int ties = 0;
            for (const LevelStats& lv : run.levels) ties += lv.ties_broken;
            if (ties > 0) {
                ++tied;
            } else {
                ++tie_free;
                CHECK(verify(inst, run.matching).stable);
            }
        }
    // rank-sum ties are common at this size but not universal
    CHECK(tied >= 1);
    CHECK(tie_free >= 1);
}
