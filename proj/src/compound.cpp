#include "pdsm/compound.hpp"

#include <numeric>
#include <string>

namespace pdsm {

CompoundRun run_compound(const Instance& instance, const CompoundRecipe& recipe) {
    CompoundRun run;
    std::vector<ReducedInstance>& stack = run.reductions;
    stack.reserve(recipe.levels.size());
    const Instance* cur = &instance;

    for (size_t k = 0; k < recipe.levels.size(); ++k) {
        const RecipeLevel& level = recipe.levels[k];
        const std::string where = "level " + std::to_string(k) + ": ";

        const auto prep = check_partition(level.partition, cur->parties());
        if (!prep.ok()) throw structure_error(where + "invalid partition: " + prep.to_string());

        size_t large_blocks = 0;
        for (const auto& block : level.partition.blocks)
            if (block.size() >= 2) ++large_blocks;
        if (level.block_plans.size() != large_blocks)
            throw structure_error(where + "partition has " + std::to_string(large_blocks) +
                                  " blocks of size >= 2 but " +
                                  std::to_string(level.block_plans.size()) + " block plans");

        LevelStats stats;
        stats.parties_before = cur->parties();

        std::vector<Matching> block_matchings;
        size_t plan_idx = 0;
        for (size_t b = 0; b < level.partition.blocks.size(); ++b) {
            const auto& block = level.partition.blocks[b];
            if (block.size() < 2) {
                block_matchings.push_back(singleton_matching(cur->size()));
                continue;
            }
            const Instance sub = subproblem_instance(*cur, block);
            try {
                ElementalRun er = run_elemental(sub, level.block_plans[plan_idx++]);
                stats.rounds += er.total_rounds;
                block_matchings.push_back(std::move(er.matching));
            } catch (const structure_error& e) {
                throw structure_error(where + "block " + std::to_string(b) + ": " + e.what());
            }
        }

        stack.push_back(reduce(*cur, level.partition, block_matchings));
        stats.ties_broken = stack.back().ties_broken;
        stats.parties_after = stack.back().derived.parties();
        if (stats.parties_after >= stats.parties_before)
            throw std::logic_error(where + "reduction did not decrease the party count");
        run.total_rounds += stats.rounds;
        run.levels.push_back(stats);
        cur = &stack.back().derived;
    }

    ElementalRun final_run;
    try {
        final_run = run_elemental(*cur, recipe.final_plan);
    } catch (const structure_error& e) {
        throw structure_error("final plan: " + std::string(e.what()));
    }
    run.final_rounds = final_run.total_rounds;
    run.total_rounds += final_run.total_rounds;
    run.matching = std::move(final_run.matching);

    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
        run.matching = expand(run.matching, *it);
    return run;
}

CompoundRecipe default_recipe(int parties, Strategy strategy) {
    if (parties < 2) throw structure_error("a recipe needs at least 2 parties");
    CompoundRecipe recipe;
    if (strategy == Strategy::path || parties == 2) {
        recipe.final_plan = path_plan(parties);
        return recipe;
    }
    const int left = (parties + 1) / 2;
    RecipeLevel level;
    std::vector<int> a(left), b(parties - left);
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), left);
    level.partition.blocks = {std::move(a), std::move(b)};
    level.block_plans.push_back(path_plan(left));
    if (parties - left >= 2) level.block_plans.push_back(path_plan(parties - left));
    recipe.levels.push_back(std::move(level));
    recipe.final_plan = path_plan(2);
    return recipe;
}

}  // namespace pdsm
