#pragma once

#include "pdsm/core.hpp"
#include "pdsm/elemental.hpp"
#include "pdsm/reduction.hpp"

namespace pdsm {

// One partition step: the partition of the current problem's parties plus
// one elemental plan per block of size >= 2, in block order. One-party
// blocks need no plan.
struct RecipeLevel {
    Partition partition;
    std::vector<ElementalPlan> block_plans;

    friend bool operator==(const RecipeLevel&, const RecipeLevel&) = default;
};

// Every choice a compound run makes, reified: the sequence of partition
// levels and the elemental plan for the final reduced problem. Zero levels
// degenerates to a plain elemental run of final_plan.
struct CompoundRecipe {
    std::vector<RecipeLevel> levels;
    ElementalPlan final_plan;

    friend bool operator==(const CompoundRecipe&, const CompoundRecipe&) = default;
};

struct LevelStats {
    int parties_before = 0;
    int parties_after = 0;
    int rounds = 0;       // deferred-acceptance rounds over the level's blocks
    int ties_broken = 0;  // rank-sum ties hit while building the reduced rows
};

struct CompoundRun {
    Matching matching;
    int total_rounds = 0;  // every deferred-acceptance round, final run included
    int final_rounds = 0;
    std::vector<LevelStats> levels;
    // the reduced problem each level produced, in level order
    std::vector<ReducedInstance> reductions;
};

// Executes the recipe: per level, solve each block elementally (one-party
// blocks become singleton families), reduce to the coarser problem; then run
// final_plan on the last reduced problem and expand back out, one level at a
// time in reverse. Structural mismatches raise structure_error naming the
// level at fault.
CompoundRun run_compound(const Instance& instance, const CompoundRecipe& recipe);

enum class Strategy { path, balanced_bisection };

// path: zero levels, final_plan = the path tree over all parties.
// balanced_bisection: for p >= 3, one level splitting the parties into two
// halves (left half gets the extra party when p is odd), path trees inside
// each block, then the single final edge; p = 2 degenerates to path.
CompoundRecipe default_recipe(int parties, Strategy strategy);

}  // namespace pdsm
