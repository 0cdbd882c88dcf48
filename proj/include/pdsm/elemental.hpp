#pragma once

#include "pdsm/core.hpp"
#include "pdsm/gale_shapley.hpp"
#include "pdsm/trees.hpp"

namespace pdsm {

// The identity of an elemental algorithm: which party proposes to which,
// with the edges forming a directed spanning tree over the parties.
struct ElementalPlan {
    DirectedTree tree;

    friend bool operator==(const ElementalPlan&, const ElementalPlan&) = default;
};

ElementalPlan path_plan(int p);  // 0 -> 1 -> ... -> p-1
ElementalPlan star_plan(int p);  // 0 -> i for every other i

struct ElementalRun {
    Matching matching;
    std::vector<Bijection> per_edge;  // plan edge order
    int total_rounds = 0;
};

// Runs one deferred-acceptance pass per tree edge in the edge's stated
// direction, then reads families off the composed bijections: the family of
// each party-0 member collects the unique element of every other party
// reached along tree paths. The result does not depend on edge order, only
// on the directed tree. Total rounds are bounded by (p-1)(n^2-2n+2).
ElementalRun run_elemental(const Instance& instance, const ElementalPlan& plan);

}  // namespace pdsm
