#pragma once

#include <cstdint>

#include "pdsm/core.hpp"

namespace pdsm {

// A problem partition: disjoint nonempty blocks of party indices covering
// 0..p-1, with at least two blocks and at least one block of size >= 2.
struct Partition {
    std::vector<std::vector<int>> blocks;

    // Sorts indices within each block, then blocks by smallest index.
    void canonicalize();

    friend bool operator==(const Partition&, const Partition&) = default;
};

// Checks the Partition invariants against a party count; violations name the
// block at fault.
ValidationReport check_partition(const Partition& partition, int parties);

// The instance restricted to one block's parties, ascending party order.
// Preference rows for parties outside the block are dropped.
Instance subproblem_instance(const Instance& base, const std::vector<int>& block);

// The only matching of a one-party block: n singleton families, family i
// holding member i.
Matching singleton_matching(int n);

// L'_F(G): the sum of rank(x, y) over all x in f, y in g. f and g must come
// from disjoint party sets of `base`. Exact 64-bit arithmetic; the largest
// possible value, n * p^2 / 4 summands of at most n each, is nowhere near
// overflow.
std::int64_t family_rank_sum(const Instance& base, const std::vector<ElementRef>& f,
                             const std::vector<ElementRef>& g);

// The coarser problem: one derived party per block, one derived member per
// block family, preferences by ascending rank sum.
struct ReducedInstance {
    Partition blocks;
    int base_parties = 0;
    Instance derived;
    // provenance[block][family] = that family's members in base coordinates,
    // ascending party order
    std::vector<std::vector<std::vector<ElementRef>>> provenance;
    // count of adjacent equal rank sums resolved by the family-index rule
    // while sorting derived rows
    int ties_broken = 0;
};

// Builds the reduced instance. block_matchings[i] is a matching over
// blocks[i]'s parties in ascending order (singleton_matching(n) for a
// one-party block). The derived row of family F for a foreign block sorts
// that block's families by ascending L'_F(G), equal sums broken by ascending
// family index; every tie so broken increments ties_broken. Derived party
// names join the block's party names with '+', derived member labels are
// "<party name>:<family index>".
ReducedInstance reduce(const Instance& base, const Partition& partition,
                       const std::vector<Matching>& block_matchings);

// Replaces each derived family by the union of the base families its members
// stand for. One level only; the result is canonical.
Matching expand(const Matching& reduced_matching, const ReducedInstance& reduced);

}  // namespace pdsm
