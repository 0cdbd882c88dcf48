#pragma once

#include <cstdint>

#include "pdsm/core.hpp"

namespace pdsm {

struct BlockingReport {
    bool stable = true;
    std::vector<Family> witnesses;  // possibly truncated at the witness cap
    std::uint64_t candidates_checked = 0;
};

struct VerifyOptions {
    std::uint64_t max_candidates = 10'000'000;  // guard on n^p
    int witness_cap = 10;                       // truncates witnesses, never the verdict
    int jobs = 1;
};

// A candidate family blocks the matching iff every member weakly prefers
// every other member to its current relative from that member's party, and
// every member has at least one strict improvement. Throws when the
// candidate is already a family of the matching.
bool is_blocking(const Instance& instance, const Matching& matching, const Family& candidate);

// Exhaustive blocking-family search over all n^p member combinations,
// skipping existing families. The scan stops early only once the witness
// cap is full; the verdict is decided at the first witness either way.
// Throws guard_error when n^p exceeds the guard.
BlockingReport verify(const Instance& instance, const Matching& matching,
                      const VerifyOptions& options = {});

// Random-candidate spot check: draws `samples` candidate families from a
// seeded generator and reports any blockers found. Finding none proves
// nothing; this is a convenience for instances too large to scan.
BlockingReport verify_sample(const Instance& instance, const Matching& matching,
                             std::uint64_t samples, std::uint64_t seed,
                             int witness_cap = 10);

struct EnumerateOptions {
    std::uint64_t max_matchings = 1'000'000;  // guard on (n!)^(p-1)
};

// All stable matchings of the instance, by exhaustive enumeration: party 0
// is fixed in member order and every combination of permutations of the
// other parties is screened through verify. Deterministic order; party 1
// varies slowest, the last party fastest.
std::vector<Matching> enumerate_stable(const Instance& instance,
                                       const EnumerateOptions& options = {});

}  // namespace pdsm
