#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pdsm/core.hpp"

namespace pdsm {

enum class Profile {
    uniform,      // independent uniform random permutation per row
    aligned,      // element i ranks foreign member i first, then i+1, ... (wrapping)
    adversarial,  // parity rows that force rank-sum collisions in reduced problems
};

std::string_view profile_name(Profile profile);
std::optional<Profile> profile_from_name(std::string_view name);

struct GenSpec {
    int p = 2;
    int n = 1;
    std::uint64_t seed = 0;
    Profile profile = Profile::uniform;
};

// Builds an instance with parties "P0".."P<p-1>" and members "P0M0" style.
// Deterministic per (seed, p, n, profile). aligned and adversarial ignore
// the seed entirely.
//
// aligned rows make every elemental run resolve to the diagonal matching in
// one round per edge: member i's first choice is foreign member i, mutually.
// adversarial rows depend only on the owning party's parity (even: index
// order, odd: reversed), which makes block rank sums collide, exercising the
// reduce tie-break.
Instance generate(const GenSpec& spec);

}  // namespace pdsm
