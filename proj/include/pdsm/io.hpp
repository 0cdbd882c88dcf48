#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdsm/compound.hpp"
#include "pdsm/core.hpp"
#include "pdsm/elemental.hpp"

namespace pdsm {

// Instance document:
//   {"parties": [{"name": str, "members": [str x n]} x p],
//    "prefs": {member_label: {party_name: [member_label x n]}}}
// Party and member order are significant; labels are unique community-wide.
// Malformed or label-dangling text raises parse_error; a well-formed
// document describing an invalid instance raises validation_error.
Instance read_instance(const std::string& text);
std::string write_instance(const Instance& instance);

// Matching document: {"families": [[member_label x p] x n]}, members in
// party order. Family order is preserved.
Matching read_matching(const Instance& instance, const std::string& text);
std::string write_matching(const Instance& instance, const Matching& matching);

// Plan document: {"edges": [[proposer, responder] x (p-1)]}; p is the edge
// count plus one.
ElementalPlan read_plan(const std::string& text);
std::string write_plan(const ElementalPlan& plan);

// Shorthand "prufer:<a,b,..>/orient:<mask>", empty sequence for p=2.
ElementalPlan parse_plan_shorthand(const std::string& text);
std::string plan_shorthand(const std::vector<int>& sequence, std::uint64_t orientation);

// Recipe document:
//   {"levels": [{"blocks": [[party index, ...], ...],
//                "block_plans": [{"edges": [...]} per block of size >= 2]}, ...],
//    "final_plan": {"edges": [...]}}
CompoundRecipe read_recipe(const std::string& text);
std::string write_recipe(const CompoundRecipe& recipe);

}  // namespace pdsm
