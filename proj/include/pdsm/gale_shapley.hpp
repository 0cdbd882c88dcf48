#pragma once

#include "pdsm/core.hpp"

namespace pdsm {

// Outcome of one deferred-acceptance run between two parties.
struct Bijection {
    int proposer_party = 0;
    int responder_party = 0;
    // proposer member index -> responder member index
    std::vector<int> partner_of_proposer;
    int rounds_used = 0;

    int partner_of(int proposer_member) const { return partner_of_proposer[proposer_member]; }
    std::vector<int> inverse() const;

    friend bool operator==(const Bijection&, const Bijection&) = default;
};

// Worst-case number of proposal rounds for party size n.
constexpr int gs_round_bound(int n) { return n * n - 2 * n + 2; }

// Deferred acceptance between two parties of the instance, ignoring all
// others. One round is a batch in which every currently free proposer
// proposes to the next entry on its list and responders keep their best
// suitor so far. The result is proposer-optimal among the stable bijections
// and deterministic. Throws std::invalid_argument on a same-party request;
// exceeding the round bound would be a solver bug and throws std::logic_error.
Bijection gs(const Instance& instance, int proposer_party, int responder_party);

// True iff no cross pair strictly prefers each other over their current
// partners. O(n^2) scan over all pairs.
bool is_stable_2party(const Instance& instance, const Bijection& pairing);

}  // namespace pdsm
