#include "pdsm/gale_shapley.hpp"

#include <utility>

namespace pdsm {

std::vector<int> Bijection::inverse() const {
    std::vector<int> inv(partner_of_proposer.size(), -1);
    for (size_t m = 0; m < partner_of_proposer.size(); ++m)
        inv[partner_of_proposer[m]] = static_cast<int>(m);
    return inv;
}

Bijection gs(const Instance& inst, int proposer_party, int responder_party) {
    if (proposer_party == responder_party)
        throw std::invalid_argument("gs: proposer and responder must be distinct parties");
    const int n = inst.size();

    std::vector<int> cursor(n, 0);       // next row position each proposer will try
    std::vector<int> holder(n, -1);      // responder member -> proposer member held
    std::vector<int> engaged_to(n, -1);  // proposer member -> responder member
    int free_count = n;
    int rounds = 0;

    std::vector<std::pair<int, int>> proposals;
    proposals.reserve(n);
    while (free_count > 0) {
        ++rounds;
        // snapshot this round's proposers; anyone displaced below waits for
        // the next round
        proposals.clear();
        for (int m = 0; m < n; ++m) {
            if (engaged_to[m] != -1) continue;
            if (cursor[m] >= n)
                throw std::logic_error("gs: proposer exhausted its list; instance is not valid");
            proposals.emplace_back(m, inst.row({proposer_party, m}, responder_party)[cursor[m]++]);
        }

        for (auto [m, w] : proposals) {
            const int held = holder[w];
            if (held != -1 &&
                inst.rank({responder_party, w}, {proposer_party, held}) <
                    inst.rank({responder_party, w}, {proposer_party, m}))
                continue;  // responder keeps the better suitor
            if (held != -1) {
                engaged_to[held] = -1;
                ++free_count;
            }
            holder[w] = m;
            engaged_to[m] = w;
            --free_count;
        }
    }

    if (rounds > gs_round_bound(n))
        throw std::logic_error("gs: exceeded the round bound " +
                               std::to_string(gs_round_bound(n)) + " with " +
                               std::to_string(rounds) + " rounds");

    Bijection out;
    out.proposer_party = proposer_party;
    out.responder_party = responder_party;
    out.partner_of_proposer = std::move(engaged_to);
    out.rounds_used = rounds;
    return out;
}

bool is_stable_2party(const Instance& inst, const Bijection& b) {
    const int n = inst.size();
    const int P = b.proposer_party;
    const int Q = b.responder_party;
    const std::vector<int> partner_of_responder = b.inverse();
    for (int m = 0; m < n; ++m) {
        const ElementRef x{P, m};
        const int cur = b.partner_of_proposer[m];
        for (int w = 0; w < n; ++w) {
            if (w == cur) continue;
            const ElementRef y{Q, w};
            if (inst.rank(x, y) < inst.rank(x, {Q, cur}) &&
                inst.rank(y, x) < inst.rank(y, {P, partner_of_responder[w]}))
                return false;
        }
    }
    return true;
}

}  // namespace pdsm
