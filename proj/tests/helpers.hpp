#pragma once

#include <string>
#include <vector>

#include "pdsm/core.hpp"

namespace testutil {

// Tiny instance with default labels: parties "P0".., members "P0M0"..
// prefs[party][member][target_party] must be fully specified (own-party rows
// empty).
inline pdsm::Instance make(int p, int n, pdsm::PrefTable prefs) {
    std::vector<std::string> party_names;
    std::vector<std::vector<std::string>> member_names;
    for (int a = 0; a < p; ++a) {
        party_names.push_back("P" + std::to_string(a));
        std::vector<std::string> labels;
        for (int m = 0; m < n; ++m)
            labels.push_back(party_names.back() + "M" + std::to_string(m));
        member_names.push_back(std::move(labels));
    }
    return pdsm::Instance(std::move(party_names), std::move(member_names), std::move(prefs));
}

// Two-party instance from explicit rows, proposer party 0.
inline pdsm::Instance duo(std::vector<pdsm::PrefRow> proposer_rows,
                          std::vector<pdsm::PrefRow> responder_rows) {
    const int n = static_cast<int>(proposer_rows.size());
    pdsm::PrefTable prefs(2);
    prefs[0].resize(n);
    prefs[1].resize(n);
    for (int m = 0; m < n; ++m) {
        prefs[0][m] = {pdsm::PrefRow{}, proposer_rows[m]};
        prefs[1][m] = {responder_rows[m], pdsm::PrefRow{}};
    }
    return make(2, n, std::move(prefs));
}

inline pdsm::Matching matching_of(std::vector<std::vector<int>> families) {
    pdsm::Matching m;
    for (auto& f : families) m.families.emplace_back(std::move(f));
    return m;
}

// The matching a 2-party bijection induces, in proposer order.
inline pdsm::Matching lift(const std::vector<int>& partner_of_proposer) {
    pdsm::Matching m;
    for (size_t i = 0; i < partner_of_proposer.size(); ++i)
        m.families.emplace_back(
            std::vector<int>{static_cast<int>(i), partner_of_proposer[i]});
    return m;
}

}  // namespace testutil
