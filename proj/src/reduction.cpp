#include "pdsm/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace pdsm {

void Partition::canonicalize() {
    for (auto& block : blocks) std::sort(block.begin(), block.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.front() < b.front();
              });
}

ValidationReport check_partition(const Partition& partition, int parties) {
    ValidationReport rep;
    if (partition.blocks.size() < 2) {
        rep.violations.push_back("partition must have at least 2 blocks, got " +
                                 std::to_string(partition.blocks.size()));
    }
    std::vector<int> seen(parties, 0);
    bool any_large = false;
    for (size_t b = 0; b < partition.blocks.size(); ++b) {
        const auto& block = partition.blocks[b];
        if (block.empty()) {
            rep.violations.push_back("block " + std::to_string(b) + " is empty");
            continue;
        }
        if (block.size() >= 2) any_large = true;
        for (int q : block) {
            if (q < 0 || q >= parties) {
                rep.violations.push_back("block " + std::to_string(b) + ": party index " +
                                         std::to_string(q) + " out of range for p=" +
                                         std::to_string(parties));
            } else if (++seen[q] > 1) {
                rep.violations.push_back("party " + std::to_string(q) +
                                         " appears in more than one block");
            }
        }
    }
    for (int q = 0; q < parties; ++q)
        if (seen[q] == 0)
            rep.violations.push_back("party " + std::to_string(q) + " is in no block");
    if (!any_large && !partition.blocks.empty())
        rep.violations.push_back("at least one block must have 2 or more parties");
    return rep;
}

Instance subproblem_instance(const Instance& base, const std::vector<int>& block) {
    const int n = base.size();
    std::vector<std::string> party_names;
    std::vector<std::vector<std::string>> member_names;
    for (int q : block) {
        party_names.push_back(base.party_name(q));
        member_names.push_back(base.member_names(q));
    }
    const int bp = static_cast<int>(block.size());
    PrefTable prefs(bp);
    for (int a = 0; a < bp; ++a) {
        prefs[a].resize(n);
        for (int m = 0; m < n; ++m) {
            prefs[a][m].resize(bp);
            for (int b = 0; b < bp; ++b) {
                if (b == a) continue;
                prefs[a][m][b] = base.row({block[a], m}, block[b]);
            }
        }
    }
    return Instance(std::move(party_names), std::move(member_names), std::move(prefs));
}

Matching singleton_matching(int n) {
    Matching m;
    m.families.reserve(n);
    for (int i = 0; i < n; ++i) m.families.emplace_back(std::vector<int>{i});
    return m;
}

std::int64_t family_rank_sum(const Instance& base, const std::vector<ElementRef>& f,
                             const std::vector<ElementRef>& g) {
    std::int64_t sum = 0;
    for (ElementRef x : f)
        for (ElementRef y : g) sum += base.rank(x, y);
    return sum;
}

namespace {

std::string block_name(const Instance& base, const std::vector<int>& block) {
    std::string name;
    for (size_t i = 0; i < block.size(); ++i) {
        if (i) name += '+';
        name += base.party_name(block[i]);
    }
    return name;
}

}  // namespace

ReducedInstance reduce(const Instance& base, const Partition& partition,
                       const std::vector<Matching>& block_matchings) {
    const auto prep = check_partition(partition, base.parties());
    if (!prep.ok()) throw structure_error("invalid partition: " + prep.to_string());
    const size_t nblocks = partition.blocks.size();
    if (block_matchings.size() != nblocks)
        throw structure_error("expected " + std::to_string(nblocks) +
                              " block matchings, got " + std::to_string(block_matchings.size()));

    const int n = base.size();

    ReducedInstance red;
    red.blocks = partition;
    red.base_parties = base.parties();
    red.provenance.resize(nblocks);
    for (size_t b = 0; b < nblocks; ++b) {
        const auto& block = partition.blocks[b];
        const Matching& bm = block_matchings[b];
        const int bp = static_cast<int>(block.size());
        if (static_cast<int>(bm.families.size()) != n)
            throw structure_error("block " + std::to_string(b) + ": matching has " +
                                  std::to_string(bm.families.size()) + " families, expected " +
                                  std::to_string(n));
        std::vector<std::set<int>> used(bp);
        red.provenance[b].resize(n);
        for (int i = 0; i < n; ++i) {
            const Family& fam = bm.families[i];
            if (fam.parties() != bp)
                throw structure_error("block " + std::to_string(b) + ": family " +
                                      std::to_string(i) + " spans " +
                                      std::to_string(fam.parties()) + " parties, expected " +
                                      std::to_string(bp));
            for (int a = 0; a < bp; ++a) {
                const int m = fam.member_index(a);
                if (m < 0 || m >= n || !used[a].insert(m).second)
                    throw structure_error("block " + std::to_string(b) +
                                          ": matching is not a partition of the block");
                red.provenance[b][i].push_back({block[a], m});
            }
        }
    }

    // scores[b][i][c][j] = L' of block b's family i against block c's family j
    std::vector<std::string> party_names;
    std::vector<std::vector<std::string>> member_names;
    for (size_t b = 0; b < nblocks; ++b) {
        party_names.push_back(block_name(base, partition.blocks[b]));
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i)
            labels.push_back(party_names.back() + ":" + std::to_string(i));
        member_names.push_back(std::move(labels));
    }

    PrefTable prefs(nblocks);
    for (size_t b = 0; b < nblocks; ++b) {
        prefs[b].resize(n);
        for (int i = 0; i < n; ++i) {
            prefs[b][i].resize(nblocks);
            for (size_t c = 0; c < nblocks; ++c) {
                if (c == b) continue;
                std::vector<std::int64_t> score(n);
                for (int j = 0; j < n; ++j)
                    score[j] = family_rank_sum(base, red.provenance[b][i], red.provenance[c][j]);
                std::vector<int> order(n);
                std::iota(order.begin(), order.end(), 0);
                // stable sort keeps ascending family index on equal sums
                std::stable_sort(order.begin(), order.end(),
                                 [&](int u, int v) { return score[u] < score[v]; });
                for (int j = 0; j + 1 < n; ++j)
                    if (score[order[j]] == score[order[j + 1]]) ++red.ties_broken;
                prefs[b][i][c] = std::move(order);
            }
        }
    }

    red.derived = Instance(std::move(party_names), std::move(member_names), std::move(prefs));
    return red;
}

Matching expand(const Matching& reduced_matching, const ReducedInstance& reduced) {
    const size_t nblocks = reduced.blocks.blocks.size();
    const int n = reduced.derived.size();
    if (static_cast<int>(reduced_matching.families.size()) != n)
        throw structure_error("expand: matching has " +
                              std::to_string(reduced_matching.families.size()) +
                              " families, expected " + std::to_string(n));
    Matching out;
    out.families.reserve(n);
    for (const Family& df : reduced_matching.families) {
        if (df.parties() != static_cast<int>(nblocks))
            throw structure_error("expand: family spans " + std::to_string(df.parties()) +
                                  " parties, expected " + std::to_string(nblocks));
        std::vector<int> members(reduced.base_parties, -1);
        for (size_t b = 0; b < nblocks; ++b) {
            const int idx = df.member_index(static_cast<int>(b));
            if (idx < 0 || idx >= n)
                throw structure_error("expand: family index " + std::to_string(idx) +
                                      " out of range in block " + std::to_string(b));
            for (ElementRef x : reduced.provenance[b][idx]) members[x.party] = x.member;
        }
        for (int q = 0; q < reduced.base_parties; ++q)
            if (members[q] < 0)
                throw structure_error("expand: party " + std::to_string(q) +
                                      " is not covered by the provenance");
        out.families.emplace_back(std::move(members));
    }
    out.canonicalize();
    return out;
}

}  // namespace pdsm
