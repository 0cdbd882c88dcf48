#include "pdsm/stability.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace pdsm {

namespace {

// family_of[party][member] = family index in the matching
std::vector<std::vector<int>> index_families(const Instance& inst, const Matching& m) {
    std::vector<std::vector<int>> family_of(inst.parties(), std::vector<int>(inst.size(), -1));
    for (size_t f = 0; f < m.families.size(); ++f)
        for (int a = 0; a < m.families[f].parties(); ++a)
            family_of[a][m.families[f].member_index(a)] = static_cast<int>(f);
    return family_of;
}

bool blocking_with_index(const Instance& inst, const Matching& m,
                         const std::vector<std::vector<int>>& family_of, const Family& f) {
    const int p = inst.parties();
    // every member weakly prefers every other member to its current relative
    // from that member's party
    for (int yp = 0; yp < p; ++yp) {
        const ElementRef y = f.at(yp);
        const Family& fam_y = m.families[family_of[yp][y.member]];
        for (int xp = 0; xp < p; ++xp) {
            if (xp == yp) continue;
            const ElementRef x = f.at(xp);
            if (inst.rank(y, x) > inst.rank(y, fam_y.at(xp))) return false;
        }
    }
    // every member improves strictly on at least one relative
    for (int xp = 0; xp < p; ++xp) {
        const ElementRef x = f.at(xp);
        const Family& fam_x = m.families[family_of[xp][x.member]];
        bool strict = false;
        for (int zp = 0; zp < p && !strict; ++zp) {
            if (zp == xp) continue;
            strict = inst.rank(x, f.at(zp)) < inst.rank(x, fam_x.at(zp));
        }
        if (!strict) return false;
    }
    return true;
}

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

struct SliceResult {
    bool found = false;
    std::uint64_t checked = 0;
    std::vector<Family> witnesses;
};

// Scans all candidates whose party-0 member equals `slice`, in odometer
// order over the remaining parties.
SliceResult scan_slice(const Instance& inst, const Matching& m,
                       const std::vector<std::vector<int>>& family_of,
                       const std::set<std::vector<int>>& existing, int slice, int cap) {
    const int p = inst.parties();
    const int n = inst.size();
    SliceResult res;
    std::vector<int> digits(p, 0);
    digits[0] = slice;
    for (;;) {
        if (!existing.count(digits)) {
            Family candidate(digits);
            ++res.checked;
            if (blocking_with_index(inst, m, family_of, candidate)) {
                res.found = true;
                if (static_cast<int>(res.witnesses.size()) < cap)
                    res.witnesses.push_back(candidate);
                if (static_cast<int>(res.witnesses.size()) >= cap) return res;
            }
        }
        // advance the odometer; party 0 stays fixed to this slice
        int i = p - 1;
        while (i >= 1 && digits[i] == n - 1) digits[i--] = 0;
        if (i < 1) break;
        ++digits[i];
    }
    return res;
}

}  // namespace

bool is_blocking(const Instance& inst, const Matching& m, const Family& candidate) {
    const auto family_of = index_families(inst, m);
    for (const Family& fam : m.families)
        if (fam == candidate)
            throw std::invalid_argument(
                "is_blocking: the candidate is already a family of the matching");
    return blocking_with_index(inst, m, family_of, candidate);
}

BlockingReport verify(const Instance& inst, const Matching& m, const VerifyOptions& opt) {
    const auto mrep = check_matching(inst, m);
    if (!mrep.ok()) throw validation_error("verify: invalid matching: " + mrep.to_string());

    const int p = inst.parties();
    const int n = inst.size();
    const std::uint64_t space = checked_pow(n, p, opt.max_candidates);
    if (space > opt.max_candidates)
        throw guard_error("verify: candidate space n^p exceeds the guard " +
                          std::to_string(opt.max_candidates) +
                          "; raise --max-candidates or use sampling");

    const auto family_of = index_families(inst, m);
    std::set<std::vector<int>> existing;
    for (const Family& fam : m.families) existing.insert(fam.member_indices());

    BlockingReport rep;
    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        for (int slice = 0; slice < n; ++slice) {
            SliceResult res = scan_slice(inst, m, family_of, existing, slice,
                                         opt.witness_cap - static_cast<int>(rep.witnesses.size()));
            rep.candidates_checked += res.checked;
            if (res.found) rep.stable = false;
            for (auto& w : res.witnesses) rep.witnesses.push_back(std::move(w));
            if (static_cast<int>(rep.witnesses.size()) >= opt.witness_cap) break;
        }
        return rep;
    }

    // one task per party-0 member; results merge in slice order, so the
    // verdict and witness set do not depend on thread scheduling
    std::vector<SliceResult> results(n);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int slice = next.fetch_add(1);
            if (slice >= n) return;
            results[slice] =
                scan_slice(inst, m, family_of, existing, slice, opt.witness_cap);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const SliceResult& res : results) {
        rep.candidates_checked += res.checked;
        if (res.found) rep.stable = false;
        for (const Family& w : res.witnesses)
            if (static_cast<int>(rep.witnesses.size()) < opt.witness_cap)
                rep.witnesses.push_back(w);
    }
    return rep;
}

BlockingReport verify_sample(const Instance& inst, const Matching& m, std::uint64_t samples,
                             std::uint64_t seed, int witness_cap) {
    const auto mrep = check_matching(inst, m);
    if (!mrep.ok()) throw validation_error("verify: invalid matching: " + mrep.to_string());
    const int p = inst.parties();
    const int n = inst.size();
    const auto family_of = index_families(inst, m);
    std::set<std::vector<int>> existing;
    for (const Family& fam : m.families) existing.insert(fam.member_indices());

    std::mt19937_64 rng(seed);
    BlockingReport rep;
    std::vector<int> digits(p);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (int a = 0; a < p; ++a) digits[a] = static_cast<int>(rng() % n);
        if (existing.count(digits)) continue;
        ++rep.candidates_checked;
        Family candidate(digits);
        if (blocking_with_index(inst, m, family_of, candidate)) {
            rep.stable = false;
            if (static_cast<int>(rep.witnesses.size()) < witness_cap)
                rep.witnesses.push_back(std::move(candidate));
        }
    }
    return rep;
}

std::vector<Matching> enumerate_stable(const Instance& inst, const EnumerateOptions& opt) {
    const int p = inst.parties();
    const int n = inst.size();

    std::uint64_t factorial = 1;
    for (int i = 2; i <= n; ++i) {
        factorial *= i;
        if (factorial > opt.max_matchings) break;
    }
    if (checked_pow(factorial, p - 1, opt.max_matchings) > opt.max_matchings)
        throw guard_error("enumerate_stable: (n!)^(p-1) exceeds the guard " +
                          std::to_string(opt.max_matchings));

    std::vector<std::vector<int>> perms;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    VerifyOptions vopt;
    vopt.witness_cap = 1;

    std::vector<Matching> stable;
    // odometer over permutation choices; party 1 is the most significant digit
    std::vector<size_t> choice(p, 0);
    for (;;) {
        Matching m;
        m.families.reserve(n);
        for (int j = 0; j < n; ++j) {
            std::vector<int> members(p);
            members[0] = j;
            for (int q = 1; q < p; ++q) members[q] = perms[choice[q]][j];
            m.families.emplace_back(std::move(members));
        }
        if (verify(inst, m, vopt).stable) stable.push_back(std::move(m));

        int q = p - 1;
        while (q >= 1 && choice[q] == perms.size() - 1) choice[q--] = 0;
        if (q < 1) break;
        ++choice[q];
    }
    return stable;
}

}  // namespace pdsm
