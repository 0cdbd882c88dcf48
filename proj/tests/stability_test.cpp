#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "pdsm/elemental.hpp"
#include "pdsm/generator.hpp"
#include "pdsm/stability.hpp"

using namespace pdsm;

namespace {

// everyone's first choice is the same-index member of the other party,
// and the matching is crossed, so both off-diagonal candidates block
struct CrossedPair {
    Instance inst = testutil::duo({{0, 1}, {1, 0}}, {{0, 1}, {1, 0}});
    Matching crossed = testutil::matching_of({{0, 1}, {1, 0}});
};

Bijection bijection_of(const Matching& m, int n) {
    Bijection b;
    b.proposer_party = 0;
    b.responder_party = 1;
    for (int i = 0; i < n; ++i)
        b.partner_of_proposer.push_back(relative(m, {0, i}, 1).member);
    return b;
}

}  // namespace

TEST_CASE("is_blocking spots a mutually preferred family") {
    CrossedPair fx;
    CHECK(is_blocking(fx.inst, fx.crossed, Family{{0, 0}}));
    CHECK(is_blocking(fx.inst, fx.crossed, Family{{1, 1}}));
    CHECK_THROWS_AS(is_blocking(fx.inst, fx.crossed, Family{{0, 1}}),
                    std::invalid_argument);
}

TEST_CASE("verify reports every witness in scan order") {
    CrossedPair fx;
    const BlockingReport report = verify(fx.inst, fx.crossed);
    CHECK_FALSE(report.stable);
    CHECK(report.candidates_checked == 2);
    REQUIRE(report.witnesses.size() == 2);
    CHECK(report.witnesses[0].member_indices() == std::vector<int>{0, 0});
    CHECK(report.witnesses[1].member_indices() == std::vector<int>{1, 1});
}

TEST_CASE("the witness cap stops the scan early") {
    CrossedPair fx;
    VerifyOptions opts;
    opts.witness_cap = 1;
    const BlockingReport report = verify(fx.inst, fx.crossed, opts);
    CHECK_FALSE(report.stable);
    CHECK(report.candidates_checked == 1);
    CHECK(report.witnesses.size() == 1);
}

TEST_CASE("deferred-acceptance output passes verification") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Instance inst = generate({2, 6, seed, Profile::uniform});
        const Matching m = testutil::lift(gs(inst, 0, 1).partner_of_proposer);
        const BlockingReport report = verify(inst, m);
        CHECK(report.stable);
        CHECK(report.witnesses.empty());
        // 6^2 candidates minus the 6 matched families
        CHECK(report.candidates_checked == 30);
    }
}

TEST_CASE("all twelve three-party plans verify as stable") {
    const Instance inst = generate({3, 3, 4, Profile::uniform});
    TreeEnumerator en(3);
    while (auto tree = en.next())
        CHECK(verify(inst, run_elemental(inst, ElementalPlan{*tree}).matching).stable);
}

TEST_CASE("verify rejects a malformed matching") {
    const Instance inst = generate({2, 2, 0, Profile::uniform});
    CHECK_THROWS_AS(verify(inst, testutil::matching_of({{0, 0}, {0, 1}})),
                    validation_error);
}

TEST_CASE("the candidate guard trips on oversized searches") {
    const Instance big = generate({8, 10, 0, Profile::uniform});
    Matching m;
    for (int i = 0; i < 10; ++i)
        m.families.push_back(Family{std::vector<int>(8, i)});
    CHECK_THROWS_AS(verify(big, m), guard_error);

    const Instance small = generate({2, 4, 0, Profile::uniform});
    const Matching good = testutil::lift(gs(small, 0, 1).partner_of_proposer);
    VerifyOptions tight;
    tight.max_candidates = 5;  // 4^2 candidates exceed this
    CHECK_THROWS_AS(verify(small, good, tight), guard_error);
    CHECK(verify(small, good).stable);
}

TEST_CASE("parallel verification matches the sequential report") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Instance inst = generate({3, 4, seed, Profile::uniform});
        // the diagonal is rarely stable on random preferences
        Matching diag;
        for (int i = 0; i < 4; ++i)
            diag.families.push_back(Family{{i, i, i}});
        const BlockingReport seq = verify(inst, diag);
        for (int jobs : {2, 4}) {
            VerifyOptions opts;
            opts.jobs = jobs;
            const BlockingReport par = verify(inst, diag, opts);
            CHECK(par.stable == seq.stable);
            CHECK(par.witnesses == seq.witnesses);
        }
    }
}

TEST_CASE("family order within the matching does not affect the verdict") {
    const Instance inst = generate({3, 3, 2, Profile::uniform});
    const Matching m = run_elemental(inst, path_plan(3)).matching;
    Matching shuffled;
    shuffled.families = {m.families[2], m.families[0], m.families[1]};
    const BlockingReport a = verify(inst, m);
    const BlockingReport b = verify(inst, shuffled);
    CHECK(a.stable == b.stable);
    CHECK(a.witnesses == b.witnesses);
    CHECK(a.candidates_checked == b.candidates_checked);
}

TEST_CASE("enumerate_stable on forced and tiny instances") {
    const Instance one = generate({3, 1, 0, Profile::uniform});
    CHECK(enumerate_stable(one).size() == 1);

    // mutual first choices leave exactly the diagonal
    const Instance agree = generate({2, 2, 0, Profile::aligned});
    const auto stable_set = enumerate_stable(agree);
    REQUIRE(stable_set.size() == 1);
    CHECK(stable_set[0] == testutil::matching_of({{0, 0}, {1, 1}}));
}

TEST_CASE("elemental outputs always land in the enumerated stable set") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Instance inst = generate({3, 2, seed, Profile::uniform});
        const auto stable_set = enumerate_stable(inst);
        REQUIRE_FALSE(stable_set.empty());
        TreeEnumerator en(3);
        while (auto tree = en.next()) {
            const Matching m = run_elemental(inst, ElementalPlan{*tree}).matching;
            CHECK(std::find(stable_set.begin(), stable_set.end(), m) !=
                  stable_set.end());
        }
    }
}

TEST_CASE("enumerate_stable guards against factorial blowups") {
    const Instance inst = generate({2, 10, 0, Profile::uniform});
    CHECK_THROWS_AS(enumerate_stable(inst), guard_error);
}

TEST_CASE("sampling finds a planted witness and respects stable inputs") {
    CrossedPair fx;
    CHECK_FALSE(verify_sample(fx.inst, fx.crossed, 200, 1).stable);

    const Instance inst = generate({2, 5, 3, Profile::uniform});
    const Matching m = testutil::lift(gs(inst, 0, 1).partner_of_proposer);
    CHECK(verify_sample(inst, m, 500, 7).stable);
}

TEST_CASE("verify agrees with the two-party stability check") {
    int pairs = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Instance inst = generate({2, 4, seed, Profile::uniform});
        const Matching good = testutil::lift(gs(inst, 0, 1).partner_of_proposer);
        Matching diag;
        for (int i = 0; i < 4; ++i)
            diag.families.push_back(Family{{i, i}});
        for (const Matching& m : {good, diag}) {
            CHECK(verify(inst, m).stable == is_stable_2party(inst, bijection_of(m, 4)));
            ++pairs;
        }
    }
    CHECK(pairs == 100);
}
