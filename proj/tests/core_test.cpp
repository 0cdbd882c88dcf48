#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "pdsm/core.hpp"
#include "pdsm/generator.hpp"

using namespace pdsm;

TEST_CASE("smallest legal instance validates") {
    // p=2, n=1, both rankings the single foreign member
    const Instance inst = testutil::make(2, 1, {{{{}, {0}}}, {{{0}, {}}}});
    CHECK(validate(inst).ok());
    CHECK(inst.parties() == 2);
    CHECK(inst.size() == 1);
}

TEST_CASE("duplicate entry in a row is reported with the row") {
    Instance inst = testutil::duo({{0, 0}, {0, 1}}, {{0, 1}, {0, 1}});
    const auto rep = validate(inst);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.to_string().find("P0M0 / P1") != std::string::npos);
    CHECK(rep.to_string().find("duplicate entry") != std::string::npos);
}

TEST_CASE("incomplete row is reported with its length") {
    PrefTable prefs(3);
    for (int a = 0; a < 3; ++a) {
        prefs[a].resize(2);
        for (int m = 0; m < 2; ++m) {
            prefs[a][m].resize(3);
            for (int b = 0; b < 3; ++b)
                if (b != a) prefs[a][m][b] = {0, 1};
        }
    }
    prefs[1][0][2] = {1};  // one entry short
    const Instance inst = testutil::make(3, 2, std::move(prefs));
    const auto rep = validate(inst);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.to_string().find("row has 1 of 2 entries") != std::string::npos);
}

TEST_CASE("unequal party sizes and duplicate labels are violations") {
    Instance inst({"A", "B"}, {{"x", "y"}, {"x"}}, PrefTable(2));
    const auto rep = validate(inst);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.to_string().find("has 1 members, expected 2") != std::string::npos);
    CHECK(rep.to_string().find("duplicate member label 'x'") != std::string::npos);
}

TEST_CASE("rank reads the row position, 1-based") {
    // x's row for the foreign party is [q2, q1]
    const Instance inst = testutil::duo({{1, 0}, {0, 1}}, {{0, 1}, {0, 1}});
    const ElementRef x{0, 0};
    CHECK(inst.rank(x, {1, 1}) == 1);
    CHECK(inst.rank(x, {1, 0}) == 2);
    CHECK_THROWS_AS(inst.rank(x, {0, 1}), std::invalid_argument);
}

TEST_CASE("rank is a bijection onto 1..n on generated instances") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Instance inst = generate({3, 4, seed, Profile::uniform});
        for (int a = 0; a < inst.parties(); ++a)
            for (int m = 0; m < inst.size(); ++m)
                for (int b = 0; b < inst.parties(); ++b) {
                    if (b == a) continue;
                    std::vector<char> hit(inst.size(), 0);
                    for (int j = 0; j < inst.size(); ++j) {
                        const int r = inst.rank({a, m}, {b, j});
                        REQUIRE(r >= 1);
                        REQUIRE(r <= inst.size());
                        hit[r - 1] = 1;
                    }
                    CHECK(std::count(hit.begin(), hit.end(), 1) == inst.size());
                }
    }
}

TEST_CASE("relative looks up family members") {
    const Matching m = testutil::matching_of({{0, 0}, {1, 1}});
    CHECK(relative(m, {0, 0}, 1) == ElementRef{1, 0});
    CHECK(relative(m, {0, 0}, 0) == ElementRef{0, 0});
    CHECK(relative(m, {1, 1}, 0) == ElementRef{0, 1});
    CHECK_THROWS_AS(relative(m, {0, 2}, 1), std::invalid_argument);
}

TEST_CASE("relatives are mutual") {
    const Matching m = testutil::matching_of({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    for (const Family& f : m.families)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK(relative(m, f.at(a), b) == f.at(b));
}

TEST_CASE("check_matching reports structural defects") {
    const Instance inst = generate({2, 2, 0, Profile::uniform});

    CHECK(check_matching(inst, testutil::matching_of({{0, 0}, {1, 1}})).ok());

    auto rep = check_matching(inst, testutil::matching_of({{0, 0}}));
    CHECK(rep.to_string().find("1 families, expected 2") != std::string::npos);

    rep = check_matching(inst, testutil::matching_of({{0, 0}, {0, 1}}));
    CHECK(rep.to_string().find("appears in more than one family") != std::string::npos);
    CHECK(rep.to_string().find("appears in no family") != std::string::npos);

    rep = check_matching(inst, testutil::matching_of({{0, 0}, {1, 5}}));
    CHECK(rep.to_string().find("out of range") != std::string::npos);
}

TEST_CASE("canonicalize orders families by the party-0 member") {
    Matching m = testutil::matching_of({{2, 0}, {0, 2}, {1, 1}});
    m.canonicalize();
    CHECK(m.families[0].member_index(0) == 0);
    CHECK(m.families[1].member_index(0) == 1);
    CHECK(m.families[2].member_index(0) == 2);
    CHECK(m.families[0].member_index(1) == 2);
}

TEST_CASE("find_member and party_index resolve labels") {
    const Instance inst = generate({3, 2, 0, Profile::uniform});
    CHECK(inst.find_member("P1M1") == ElementRef{1, 1});
    CHECK_FALSE(inst.find_member("nobody").has_value());
    CHECK(inst.party_index("P2") == 2);
    CHECK(inst.party_index("Q") == -1);
}
