#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pdsm {

// Input document cannot be parsed or references unknown labels.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parsed value violates a model invariant.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A plan, partition or recipe does not fit the instance it is applied to.
struct structure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exhaustive operation would exceed its configured guard.
struct guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A community element, identified by position. String labels exist only at
// the I/O boundary.
struct ElementRef {
    int party = 0;
    int member = 0;

    friend constexpr bool operator==(ElementRef, ElementRef) = default;
    friend constexpr auto operator<=>(ElementRef, ElementRef) = default;
};

// One member from each party, stored in party order: member_index(i) is the
// member of party i, so the one-per-party invariant holds by construction.
class Family {
public:
    Family() = default;
    explicit Family(std::vector<int> member_per_party)
        : members_(std::move(member_per_party)) {}

    int parties() const { return static_cast<int>(members_.size()); }
    int member_index(int party) const { return members_[party]; }
    ElementRef at(int party) const { return {party, members_[party]}; }
    const std::vector<int>& member_indices() const { return members_; }
    void set(int party, int member) { members_[party] = member; }

    friend bool operator==(const Family&, const Family&) = default;

private:
    std::vector<int> members_;
};

// A partition of the community into n families.
struct Matching {
    std::vector<Family> families;

    // Canonical family order: ascending by the party-0 member.
    void canonicalize();

    friend bool operator==(const Matching&, const Matching&) = default;
};

// One preference ranking: member indices of the target party, most preferred
// first.
using PrefRow = std::vector<int>;

// prefs[party][member][target_party]; the own-party slot stays empty.
using PrefTable = std::vector<std::vector<std::vector<PrefRow>>>;

// A pDSM instance: p parties of n members each plus every member's
// preference rows. Construction never rejects malformed data; validate()
// reports violations instead. Rank lookup tables are built per row at
// construction for every row that is a complete permutation.
//
// Immutable after construction; concurrent readers are safe.
class Instance {
public:
    Instance() = default;
    Instance(std::vector<std::string> party_names,
             std::vector<std::vector<std::string>> member_names,
             PrefTable prefs);

    int parties() const { return static_cast<int>(party_names_.size()); }
    int size() const { return n_; }

    const std::vector<std::string>& party_names() const { return party_names_; }
    const std::string& party_name(int party) const { return party_names_.at(party); }
    const std::vector<std::string>& member_names(int party) const { return member_names_.at(party); }
    const std::string& member_name(ElementRef x) const { return member_names_.at(x.party).at(x.member); }
    const PrefTable& prefs() const { return prefs_; }

    std::optional<ElementRef> find_member(std::string_view label) const;
    int party_index(std::string_view name) const;  // -1 when absent

    // x's row for target_party. Throws on a same-party request.
    const PrefRow& row(ElementRef x, int target_party) const;

    // 1-based rank of y in x's row for prt(y); rank 1 is most preferred.
    // a is preferred to b by x exactly when rank(x, a) < rank(x, b).
    int rank(ElementRef x, ElementRef y) const {
        if (x.party == y.party)
            throw std::invalid_argument("rank: elements of the same party have no rank");
        const auto& inv = inverse_[x.party][x.member][y.party];
        if (inv.empty())
            throw std::logic_error("rank: row of " + member_name(x) + " for party " +
                                   party_name(y.party) + " is not a complete ranking");
        return inv[y.member];
    }

    // The member of target_party that x ranks in the given 1-based position.
    ElementRef nth_choice(ElementRef x, int target_party, int rank) const {
        return {target_party, row(x, target_party).at(rank - 1)};
    }

private:
    void build_inverse_tables();

    int n_ = 0;
    std::vector<std::string> party_names_;
    std::vector<std::vector<std::string>> member_names_;
    PrefTable prefs_;
    // inverse_[p][m][q][j] = 1-based rank of member j of party q in (p,m)'s
    // row; empty for rows that are not complete permutations.
    PrefTable inverse_;
    std::unordered_map<std::string, ElementRef> by_label_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

// Checks every Instance invariant; violations name the element and row at
// fault. Violations are data, not failures.
ValidationReport validate(const Instance& instance);

// Checks that the matching is a partition of the community into n families.
ValidationReport check_matching(const Instance& instance, const Matching& matching);

// x's relative in the matching from the given party; relative(m, x, prt(x))
// is x itself. Throws when x does not appear in the matching.
ElementRef relative(const Matching& matching, ElementRef x, int party);

}  // namespace pdsm
