#include "pdsm/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pdsm {

void Matching::canonicalize() {
    std::sort(families.begin(), families.end(), [](const Family& a, const Family& b) {
        return a.member_index(0) < b.member_index(0);
    });
}

Instance::Instance(std::vector<std::string> party_names,
                   std::vector<std::vector<std::string>> member_names,
                   PrefTable prefs)
    : party_names_(std::move(party_names)),
      member_names_(std::move(member_names)),
      prefs_(std::move(prefs)) {
    n_ = member_names_.empty() ? 0 : static_cast<int>(member_names_.front().size());
    for (int p = 0; p < static_cast<int>(member_names_.size()); ++p)
        for (int m = 0; m < static_cast<int>(member_names_[p].size()); ++m)
            by_label_.emplace(member_names_[p][m], ElementRef{p, m});
    build_inverse_tables();
}

void Instance::build_inverse_tables() {
    const int p = parties();
    inverse_.assign(p, {});
    for (int a = 0; a < p; ++a) {
        if (a >= static_cast<int>(prefs_.size())) continue;
        const int na = a < static_cast<int>(member_names_.size())
                           ? static_cast<int>(member_names_[a].size())
                           : 0;
        inverse_[a].assign(na, std::vector<PrefRow>(p));
        for (int m = 0; m < na && m < static_cast<int>(prefs_[a].size()); ++m) {
            for (int q = 0; q < p && q < static_cast<int>(prefs_[a][m].size()); ++q) {
                if (q == a) continue;
                const PrefRow& row = prefs_[a][m][q];
                const int nq = static_cast<int>(member_names_[q].size());
                if (static_cast<int>(row.size()) != nq) continue;
                std::vector<int> inv(nq, 0);
                bool perm = true;
                for (int j = 0; j < nq; ++j) {
                    const int v = row[j];
                    if (v < 0 || v >= nq || inv[v] != 0) {
                        perm = false;
                        break;
                    }
                    inv[v] = j + 1;
                }
                if (perm) inverse_[a][m][q] = std::move(inv);
            }
        }
    }
}

std::optional<ElementRef> Instance::find_member(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

int Instance::party_index(std::string_view name) const {
    for (int i = 0; i < parties(); ++i)
        if (party_names_[i] == name) return i;
    return -1;
}

const PrefRow& Instance::row(ElementRef x, int target_party) const {
    if (x.party == target_party)
        throw std::invalid_argument("row: no ranking of an element's own party");
    return prefs_.at(x.party).at(x.member).at(target_party);
}

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i];
    }
    return os.str();
}

namespace {

std::string element_tag(const Instance& inst, int party, int member) {
    const auto& names = inst.member_names(party);
    if (member < static_cast<int>(names.size())) return names[member];
    return inst.party_name(party) + "[" + std::to_string(member) + "]";
}

}  // namespace

ValidationReport validate(const Instance& inst) {
    ValidationReport rep;
    const int p = inst.parties();
    const int n = inst.size();
    if (p < 2) rep.violations.push_back("instance has " + std::to_string(p) + " parties, need at least 2");
    if (n < 1) rep.violations.push_back("party size is " + std::to_string(n) + ", need at least 1");

    std::set<std::string> party_seen;
    for (int a = 0; a < p; ++a)
        if (!party_seen.insert(inst.party_name(a)).second)
            rep.violations.push_back("duplicate party name '" + inst.party_name(a) + "'");

    // equal sizes and label uniqueness across the whole community
    std::set<std::string> label_seen;
    for (int a = 0; a < p; ++a) {
        const auto& names = inst.member_names(a);
        if (static_cast<int>(names.size()) != n)
            rep.violations.push_back("party '" + inst.party_name(a) + "' has " +
                                     std::to_string(names.size()) + " members, expected " +
                                     std::to_string(n));
        for (const auto& label : names)
            if (!label_seen.insert(label).second)
                rep.violations.push_back("duplicate member label '" + label + "'");
    }

    // every element needs one complete strict row per foreign party
    const auto& prefs = inst.prefs();
    for (int a = 0; a < p; ++a) {
        const int na = static_cast<int>(inst.member_names(a).size());
        for (int m = 0; m < na; ++m) {
            for (int q = 0; q < p; ++q) {
                if (q == a) continue;
                const std::string tag = element_tag(inst, a, m) + " / " + inst.party_name(q);
                if (a >= static_cast<int>(prefs.size()) ||
                    m >= static_cast<int>(prefs[a].size()) ||
                    q >= static_cast<int>(prefs[a][m].size())) {
                    rep.violations.push_back(tag + ": row missing");
                    continue;
                }
                const PrefRow& row = prefs[a][m][q];
                const int nq = static_cast<int>(inst.member_names(q).size());
                if (static_cast<int>(row.size()) != nq) {
                    rep.violations.push_back(tag + ": row has " + std::to_string(row.size()) +
                                             " of " + std::to_string(nq) + " entries");
                    continue;
                }
                std::vector<char> seen(nq, 0);
                for (int v : row) {
                    if (v < 0 || v >= nq) {
                        rep.violations.push_back(tag + ": entry " + std::to_string(v) + " out of range");
                        break;
                    }
                    if (seen[v]) {
                        rep.violations.push_back(tag + ": duplicate entry '" +
                                                 element_tag(inst, q, v) + "'");
                        break;
                    }
                    seen[v] = 1;
                }
            }
        }
    }
    return rep;
}

ValidationReport check_matching(const Instance& inst, const Matching& matching) {
    ValidationReport rep;
    const int p = inst.parties();
    const int n = inst.size();
    if (static_cast<int>(matching.families.size()) != n) {
        rep.violations.push_back("matching has " + std::to_string(matching.families.size()) +
                                 " families, expected " + std::to_string(n));
        return rep;
    }
    std::vector<std::vector<char>> seen(p, std::vector<char>(n, 0));
    for (size_t f = 0; f < matching.families.size(); ++f) {
        const Family& fam = matching.families[f];
        if (fam.parties() != p) {
            rep.violations.push_back("family " + std::to_string(f) + " has " +
                                     std::to_string(fam.parties()) + " members, expected " +
                                     std::to_string(p));
            continue;
        }
        for (int a = 0; a < p; ++a) {
            const int m = fam.member_index(a);
            if (m < 0 || m >= n) {
                rep.violations.push_back("family " + std::to_string(f) + ": member index " +
                                         std::to_string(m) + " out of range for party '" +
                                         inst.party_name(a) + "'");
                continue;
            }
            if (seen[a][m])
                rep.violations.push_back("element '" + element_tag(inst, a, m) +
                                         "' appears in more than one family");
            seen[a][m] = 1;
        }
    }
    for (int a = 0; a < p; ++a)
        for (int m = 0; m < n; ++m)
            if (!seen[a][m])
                rep.violations.push_back("element '" + element_tag(inst, a, m) +
                                         "' appears in no family");
    return rep;
}

ElementRef relative(const Matching& matching, ElementRef x, int party) {
    for (const Family& fam : matching.families) {
        if (x.party < fam.parties() && fam.member_index(x.party) == x.member) {
            if (party < 0 || party >= fam.parties())
                throw std::invalid_argument("relative: party index out of range");
            return fam.at(party);
        }
    }
    throw std::invalid_argument("relative: element does not appear in the matching");
}

}  // namespace pdsm
