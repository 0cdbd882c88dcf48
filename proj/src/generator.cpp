#include "pdsm/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace pdsm {

std::string_view profile_name(Profile profile) {
    switch (profile) {
        case Profile::uniform: return "uniform";
        case Profile::aligned: return "aligned";
        case Profile::adversarial: return "adversarial-ties";
    }
    throw std::invalid_argument("unknown profile");
}

std::optional<Profile> profile_from_name(std::string_view name) {
    if (name == "uniform") return Profile::uniform;
    if (name == "aligned") return Profile::aligned;
    if (name == "adversarial-ties" || name == "adversarial") return Profile::adversarial;
    return std::nullopt;
}

Instance generate(const GenSpec& spec) {
    if (spec.p < 2 || spec.n < 1)
        throw validation_error("generate: need p >= 2 and n >= 1, got p=" +
                               std::to_string(spec.p) + ", n=" + std::to_string(spec.n));
    const int p = spec.p;
    const int n = spec.n;

    std::vector<std::string> party_names;
    std::vector<std::vector<std::string>> member_names;
    for (int a = 0; a < p; ++a) {
        party_names.push_back("P" + std::to_string(a));
        std::vector<std::string> labels;
        for (int m = 0; m < n; ++m)
            labels.push_back(party_names.back() + "M" + std::to_string(m));
        member_names.push_back(std::move(labels));
    }

    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                      static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n),
                      static_cast<std::uint32_t>(spec.profile)};
    std::mt19937_64 rng(seq);

    PrefTable prefs(p);
    for (int a = 0; a < p; ++a) {
        prefs[a].resize(n);
        for (int m = 0; m < n; ++m) {
            prefs[a][m].resize(p);
            for (int b = 0; b < p; ++b) {
                if (b == a) continue;
                PrefRow row(n);
                std::iota(row.begin(), row.end(), 0);
                switch (spec.profile) {
                    case Profile::uniform:
                        // explicit Fisher-Yates so fixtures do not depend on
                        // a standard library's shuffle
                        for (int i = n - 1; i > 0; --i)
                            std::swap(row[i], row[rng() % (i + 1)]);
                        break;
                    case Profile::aligned:
                        for (int i = 0; i < n; ++i) row[i] = (m + i) % n;
                        break;
                    case Profile::adversarial:
                        if (a % 2 == 1) std::reverse(row.begin(), row.end());
                        break;
                }
                prefs[a][m][b] = std::move(row);
            }
        }
    }
    return Instance(std::move(party_names), std::move(member_names), std::move(prefs));
}

}  // namespace pdsm
