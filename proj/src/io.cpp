#include "pdsm/io.hpp"

#include <charconv>

#include "json.hpp"

namespace pdsm {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse_document(const std::string& text, const char* what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string(what) + ": " + e.what());
    }
}

const ordered_json& field(const ordered_json& doc, const char* key, const char* what) {
    const auto it = doc.find(key);
    if (!doc.is_object() || it == doc.end())
        throw parse_error(std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

std::string get_string(const ordered_json& v, const std::string& where) {
    if (!v.is_string()) throw parse_error(where + ": expected a string");
    return v.get<std::string>();
}

int get_int(const ordered_json& v, const std::string& where) {
    if (!v.is_number_integer()) throw parse_error(where + ": expected an integer");
    return v.get<int>();
}

ElementalPlan plan_from_json(const ordered_json& doc, const std::string& where) {
    const auto& edges = field(doc, "edges", where.c_str());
    if (!edges.is_array()) throw parse_error(where + ": \"edges\" must be an array");
    ElementalPlan plan;
    plan.tree.p = static_cast<int>(edges.size()) + 1;
    for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2)
            throw parse_error(where + ": each edge must be a [proposer, responder] pair");
        plan.tree.edges.emplace_back(get_int(e[0], where + " edge"),
                                     get_int(e[1], where + " edge"));
    }
    return plan;
}

ordered_json plan_to_json(const ElementalPlan& plan) {
    ordered_json doc;
    auto& edges = doc["edges"] = ordered_json::array();
    for (auto [a, b] : plan.tree.edges) edges.push_back({a, b});
    return doc;
}

}  // namespace

Instance read_instance(const std::string& text) {
    const ordered_json doc = parse_document(text, "instance");

    const auto& parties = field(doc, "parties", "instance");
    if (!parties.is_array() || parties.empty())
        throw parse_error("instance: \"parties\" must be a nonempty array");

    std::vector<std::string> party_names;
    std::vector<std::vector<std::string>> member_names;
    for (const auto& pj : parties) {
        const std::string where = "parties[" + std::to_string(party_names.size()) + "]";
        party_names.push_back(get_string(field(pj, "name", where.c_str()), where + ".name"));
        const auto& members = field(pj, "members", where.c_str());
        if (!members.is_array()) throw parse_error(where + ".members: expected an array");
        std::vector<std::string> labels;
        for (const auto& mj : members)
            labels.push_back(get_string(mj, where + ".members"));
        member_names.push_back(std::move(labels));
    }

    // label -> position, needed before Instance construction to resolve rows
    const int p = static_cast<int>(party_names.size());
    std::unordered_map<std::string, ElementRef> by_label;
    std::unordered_map<std::string, int> party_by_name;
    for (int a = 0; a < p; ++a) {
        party_by_name.emplace(party_names[a], a);
        for (size_t m = 0; m < member_names[a].size(); ++m)
            by_label.emplace(member_names[a][m], ElementRef{a, static_cast<int>(m)});
    }

    PrefTable prefs(p);
    for (int a = 0; a < p; ++a) {
        prefs[a].resize(member_names[a].size());
        for (auto& rows : prefs[a]) rows.resize(p);
    }

    const auto& prefs_doc = field(doc, "prefs", "instance");
    if (!prefs_doc.is_object()) throw parse_error("instance: \"prefs\" must be an object");
    for (const auto& [label, rows] : prefs_doc.items()) {
        const auto owner = by_label.find(label);
        if (owner == by_label.end())
            throw parse_error("prefs: \"" + label + "\" is not a member of any party");
        if (!rows.is_object())
            throw parse_error("prefs." + label + ": expected an object keyed by party name");
        for (const auto& [pname, row] : rows.items()) {
            const auto target = party_by_name.find(pname);
            if (target == party_by_name.end())
                throw parse_error("prefs." + label + ": unknown party \"" + pname + "\"");
            if (target->second == owner->second.party)
                throw parse_error("prefs." + label + ": row for the member's own party \"" +
                                  pname + "\"");
            if (!row.is_array())
                throw parse_error("prefs." + label + "." + pname + ": expected an array");
            PrefRow indices;
            for (const auto& entry : row) {
                const std::string e = get_string(entry, "prefs." + label + "." + pname);
                const auto ref = by_label.find(e);
                if (ref == by_label.end() || ref->second.party != target->second)
                    throw parse_error("prefs." + label + "." + pname + ": \"" + e +
                                      "\" is not a member of party \"" + pname + "\"");
                indices.push_back(ref->second.member);
            }
            prefs[owner->second.party][owner->second.member][target->second] =
                std::move(indices);
        }
    }

    Instance inst(std::move(party_names), std::move(member_names), std::move(prefs));
    const auto report = validate(inst);
    if (!report.ok()) throw validation_error("instance: " + report.to_string());
    return inst;
}

std::string write_instance(const Instance& inst) {
    ordered_json doc;
    auto& parties = doc["parties"] = ordered_json::array();
    for (int a = 0; a < inst.parties(); ++a)
        parties.push_back({{"name", inst.party_name(a)}, {"members", inst.member_names(a)}});
    auto& prefs = doc["prefs"] = ordered_json::object();
    for (int a = 0; a < inst.parties(); ++a) {
        for (int m = 0; m < inst.size(); ++m) {
            auto& rows = prefs[inst.member_name({a, m})] = ordered_json::object();
            for (int b = 0; b < inst.parties(); ++b) {
                if (b == a) continue;
                auto& row = rows[inst.party_name(b)] = ordered_json::array();
                for (int j : inst.row({a, m}, b)) row.push_back(inst.member_name({b, j}));
            }
        }
    }
    return doc.dump(2) + "\n";
}

Matching read_matching(const Instance& inst, const std::string& text) {
    const ordered_json doc = parse_document(text, "matching");
    const auto& families = field(doc, "families", "matching");
    if (!families.is_array()) throw parse_error("matching: \"families\" must be an array");

    Matching m;
    for (const auto& fj : families) {
        const std::string where = "families[" + std::to_string(m.families.size()) + "]";
        if (!fj.is_array() || static_cast<int>(fj.size()) != inst.parties())
            throw parse_error(where + ": expected " + std::to_string(inst.parties()) +
                              " members in party order");
        std::vector<int> members(inst.parties());
        for (int a = 0; a < inst.parties(); ++a) {
            const std::string label = get_string(fj[a], where);
            const auto ref = inst.find_member(label);
            if (!ref || ref->party != a)
                throw parse_error(where + ": \"" + label + "\" is not a member of party \"" +
                                  inst.party_name(a) + "\"");
            members[a] = ref->member;
        }
        m.families.emplace_back(std::move(members));
    }
    const auto report = check_matching(inst, m);
    if (!report.ok()) throw validation_error("matching: " + report.to_string());
    return m;
}

std::string write_matching(const Instance& inst, const Matching& m) {
    ordered_json doc;
    auto& families = doc["families"] = ordered_json::array();
    for (const Family& f : m.families) {
        ordered_json row = ordered_json::array();
        for (int a = 0; a < f.parties(); ++a) row.push_back(inst.member_name(f.at(a)));
        families.push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

ElementalPlan read_plan(const std::string& text) {
    return plan_from_json(parse_document(text, "plan"), "plan");
}

std::string write_plan(const ElementalPlan& plan) {
    return plan_to_json(plan).dump(2) + "\n";
}

ElementalPlan parse_plan_shorthand(const std::string& text) {
    const std::string_view sv = text;
    if (!sv.starts_with("prufer:"))
        throw parse_error("plan shorthand must start with \"prufer:\", got \"" + text + "\"");
    const size_t sep = sv.find("/orient:");
    if (sep == std::string_view::npos)
        throw parse_error("plan shorthand needs \"/orient:<mask>\", got \"" + text + "\"");

    const std::string_view seq_part = sv.substr(7, sep - 7);
    const std::string_view mask_part = sv.substr(sep + 8);

    std::vector<int> seq;
    size_t pos = 0;
    while (pos < seq_part.size()) {
        size_t comma = seq_part.find(',', pos);
        if (comma == std::string_view::npos) comma = seq_part.size();
        int v = 0;
        const auto [end, ec] =
            std::from_chars(seq_part.data() + pos, seq_part.data() + comma, v);
        if (ec != std::errc() || end != seq_part.data() + comma)
            throw parse_error("plan shorthand: bad sequence entry in \"" + text + "\"");
        seq.push_back(v);
        pos = comma + 1;
    }

    std::uint64_t mask = 0;
    const auto [end, ec] =
        std::from_chars(mask_part.data(), mask_part.data() + mask_part.size(), mask);
    if (ec != std::errc() || end != mask_part.data() + mask_part.size() || mask_part.empty())
        throw parse_error("plan shorthand: bad orientation mask in \"" + text + "\"");

    const int p = static_cast<int>(seq.size()) + 2;
    try {
        return ElementalPlan{tree_from_label(p, seq, mask)};
    } catch (const std::invalid_argument& e) {
        throw parse_error("plan shorthand: " + std::string(e.what()));
    }
}

std::string plan_shorthand(const std::vector<int>& sequence, std::uint64_t orientation) {
    std::string out = "prufer:";
    for (size_t i = 0; i < sequence.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(sequence[i]);
    }
    out += "/orient:" + std::to_string(orientation);
    return out;
}

CompoundRecipe read_recipe(const std::string& text) {
    const ordered_json doc = parse_document(text, "recipe");
    CompoundRecipe recipe;
    const auto& levels = field(doc, "levels", "recipe");
    if (!levels.is_array()) throw parse_error("recipe: \"levels\" must be an array");
    for (const auto& lj : levels) {
        const std::string where = "levels[" + std::to_string(recipe.levels.size()) + "]";
        RecipeLevel level;
        const auto& blocks = field(lj, "blocks", where.c_str());
        if (!blocks.is_array()) throw parse_error(where + ".blocks: expected an array");
        for (const auto& bj : blocks) {
            if (!bj.is_array()) throw parse_error(where + ".blocks: each block is an array");
            std::vector<int> block;
            for (const auto& v : bj) block.push_back(get_int(v, where + ".blocks"));
            level.partition.blocks.push_back(std::move(block));
        }
        const auto& plans = field(lj, "block_plans", where.c_str());
        if (!plans.is_array()) throw parse_error(where + ".block_plans: expected an array");
        for (const auto& pj : plans)
            level.block_plans.push_back(plan_from_json(pj, where + ".block_plans"));
        recipe.levels.push_back(std::move(level));
    }
    recipe.final_plan = plan_from_json(field(doc, "final_plan", "recipe"), "recipe.final_plan");
    return recipe;
}

std::string write_recipe(const CompoundRecipe& recipe) {
    ordered_json doc;
    auto& levels = doc["levels"] = ordered_json::array();
    for (const RecipeLevel& level : recipe.levels) {
        ordered_json lj;
        auto& blocks = lj["blocks"] = ordered_json::array();
        for (const auto& block : level.partition.blocks) blocks.push_back(block);
        auto& plans = lj["block_plans"] = ordered_json::array();
        for (const ElementalPlan& plan : level.block_plans) plans.push_back(plan_to_json(plan));
        levels.push_back(std::move(lj));
    }
    doc["final_plan"] = plan_to_json(recipe.final_plan);
    return doc.dump(2) + "\n";
}

}  // namespace pdsm
