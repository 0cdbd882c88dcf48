#include "pdsm/elemental.hpp"

#include <algorithm>

namespace pdsm {

ElementalPlan path_plan(int p) {
    ElementalPlan plan;
    plan.tree.p = p;
    for (int i = 0; i + 1 < p; ++i) plan.tree.edges.emplace_back(i, i + 1);
    return plan;
}

ElementalPlan star_plan(int p) {
    ElementalPlan plan;
    plan.tree.p = p;
    for (int i = 1; i < p; ++i) plan.tree.edges.emplace_back(0, i);
    return plan;
}

ElementalRun run_elemental(const Instance& inst, const ElementalPlan& plan) {
    const TreeCheck chk = check_tree(plan.tree.p, plan.tree.edges);
    if (!chk.ok) throw structure_error("invalid plan: " + chk.violation);
    if (plan.tree.p != inst.parties())
        throw structure_error("plan spans " + std::to_string(plan.tree.p) +
                              " parties but the instance has " + std::to_string(inst.parties()));

    const int p = inst.parties();
    const int n = inst.size();

    ElementalRun out;
    out.per_edge.reserve(plan.tree.edges.size());
    for (auto [proposer, responder] : plan.tree.edges) {
        out.per_edge.push_back(gs(inst, proposer, responder));
        out.total_rounds += out.per_edge.back().rounds_used;
    }

    // Compose bijections along tree paths, rooted at party 0. Each bijection
    // is undirected for composition: traversing an edge against its proposal
    // direction uses the inverse map.
    struct Hop {
        int to;
        int edge;
        bool forward;
    };
    std::vector<std::vector<Hop>> adjacent(p);
    for (size_t k = 0; k < plan.tree.edges.size(); ++k) {
        const auto [a, b] = plan.tree.edges[k];
        adjacent[a].push_back({b, static_cast<int>(k), true});
        adjacent[b].push_back({a, static_cast<int>(k), false});
    }

    // member_at[q][r] = party-q element in the family of party-0 member r
    std::vector<std::vector<int>> member_at(p);
    member_at[0].resize(n);
    for (int r = 0; r < n; ++r) member_at[0][r] = r;
    std::vector<char> visited(p, 0);
    visited[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const Hop& hop : adjacent[u]) {
            if (visited[hop.to]) continue;
            visited[hop.to] = 1;
            const Bijection& bij = out.per_edge[hop.edge];
            const std::vector<int> map =
                hop.forward ? bij.partner_of_proposer : bij.inverse();
            auto& dst = member_at[hop.to];
            dst.resize(n);
            for (int r = 0; r < n; ++r) dst[r] = map[member_at[u][r]];
            stack.push_back(hop.to);
        }
    }

    out.matching.families.reserve(n);
    for (int r = 0; r < n; ++r) {
        std::vector<int> members(p);
        for (int q = 0; q < p; ++q) members[q] = member_at[q][r];
        out.matching.families.emplace_back(std::move(members));
    }
    return out;
}

}  // namespace pdsm
