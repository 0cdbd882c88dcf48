#include "pdsm/trees.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace pdsm {

namespace {

int find_root(std::vector<int>& parent, int v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

}  // namespace

TreeCheck check_tree(int p, const std::vector<std::pair<int, int>>& edges) {
    if (p < 2) return {false, "p must be at least 2, got " + std::to_string(p)};
    if (static_cast<int>(edges.size()) != p - 1)
        return {false, "not a spanning tree: p=" + std::to_string(p) + " needs " +
                           std::to_string(p - 1) + " edges, got " + std::to_string(edges.size())};
    std::set<std::pair<int, int>> undirected;
    std::vector<int> parent(p);
    std::iota(parent.begin(), parent.end(), 0);
    for (auto [a, b] : edges) {
        if (a < 0 || a >= p || b < 0 || b >= p)
            return {false, "edge (" + std::to_string(a) + "," + std::to_string(b) +
                               ") out of range for p=" + std::to_string(p)};
        if (a == b) return {false, "self-loop at vertex " + std::to_string(a)};
        if (!undirected.insert(std::minmax(a, b)).second)
            return {false, "duplicate edge between " + std::to_string(std::min(a, b)) + " and " +
                               std::to_string(std::max(a, b))};
        const int ra = find_root(parent, a);
        const int rb = find_root(parent, b);
        if (ra == rb)
            return {false, "edges form a cycle through vertex " + std::to_string(a)};
        parent[ra] = rb;
    }
    // p-1 edges and no cycle imply connectivity
    return {};
}

std::vector<std::pair<int, int>> prufer_decode(int p, const std::vector<int>& seq) {
    if (p < 2) throw std::invalid_argument("prufer_decode: p must be at least 2");
    if (static_cast<int>(seq.size()) != p - 2)
        throw std::invalid_argument("prufer_decode: sequence length must be p-2");
    std::vector<int> degree(p, 1);
    for (int v : seq) {
        if (v < 0 || v >= p) throw std::invalid_argument("prufer_decode: entry out of range");
        ++degree[v];
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (int v = 0; v < p; ++v)
        if (degree[v] == 1) leaves.push(v);

    std::vector<std::pair<int, int>> edges;
    edges.reserve(p - 1);
    for (int v : seq) {
        const int leaf = leaves.top();
        leaves.pop();
        edges.push_back(std::minmax(leaf, v));
        --degree[leaf];
        if (--degree[v] == 1) leaves.push(v);
    }
    const int a = leaves.top();
    leaves.pop();
    const int b = leaves.top();
    edges.push_back(std::minmax(a, b));
    std::sort(edges.begin(), edges.end());
    return edges;
}

BigInt count_elemental(int p) {
    if (p < 2) throw std::invalid_argument("count_elemental: p must be at least 2");
    return (BigInt(1) << (p - 1)) * boost::multiprecision::pow(BigInt(p), p - 2);
}

DirectedTree tree_from_label(int p, const std::vector<int>& sequence, std::uint64_t orientation) {
    const auto base = prufer_decode(p, sequence);
    if (p - 1 < 64 && orientation >= (std::uint64_t{1} << (p - 1)))
        throw std::invalid_argument("tree_from_label: orientation mask needs more than p-1 bits");
    DirectedTree t;
    t.p = p;
    t.edges.reserve(base.size());
    for (size_t i = 0; i < base.size(); ++i) {
        const auto [a, b] = base[i];
        if ((orientation >> i) & 1)
            t.edges.emplace_back(b, a);
        else
            t.edges.emplace_back(a, b);
    }
    return t;
}

TreeEnumerator::TreeEnumerator(int p, int max_p) : p_(p) {
    if (p < 2) throw std::invalid_argument("enumerate_trees: p must be at least 2");
    if (p > max_p)
        throw guard_error("enumerate_trees: p=" + std::to_string(p) + " exceeds the guard " +
                          std::to_string(max_p) + " (" + count_elemental(p).str() +
                          " trees); raise the guard to proceed");
    prufer_.assign(std::max(0, p - 2), 0);
    base_edges_ = prufer_decode(p_, prufer_);
}

std::optional<DirectedTree> TreeEnumerator::next() {
    if (done_) return std::nullopt;
    DirectedTree t;
    t.p = p_;
    t.edges.reserve(base_edges_.size());
    for (size_t i = 0; i < base_edges_.size(); ++i) {
        const auto [a, b] = base_edges_[i];
        if ((orient_ >> i) & 1)
            t.edges.emplace_back(b, a);
        else
            t.edges.emplace_back(a, b);
    }
    last_prufer_ = prufer_;
    last_orient_ = orient_;
    advance();
    return t;
}

void TreeEnumerator::advance() {
    if (++orient_ < (std::uint64_t{1} << (p_ - 1))) return;
    orient_ = 0;
    int i = static_cast<int>(prufer_.size()) - 1;
    while (i >= 0 && prufer_[i] == p_ - 1) prufer_[i--] = 0;
    if (i < 0) {
        done_ = true;
        return;
    }
    ++prufer_[i];
    base_edges_ = prufer_decode(p_, prufer_);
}

}  // namespace pdsm
