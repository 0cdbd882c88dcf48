#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pdsm/core.hpp"

namespace pdsm {

using BigInt = boost::multiprecision::cpp_int;

// A spanning directed tree over party indices. Each edge points from the
// proposing party to the responding party.
struct DirectedTree {
    int p = 0;
    std::vector<std::pair<int, int>> edges;

    friend bool operator==(const DirectedTree&, const DirectedTree&) = default;
};

struct TreeCheck {
    bool ok = true;
    std::string violation;
};

// Ok iff the underlying undirected graph is a spanning tree on p vertices:
// p-1 edges, no self-loops, no duplicate undirected edges, no cycle.
TreeCheck check_tree(int p, const std::vector<std::pair<int, int>>& edges);

// Standard Prüfer bijection: a sequence of length p-2 over {0..p-1} decodes
// to a labeled undirected tree. Edges come back in canonical order, sorted
// by (min endpoint, max endpoint).
std::vector<std::pair<int, int>> prufer_decode(int p, const std::vector<int>& sequence);

// Exact count of directed spanning trees on p labeled vertices:
// 2^(p-1) * p^(p-2).
BigInt count_elemental(int p);

// The directed tree labeled by a Prüfer sequence plus an orientation mask:
// bit i of the mask flips the i-th canonical edge from (min -> max) to
// (max -> min). Throws std::invalid_argument on a bad sequence or mask.
DirectedTree tree_from_label(int p, const std::vector<int>& sequence, std::uint64_t orientation);

inline constexpr int kDefaultTreeEnumGuard = 8;

// Streams every directed spanning tree on p labeled vertices exactly once:
// Prüfer sequences in lexicographic order, crossed with all 2^(p-1) edge
// orientations. Bit i of the orientation mask flips the i-th canonical edge
// from (min -> max) to (max -> min); masks ascend within each sequence.
class TreeEnumerator {
public:
    explicit TreeEnumerator(int p, int max_p = kDefaultTreeEnumGuard);

    std::optional<DirectedTree> next();

    // Label of the tree most recently returned by next().
    const std::vector<int>& sequence() const { return last_prufer_; }
    std::uint64_t orientation() const { return last_orient_; }

private:
    void advance();

    int p_ = 0;
    std::vector<int> prufer_;
    std::vector<int> last_prufer_;
    std::vector<std::pair<int, int>> base_edges_;
    std::uint64_t orient_ = 0;
    std::uint64_t last_orient_ = 0;
    bool done_ = false;
};

}  // namespace pdsm
