// Lexicographic order on l-subsets, the cover-pair block swap on choice
// sequences, and exhaustive verification of neighborhood dominance at small n.
#pragma once

#include <cstdint>
#include <vector>

#include "uag/choice_sequence.hpp"
#include "uag/graph.hpp"
#include "uag/vertex_subset.hpp"

namespace uag {

// Componentwise <= on the sorted elements. Sizes must match.
bool lex_leq(const VertexSubset& x, const VertexSubset& y);

// X' = X - {x} + {x+1}: the atomic step of the coupling.
struct CoverPair {
    int pivot = 0;
    VertexSubset x;
    VertexSubset x_prime;
};
CoverPair make_cover_pair(const VertexSubset& x, int pivot);

// Chain X = S_0, S_1, ..., S_r = Y of cover steps; requires lex_leq(X, Y).
// Canonical rule: bump the largest incrementable element first.
std::vector<CoverPair> cover_decompose(const VertexSubset& x, const VertexSubset& y);

// The block swap z -> z': blocks before the pivot untouched, blocks pivot and
// pivot+1 swapped positionwise except where block pivot+1 holds the pivot
// itself, and pivot <-> pivot+1 relabeled in all later blocks. The map is an
// involution for fixed pivot. Pivot must satisfy 2 <= pivot <= n-1.
ChoiceSequence swap_map(const ChoiceSequence& z, int pivot);

// |N(X')| in the swapped graph never exceeds |N(X)| in the original.
bool verify_neighbor_claim(const ChoiceSequence& z, const CoverPair& pair);

struct DominanceReport {
    int n = 0, k = 0, m = 0;
    VertexSubset x, y;
    std::uint64_t total = 0;    // (n-1)!^k
    std::uint64_t count_x = 0;  // #{z : |N(X)| >= m}
    std::uint64_t count_y = 0;  // #{z : |N(Y)| >= m}
    bool dominates = false;     // count_x >= count_y
};

// Exact counting over every choice sequence; requires lex_leq(X, Y) and an
// enumerable support.
DominanceReport verify_dominance_exact(int n, int k, const VertexSubset& x,
                                       const VertexSubset& y, int m,
                                       std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace uag
