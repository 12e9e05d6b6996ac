// Maximum matchings on general graphs, the exposed-vertex structure A(G) and
// B(v), and the two matching-construction processes: one-at-a-time vertex
// exposure and fresh-choice augmentation.
#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "uag/graph.hpp"
#include "uag/rng.hpp"
#include "uag/vertex_subset.hpp"

namespace uag {

struct Matching {
    std::vector<std::pair<int, int>> edges;  // u < v, sorted
    std::vector<int> isolated;               // vertices covered by no edge
    int size() const { return static_cast<int>(edges.size()); }
};

Matching maximum_matching(const UagGraph& g);

// Perfect matching here means a matching isolating at most one vertex,
// which accommodates odd orders.
bool has_perfect_matching(const UagGraph& g);

struct GallaiEdmondsReport {
    // A: vertices missed by at least one maximum matching.
    VertexSubset a;
    // B(v) for v in A: vertices w != v such that some maximum matching covers
    // neither v nor w. Equals the exposed set of G - v.
    std::map<int, VertexSubset> b;
    int max_matching_size = 0;
};
GallaiEdmondsReport exposed_structure(const UagGraph& g);

// Checks |N(B(v))| < |B(v)| for every v in A. Requires that every maximum
// matching isolates >= 2 vertices (no perfect matching in the at-most-one-isolated sense);
// throws std::invalid_argument otherwise.
bool check_B_contraction(const UagGraph& g);

struct MatchingTrajectory {
    int n = 0, k = 0;
    int t0 = 0;                  // floor(sqrt(n)) warmup step
    std::vector<int> kappa;      // kappa[t] for t in [1, n]; kappa[0] unused
    std::vector<std::uint8_t> xi;  // xi[t] for t in [2, n]: kappa stepped up from nonzero
    UagGraph final_graph;
    Matching final_matching;
};

// Reveals vertices 2..n one at a time with k fresh choices each, repairing the
// matching by a single augmenting-path search per step (kappa moves by
// exactly 1 per exposure).
MatchingTrajectory run_incremental_process(int n, int k, const RngSpec& rng);

struct AugmentationStep {
    int exposed_vertex = 0;
    std::vector<int> choices;
    int matching_size_before = 0;
    int matching_size_after = 0;
};

struct AugmentationResult {
    UagGraph graph;
    Matching matching;
    std::vector<AugmentationStep> steps;
};

// The fresh-choice process: repeatedly expose the largest not-yet-exposed
// member of A(G_i) with k fresh uniform choices from its own past, improving
// the matching whenever a choice lands in B. Stops at a perfect matching
// (at most one vertex isolated) or when the unexposed pool of A empties.
AugmentationResult augment_with_fresh_choices(const UagGraph& g, int k,
                                              const RngSpec& rng);

}  // namespace uag
