// Simple undirected graph on [n], as obtained from a choice sequence by
// forgetting orientations and multiplicities. Immutable once built.
#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uag/choice_sequence.hpp"

namespace uag {

// 1-indexed adjacency; slot 0 is unused.
using AdjacencyList = std::vector<std::vector<int>>;

class UagGraph {
  public:
    UagGraph() : adj_(2) {}
    // Adjacency must already be symmetric, loop-free, sorted and deduplicated;
    // build helpers below take care of that.
    UagGraph(int n, AdjacencyList adjacency,
             std::optional<ChoiceSequence> provenance = std::nullopt);
    // From an edge list (dedupes, drops loops, symmetrizes).
    UagGraph(int n, std::span<const std::pair<int, int>> edges);

    int vertex_count() const { return static_cast<int>(adj_.size()) - 1; }
    int edge_count() const;
    std::span<const int> neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;
    const AdjacencyList& adjacency() const { return adj_; }
    const std::optional<ChoiceSequence>& provenance() const { return provenance_; }

    // Sorted u<v pairs, lexicographic.
    std::vector<std::pair<int, int>> edges() const;

  private:
    AdjacencyList adj_;
    std::optional<ChoiceSequence> provenance_;
};

// For u < v, edge {u,v} is present iff u appears in block v.
UagGraph build_graph(const ChoiceSequence& z);

// Returns g plus vertex t+1 attached along the (deduplicated) choices;
// g itself is untouched. Choices must lie in [1, t].
UagGraph expose_vertex(const UagGraph& g, std::span<const int> choices);

bool is_connected(const UagGraph& g);

// Edge-list text format: first line "n", then one "u v" line per edge (u<v).
std::string to_text(const UagGraph& g);
UagGraph graph_from_text(std::istream& in);

// Sorted, deduplicated adjacency from raw (possibly repeated) choice blocks.
void add_exposed_vertex(AdjacencyList& adj, std::span<const int> choices);

}  // namespace uag
