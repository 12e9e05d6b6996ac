#include "uag/graph.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace uag {

void add_exposed_vertex(AdjacencyList& adj, std::span<const int> choices) {
    const int v = static_cast<int>(adj.size());  // slot 0 unused
    const int t = v - 1;
    for (int u : choices)
        if (u < 1 || u > t)
            throw std::invalid_argument("exposed vertex " + std::to_string(v) +
                                        ": choice out of [1, " + std::to_string(t) + "]");
    std::vector<int> block(choices.begin(), choices.end());
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    for (int u : block) adj[u].push_back(v);
    adj.push_back(std::move(block));
}

UagGraph::UagGraph(int n, AdjacencyList adjacency, std::optional<ChoiceSequence> provenance)
    : adj_(std::move(adjacency)), provenance_(std::move(provenance)) {
    if (n < 1 || adj_.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("UagGraph: adjacency must have n+1 slots");
}

UagGraph::UagGraph(int n, std::span<const std::pair<int, int>> edges) {
    if (n < 1) throw std::invalid_argument("UagGraph: n must be >= 1");
    adj_.assign(n + 1, {});
    for (auto [u, v] : edges) {
        if (u < 1 || v < 1 || u > n || v > n)
            throw std::invalid_argument("UagGraph: edge endpoint out of [1, n]");
        if (u == v) continue;
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
}

int UagGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& nb : adj_) total += nb.size();
    return static_cast<int>(total / 2);
}

bool UagGraph::has_edge(int u, int v) const {
    if (u < 1 || v < 1 || u > vertex_count() || v > vertex_count()) return false;
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<int, int>> UagGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 1; u <= vertex_count(); ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

UagGraph build_graph(const ChoiceSequence& z) {
    validate(z);
    AdjacencyList adj(2);
    for (int i = 2; i <= z.n; ++i) add_exposed_vertex(adj, z.block(i));
    return UagGraph(z.n, std::move(adj), z);
}

UagGraph expose_vertex(const UagGraph& g, std::span<const int> choices) {
    AdjacencyList adj = g.adjacency();
    add_exposed_vertex(adj, choices);
    return UagGraph(g.vertex_count() + 1, std::move(adj));
}

bool is_connected(const UagGraph& g) {
    const int n = g.vertex_count();
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbors(v))
            if (!seen[u]) {
                seen[u] = 1;
                ++visited;
                stack.push_back(u);
            }
    }
    return visited == n;
}

std::string to_text(const UagGraph& g) {
    std::ostringstream out;
    out << g.vertex_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

UagGraph graph_from_text(std::istream& in) {
    int n = 0;
    if (!(in >> n) || n < 1) throw std::runtime_error("graph parse: bad vertex count");
    std::vector<std::pair<int, int>> edges;
    int u, v;
    while (in >> u >> v) edges.emplace_back(u, v);
    return UagGraph(n, edges);
}

}  // namespace uag
