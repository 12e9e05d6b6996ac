// Edmonds blossom search, written so that a single augmentation from a chosen
// root is available to the incremental processes, and so that a failed search
// marks the even-alternating-reachable (outer) vertices, which is exactly the
// exposed set A(G) when the matching is maximum.
#include "uag/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uag/expansion.hpp"

namespace uag {

namespace {

// Vertices are 1-indexed; 0 is the null sentinel throughout.
struct BlossomSolver {
    const AdjacencyList* adj = nullptr;
    std::vector<int> match;
    std::vector<int> parent, base, queue;
    std::vector<char> used, in_blossom, lca_mark;

    int n() const { return static_cast<int>(adj->size()) - 1; }

    void bind(const AdjacencyList& a) {
        adj = &a;
        match.resize(a.size(), 0);
        parent.assign(a.size(), 0);
        base.resize(a.size());
        used.assign(a.size(), 0);
        in_blossom.assign(a.size(), 0);
        lca_mark.assign(a.size(), 0);
    }

    void greedy_init() {
        for (int v = 1; v <= n(); ++v)
            if (!match[v])
                for (int u : (*adj)[v])
                    if (!match[u]) {
                        match[v] = u;
                        match[u] = v;
                        break;
                    }
    }

    int lca(int a, int b) {
        std::fill(lca_mark.begin(), lca_mark.end(), 0);
        int x = a;
        for (;;) {
            x = base[x];
            lca_mark[x] = 1;
            if (!match[x]) break;  // reached the root
            x = parent[match[x]];
        }
        int y = b;
        for (;;) {
            y = base[y];
            if (lca_mark[y]) return y;
            y = parent[match[y]];
        }
    }

    void mark_path(int v, int stop, int child) {
        while (base[v] != stop) {
            in_blossom[base[v]] = 1;
            in_blossom[base[match[v]]] = 1;
            parent[v] = child;
            child = match[v];
            v = parent[match[v]];
        }
    }

    void augment_along(int v) {
        while (v) {
            int pv = parent[v], ppv = match[pv];
            match[v] = pv;
            match[pv] = v;
            v = ppv;
        }
    }

    // One alternating-forest search from `root`. On success the matching is
    // flipped and true returned; on failure `used` holds the outer vertices
    // reachable from root.
    bool try_augment(int root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(parent.begin(), parent.end(), 0);
        std::iota(base.begin(), base.end(), 0);
        used[root] = 1;
        queue.clear();
        queue.push_back(root);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int to : (*adj)[v]) {
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] && parent[match[to]])) {
                    // Odd cycle: contract the blossom to its base.
                    int cur = lca(v, to);
                    std::fill(in_blossom.begin(), in_blossom.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 1; i <= n(); ++i)
                        if (in_blossom[base[i]]) {
                            base[i] = cur;
                            if (!used[i]) {
                                used[i] = 1;
                                queue.push_back(i);
                            }
                        }
                } else if (!parent[to]) {
                    parent[to] = v;
                    if (!match[to]) {
                        augment_along(to);
                        return true;
                    }
                    used[match[to]] = 1;
                    queue.push_back(match[to]);
                }
            }
        }
        return false;
    }

    int solve_all() {
        greedy_init();
        for (int v = 1; v <= n(); ++v)
            if (!match[v]) try_augment(v);
        return size();
    }

    int size() const {
        int matched = 0;
        for (int v = 1; v <= n(); ++v)
            if (match[v]) ++matched;
        return matched / 2;
    }

    // Union over all free roots of the outer sets; with a maximum matching
    // this is the exposed set A(G). Must not find an augmenting path.
    std::vector<char> outer_union() {
        std::vector<char> outer(adj->size(), 0);
        for (int v = 1; v <= n(); ++v)
            if (!match[v]) {
                bool augmented = try_augment(v);
                if (augmented)
                    throw std::logic_error("outer_union called on a non-maximum matching");
                for (int u = 1; u <= n(); ++u)
                    if (used[u]) outer[u] = 1;
            }
        return outer;
    }
};

Matching matching_from(const std::vector<int>& match, int n) {
    Matching m;
    for (int v = 1; v <= n; ++v) {
        if (!match[v])
            m.isolated.push_back(v);
        else if (v < match[v])
            m.edges.emplace_back(v, match[v]);
    }
    return m;
}

AdjacencyList erase_vertex(const AdjacencyList& adj, int v) {
    AdjacencyList sub = adj;
    sub[v].clear();
    for (std::size_t u = 1; u < sub.size(); ++u)
        std::erase(sub[u], v);
    return sub;
}

// Exposed set and matching size of an adjacency list, from scratch.
std::pair<std::vector<char>, int> exposed_of(const AdjacencyList& adj) {
    BlossomSolver solver;
    solver.bind(adj);
    int nu = solver.solve_all();
    return {solver.outer_union(), nu};
}

void insert_edge_sorted(AdjacencyList& adj, int u, int v) {
    auto& nu = adj[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) return;
    nu.insert(it, v);
    auto& nv = adj[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
}

}  // namespace

Matching maximum_matching(const UagGraph& g) {
    BlossomSolver solver;
    solver.bind(g.adjacency());
    solver.solve_all();
    return matching_from(solver.match, g.vertex_count());
}

bool has_perfect_matching(const UagGraph& g) {
    Matching m = maximum_matching(g);
    return g.vertex_count() - 2 * m.size() <= 1;
}

GallaiEdmondsReport exposed_structure(const UagGraph& g) {
    const int n = g.vertex_count();
    BlossomSolver solver;
    solver.bind(g.adjacency());
    const int nu = solver.solve_all();

    GallaiEdmondsReport report;
    report.max_matching_size = nu;
    std::vector<char> outer = solver.outer_union();
    std::vector<int> a_members;
    for (int v = 1; v <= n; ++v)
        if (outer[v]) a_members.push_back(v);
    report.a = VertexSubset(a_members);

    for (int v : a_members) {
        // B(v) = exposed set of G - v; since v is in A, G - v has the same
        // maximum matching size as G.
        auto [sub_outer, sub_nu] = exposed_of(erase_vertex(g.adjacency(), v));
        if (sub_nu != nu)
            throw std::logic_error("exposed_structure: matching size changed removing an A-vertex");
        std::vector<int> b_members;
        for (int w = 1; w <= n; ++w)
            if (w != v && sub_outer[w]) b_members.push_back(w);
        report.b.emplace(v, VertexSubset(std::move(b_members)));
    }
    return report;
}

bool check_B_contraction(const UagGraph& g) {
    const int n = g.vertex_count();
    GallaiEdmondsReport report = exposed_structure(g);
    if (n - 2 * report.max_matching_size <= 1)
        throw std::invalid_argument(
            "check_B_contraction: graph has a perfect matching (isolates <= 1)");
    for (const auto& [v, b] : report.b) {
        auto hood = out_neighbors(g, b);
        if (hood.neighbors.size() >= b.size()) return false;
    }
    return true;
}

MatchingTrajectory run_incremental_process(int n, int k, const RngSpec& rng) {
    if (n < 1 || k < 1)
        throw std::invalid_argument("run_incremental_process: n and k must be >= 1");
    MatchingTrajectory traj;
    traj.n = n;
    traj.k = k;
    traj.t0 = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    traj.kappa.assign(n + 1, 0);
    traj.xi.assign(n + 1, 0);
    traj.kappa[1] = 1;

    AdjacencyList adj(2);
    BlossomSolver solver;
    solver.bind(adj);
    auto eng = make_engine(rng);
    std::vector<int> choices(k);
    int nu = 0;
    for (int t = 2; t <= n; ++t) {
        for (int j = 0; j < k; ++j) choices[j] = uniform_vertex(eng, t - 1);
        add_exposed_vertex(adj, choices);
        solver.bind(adj);
        // All new edges touch t, and t arrives free, so any augmenting path
        // must end at t: one rooted search settles the step.
        if (solver.try_augment(t)) ++nu;
        traj.kappa[t] = t - 2 * nu;
        traj.xi[t] = traj.kappa[t - 1] != 0 && traj.kappa[t] == traj.kappa[t - 1] + 1;
    }
    traj.final_matching = matching_from(solver.match, n);
    traj.final_graph = UagGraph(n, std::move(adj));
    return traj;
}

AugmentationResult augment_with_fresh_choices(const UagGraph& g, int k,
                                              const RngSpec& rng) {
    if (k < 1) throw std::invalid_argument("augment_with_fresh_choices: k must be >= 1");
    const int n = g.vertex_count();
    AdjacencyList adj = g.adjacency();
    BlossomSolver solver;
    solver.bind(adj);
    int nu = solver.solve_all();

    AugmentationResult result;
    auto eng = make_engine(rng);
    std::vector<char> exposed(n + 1, 0);
    std::vector<int> choices;
    while (n - 2 * nu > 1) {
        std::vector<char> outer = solver.outer_union();
        int w = 0;
        for (int v = n; v >= 1; --v)
            if (outer[v] && !exposed[v]) {
                w = v;
                break;
            }
        if (!w) break;  // unexposed pool of A is empty
        exposed[w] = 1;

        AugmentationStep step;
        step.exposed_vertex = w;
        step.matching_size_before = nu;
        if (w > 1) {
            choices.assign(k, 0);
            for (int j = 0; j < k; ++j) choices[j] = uniform_vertex(eng, w - 1);
            step.choices = choices;
            for (int z : choices) insert_edge_sorted(adj, w, z);
            // The k new edges all touch w, so the matching can grow by at
            // most one; probe each free vertex for the augmenting path.
            for (int v = 1; v <= n; ++v)
                if (!solver.match[v] && solver.try_augment(v)) {
                    ++nu;
                    break;
                }
        }
        step.matching_size_after = nu;
        result.steps.push_back(std::move(step));
    }
    result.matching = matching_from(solver.match, n);
    result.graph = UagGraph(n, std::move(adj));
    return result;
}

}  // namespace uag
