// Rotation closures keep a materialized path per discovered endpoint: memory
// O(path^2), but reconstruction during the search stays cheap, which is what
// the incremental growth loop needs.
#include "uag/hamilton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "uag/expansion.hpp"

namespace uag {

namespace {

bool adj_has_edge(const AdjacencyList& adj, int u, int v) {
    const auto& nb = adj[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

void validate_path(const AdjacencyList& adj, const std::vector<int>& path, int anchor) {
    if (path.empty()) throw std::invalid_argument("path must be nonempty");
    const int n = static_cast<int>(adj.size()) - 1;
    std::vector<char> seen(n + 1, 0);
    for (int v : path) {
        if (v < 1 || v > n) throw std::invalid_argument("path vertex out of range");
        if (seen[v]) throw std::invalid_argument("path repeats a vertex");
        seen[v] = 1;
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!adj_has_edge(adj, path[i], path[i + 1]))
            throw std::invalid_argument("path uses a missing edge");
    if (path.front() != anchor && path.back() != anchor)
        throw std::invalid_argument("anchor must be an endpoint of the path");
}

std::vector<int> rotate_path_impl(const AdjacencyList& adj, const std::vector<int>& path,
                                  int pivot) {
    const int len = static_cast<int>(path.size());
    if (len < 3) throw std::invalid_argument("rotate: path too short");
    const int free_end = path.back();
    auto it = std::find(path.begin(), path.end(), pivot);
    if (it == path.end()) throw std::invalid_argument("rotate: pivot not on path");
    const int i = static_cast<int>(it - path.begin());
    if (i >= len - 2)
        throw std::invalid_argument("rotate: pivot must precede the free endpoint's neighbor");
    if (!adj_has_edge(adj, pivot, free_end))
        throw std::invalid_argument("rotate: pivot not adjacent to the free endpoint");
    std::vector<int> out(path.begin(), path.begin() + i + 1);
    for (int j = len - 1; j > i; --j) out.push_back(path[j]);
    return out;
}

// Breadth-first rotation closure with anchor fixed, deduplicated by
// endpoint: a sound under-approximation of END used by the large-n engines
// (a full closure explores distinct paths and can blow up combinatorially).
// Keeps a path per discovered endpoint so successor rotations read straight
// off it.
struct Closure {
    std::vector<int> base_path;  // oriented anchor-first
    int anchor = 0;
    std::vector<int> order;                      // endpoints in discovery order
    std::vector<std::vector<int>> paths;         // paths[i] realizes order[i]
    std::vector<std::vector<int>> pivot_seqs;    // rotations from base_path
    std::unordered_map<int, int> index_of;       // endpoint -> discovery index

    const std::vector<int>& path_of(int endpoint) const {
        return paths[index_of.at(endpoint)];
    }
    bool contains(int v) const { return index_of.count(v) != 0; }
    std::vector<int> sorted_ends() const {
        std::vector<int> ends = order;
        std::sort(ends.begin(), ends.end());
        return ends;
    }
};

Closure closure_compute(const AdjacencyList& adj, std::vector<int> path, int anchor) {
    validate_path(adj, path, anchor);
    if (path.back() == anchor && path.size() > 1)
        std::reverse(path.begin(), path.end());

    Closure c;
    c.anchor = anchor;
    c.base_path = path;
    c.order.push_back(path.back());
    c.index_of.emplace(path.back(), 0);
    c.paths.push_back(std::move(path));
    c.pivot_seqs.emplace_back();

    const int n = static_cast<int>(adj.size()) - 1;
    std::vector<int> pos(n + 1, -1);
    for (std::size_t qi = 0; qi < c.order.size(); ++qi) {
        const std::vector<int> pe = c.paths[qi];  // copy: c.paths may reallocate
        const int len = static_cast<int>(pe.size());
        if (len < 3) continue;
        const int free_end = pe.back();
        for (int j = 0; j < len; ++j) pos[pe[j]] = j;
        for (int x : adj[free_end]) {
            const int i = pos[x];
            if (i < 0 || i >= len - 2) continue;  // off path, or a no-op pivot
            const int next_end = pe[i + 1];
            if (c.contains(next_end)) continue;
            std::vector<int> rotated(pe.begin(), pe.begin() + i + 1);
            for (int j = len - 1; j > i; --j) rotated.push_back(pe[j]);
            std::vector<int> seq = c.pivot_seqs[qi];
            seq.push_back(x);
            c.index_of.emplace(next_end, static_cast<int>(c.order.size()));
            c.order.push_back(next_end);
            c.paths.push_back(std::move(rotated));
            c.pivot_seqs.push_back(std::move(seq));
        }
        for (int j = 0; j < len; ++j) pos[pe[j]] = -1;
    }
    return c;
}

RotationState state_from(const Closure& c) {
    RotationState st;
    st.path = c.base_path;
    st.anchor = c.anchor;
    st.end_set = VertexSubset(c.sorted_ends());
    for (std::size_t i = 0; i < c.order.size(); ++i)
        st.pivot_sequences.emplace(c.order[i], c.pivot_seqs[i]);
    return st;
}

HamiltonCertificate certified(const UagGraph& g, std::vector<int> cycle) {
    HamiltonCertificate cert{std::move(cycle)};
    if (!verify_certificate(g, cert))
        throw std::logic_error("produced an invalid Hamilton certificate");
    return cert;
}

// When the tracked path spans all vertices, any existing anchor-to-END edge
// closes a Hamilton cycle.
std::optional<std::vector<int>> spanning_close(const AdjacencyList& adj, const Closure& c,
                                               int n) {
    if (static_cast<int>(c.base_path.size()) != n || n < 3) return std::nullopt;
    for (int e : c.order)
        if (adj_has_edge(adj, c.anchor, e)) return c.path_of(e);
    return std::nullopt;
}

}  // namespace

std::vector<int> rotate_path(const UagGraph& g, const std::vector<int>& path, int pivot) {
    validate_path(g.adjacency(), path, path.front());
    return rotate_path_impl(g.adjacency(), path, pivot);
}

RotationState rotate(const UagGraph& g, const RotationState& state, int pivot) {
    RotationState out;
    out.path = rotate_path(g, state.path, pivot);
    out.anchor = state.anchor;
    return out;
}

RotationState end_set(const UagGraph& g, const std::vector<int>& path, int anchor) {
    const AdjacencyList& adj = g.adjacency();
    validate_path(adj, path, anchor);
    std::vector<int> base = path;
    if (base.back() == anchor && base.size() > 1)
        std::reverse(base.begin(), base.end());

    RotationState st;
    st.anchor = anchor;
    st.path = base;
    st.pivot_sequences.emplace(base.back(), std::vector<int>{});

    constexpr std::size_t kPathCap = 1'000'000;
    auto key_of = [](const std::vector<int>& p) {
        std::string key;
        key.reserve(p.size() * 2);
        for (int v : p) {
            key.push_back(static_cast<char>(v & 0xff));
            key.push_back(static_cast<char>((v >> 8) & 0xff));
        }
        return key;
    };

    // Closure over distinct paths: rotations from one realization of an
    // endpoint may be unavailable from another.
    std::unordered_set<std::string> visited;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> queue;  // (path, pivots)
    visited.insert(key_of(base));
    queue.emplace_back(base, std::vector<int>{});

    const int n = static_cast<int>(adj.size()) - 1;
    std::vector<int> pos(n + 1, -1);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const auto [pe, seq] = queue[qi];  // copy: queue may reallocate
        const int len = static_cast<int>(pe.size());
        if (len < 3) continue;
        const int free_end = pe.back();
        for (int j = 0; j < len; ++j) pos[pe[j]] = j;
        for (int x : adj[free_end]) {
            const int i = pos[x];
            if (i < 0 || i >= len - 2) continue;
            std::vector<int> rotated(pe.begin(), pe.begin() + i + 1);
            for (int j = len - 1; j > i; --j) rotated.push_back(pe[j]);
            if (!visited.insert(key_of(rotated)).second) continue;
            if (visited.size() > kPathCap)
                throw std::runtime_error("end_set: rotation path family exceeds cap");
            std::vector<int> next_seq = seq;
            next_seq.push_back(x);
            st.pivot_sequences.emplace(rotated.back(), next_seq);
            queue.emplace_back(std::move(rotated), std::move(next_seq));
        }
        for (int j = 0; j < len; ++j) pos[pe[j]] = -1;
    }

    std::vector<int> ends;
    ends.reserve(st.pivot_sequences.size());
    for (const auto& [e, seq] : st.pivot_sequences) ends.push_back(e);
    st.end_set = VertexSubset(std::move(ends));
    return st;
}

std::vector<int> witness_path(const UagGraph& g, const RotationState& state, int endpoint) {
    auto it = state.pivot_sequences.find(endpoint);
    if (it == state.pivot_sequences.end())
        throw std::invalid_argument("witness_path: endpoint not in END set");
    std::vector<int> cur = state.path;
    for (int pivot : it->second) cur = rotate_path_impl(g.adjacency(), cur, pivot);
    return cur;
}

bool check_end_expansion(const UagGraph& g, const RotationState& state) {
    auto hood = out_neighbors(g, state.end_set);
    return hood.neighbors.size() < 2 * state.end_set.size();
}

bool verify_certificate(const UagGraph& g, const HamiltonCertificate& cert) {
    const int n = g.vertex_count();
    if (n < 3 || static_cast<int>(cert.cycle.size()) != n) return false;
    std::vector<char> seen(n + 1, 0);
    for (int v : cert.cycle) {
        if (v < 1 || v > n || seen[v]) return false;
        seen[v] = 1;
    }
    for (int i = 0; i < n; ++i)
        if (!g.has_edge(cert.cycle[i], cert.cycle[(i + 1) % n])) return false;
    return true;
}

CloseOrExtendResult close_or_extend(const UagGraph& g, const RotationState& state,
                                    std::pair<int, int> new_edge) {
    CloseOrExtendResult result;
    auto [a, e] = new_edge;
    if (e == state.anchor) std::swap(a, e);
    if (a != state.anchor) {
        result.reason = "edge does not touch the anchor";
        return result;
    }
    if (!state.end_set.contains(e) || e == a) {
        result.reason = "edge endpoint is not an END member";
        return result;
    }
    if (!g.has_edge(a, e)) {
        result.reason = "edge not present in the graph";
        return result;
    }
    std::vector<int> cycle = witness_path(g, state, e);
    const int len = static_cast<int>(cycle.size());
    if (len == g.vertex_count() && len >= 3) {
        result.kind = CloseOrExtendResult::Kind::certificate;
        result.certificate = certified(g, std::move(cycle));
        return result;
    }
    // Find an edge leaving the cycle and open it into a longer path.
    std::vector<char> on_cycle(g.vertex_count() + 1, 0);
    for (int v : cycle) on_cycle[v] = 1;
    for (int i = 0; i < len; ++i) {
        const int c = cycle[i];
        for (int d : g.neighbors(c)) {
            if (on_cycle[d]) continue;
            std::vector<int> longer{d};
            for (int j = i; j >= 0; --j) longer.push_back(cycle[j]);
            for (int j = len - 1; j > i; --j) longer.push_back(cycle[j]);
            result.kind = CloseOrExtendResult::Kind::longer_path;
            result.path = std::move(longer);
            return result;
        }
    }
    result.reason = "cycle is non-spanning but no edge leaves it";
    return result;
}

GrowthRun grow_longest_path_run(int n, int k, const RngSpec& rng) {
    if (n < 1 || k < 1)
        throw std::invalid_argument("grow_longest_path_run: n and k must be >= 1");
    GrowthRun run;
    run.trajectory.n = n;
    run.trajectory.k = k;
    run.trajectory.t0 = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    run.trajectory.lengths.assign(n + 1, 0);
    run.trajectory.events.assign(n + 1, 0);
    run.trajectory.end_sizes.assign(n + 1, 0);

    AdjacencyList adj(2);
    std::vector<int> path{1};
    int anchor = 1;
    run.trajectory.lengths[1] = 1;

    auto eng = make_engine(rng);
    std::vector<int> choices(k);
    std::vector<char> in_end(n + 1, 0);
    Closure closure;
    bool closure_stale = true;

    for (int t = 1; t < n; ++t) {
        // END(P_t, a_t) over G_t. A miss leaves both path and chord set
        // unchanged (the newcomer is off-path), so the closure is reusable.
        if (closure_stale) {
            if (path.size() == 1) {
                closure = Closure{};
                closure.anchor = anchor;
                closure.base_path = path;
                closure.order = {anchor};
                closure.paths = {path};
                closure.index_of = {{anchor, 0}};
            } else {
                closure = closure_compute(adj, path, anchor);
            }
            std::fill(in_end.begin(), in_end.end(), 0);
            for (int e : closure.order) in_end[e] = 1;
            closure_stale = false;
        }
        run.trajectory.end_sizes[t] = static_cast<int>(closure.order.size());

        for (int j = 0; j < k; ++j) choices[j] = uniform_vertex(eng, t);
        int hit = 0;
        for (int z : choices)
            if (in_end[z]) {
                hit = z;
                break;
            }
        add_exposed_vertex(adj, choices);
        if (hit) {
            std::vector<int> extended = closure.path_of(hit);
            extended.push_back(t + 1);
            path = std::move(extended);
            run.trajectory.events[t] = 1;
            closure_stale = true;
        }
        run.trajectory.lengths[t + 1] = static_cast<int>(path.size());
    }
    run.graph = UagGraph(n, std::move(adj));
    run.path = std::move(path);
    run.anchor = anchor;
    return run;
}

PathTrajectory grow_longest_path_incremental(int n, int k, const RngSpec& rng) {
    return grow_longest_path_run(n, k, rng).trajectory;
}

BoostResult boost_with_fresh_choices(const UagGraph& g, std::vector<int> path, int anchor,
                                     int k, const RngSpec& rng) {
    if (k < 1) throw std::invalid_argument("boost_with_fresh_choices: k must be >= 1");
    const int n = g.vertex_count();
    validate_path(g.adjacency(), path, anchor);
    if (path.back() == anchor && path.size() > 1)
        std::reverse(path.begin(), path.end());

    AdjacencyList adj = g.adjacency();
    auto insert_edge = [&adj](int u, int v) {
        auto& nu = adj[u];
        auto it = std::lower_bound(nu.begin(), nu.end(), v);
        if (it != nu.end() && *it == v) return;
        nu.insert(it, v);
        auto& nv = adj[v];
        nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    };

    BoostResult result;
    auto eng = make_engine(rng);
    std::vector<char> exposed(n + 1, 0);
    std::vector<int> choices(k);

    for (;;) {
        Closure fwd = closure_compute(adj, path, anchor);
        if (auto cycle = spanning_close(adj, fwd, n)) {
            result.certificate = certified(UagGraph(n, AdjacencyList(adj)), *cycle);
            break;
        }
        // Endpoints of equally long tracked paths: the anchor plus END(P, a).
        int w = 0;
        if (!exposed[anchor]) w = anchor;
        for (int e : fwd.order)
            if (!exposed[e] && e > w) w = e;
        if (!w) break;  // unexposed pool empty
        exposed[w] = 1;
        if (w == 1) continue;  // no older vertices to draw from

        // Re-anchor the witness path at w; its END set plays the role of B(w).
        std::vector<int> from_w = w == anchor ? fwd.base_path : fwd.path_of(w);
        Closure bwd = closure_compute(adj, from_w, w);

        for (int j = 0; j < k; ++j) choices[j] = uniform_vertex(eng, w - 1);
        int hit = 0;
        for (int z : choices)
            if (z != w && bwd.contains(z)) {
                hit = z;
                break;
            }
        for (int z : choices) insert_edge(w, z);
        ++result.exposures;
        if (!hit) continue;

        UagGraph current(n, AdjacencyList(adj));
        auto res = close_or_extend(current, state_from(bwd), {w, hit});
        if (res.kind == CloseOrExtendResult::Kind::certificate) {
            result.certificate = res.certificate;
            break;
        }
        if (res.kind == CloseOrExtendResult::Kind::longer_path) {
            // Exposure is permanent within a stage: each vertex spends its k
            // fresh choices at most once.
            path = res.path;
            anchor = path.front();
        }
    }
    result.graph = UagGraph(n, std::move(adj));
    result.path = std::move(path);
    result.anchor = anchor;
    return result;
}

BoostResult boost_with_fresh_choices(const UagGraph& g, int k, const RngSpec& rng) {
    // Greedy initial path from vertex 1: always step to the smallest unused
    // neighbor, then try the same from the other side.
    const int n = g.vertex_count();
    std::vector<char> used(n + 1, 0);
    std::vector<int> path{1};
    used[1] = 1;
    auto extend = [&](bool front) {
        for (;;) {
            int v = front ? path.front() : path.back();
            int next = 0;
            for (int u : g.neighbors(v))
                if (!used[u]) {
                    next = u;
                    break;
                }
            if (!next) return;
            used[next] = 1;
            if (front)
                path.insert(path.begin(), next);
            else
                path.push_back(next);
        }
    };
    extend(false);
    extend(true);
    return boost_with_fresh_choices(g, path, path.front(), k, rng);
}

StagedHamiltonResult staged_hamilton(int n, const std::vector<int>& stages,
                                     const RngSpec& rng) {
    if (stages.empty()) throw std::invalid_argument("staged_hamilton: stages must be nonempty");
    for (int s : stages)
        if (s < 1) throw std::invalid_argument("staged_hamilton: every stage needs k >= 1");
    constexpr std::uint64_t kStageStride = 64;
    if (stages.size() >= kStageStride)
        throw std::invalid_argument("staged_hamilton: too many stages");

    StagedHamiltonResult result;
    result.n = n;
    auto stage_rng = [&](int i) {
        return RngSpec{rng.seed, rng.stream * kStageStride + static_cast<std::uint64_t>(i)};
    };

    GrowthRun growth = grow_longest_path_run(n, stages[0], stage_rng(0));
    result.stage_path_lengths.push_back(static_cast<int>(growth.path.size()));
    result.stages_run = 1;

    UagGraph graph = std::move(growth.graph);
    std::vector<int> path = std::move(growth.path);
    int anchor = growth.anchor;

    // A spanning path may already close on existing edges.
    if (static_cast<int>(path.size()) == n && n >= 3) {
        Closure c = closure_compute(graph.adjacency(), path, anchor);
        if (auto cycle = spanning_close(graph.adjacency(), c, n)) {
            result.certificate = certified(graph, *cycle);
            result.graph = std::move(graph);
            return result;
        }
    }

    for (std::size_t i = 1; i < stages.size(); ++i) {
        BoostResult boost = boost_with_fresh_choices(graph, path, anchor, stages[i],
                                                     stage_rng(static_cast<int>(i)));
        ++result.stages_run;
        graph = std::move(boost.graph);
        if (boost.certificate) {
            result.stage_path_lengths.push_back(n);
            result.certificate = boost.certificate;
            result.graph = std::move(graph);
            return result;
        }
        path = std::move(boost.path);
        anchor = boost.anchor;
        result.stage_path_lengths.push_back(static_cast<int>(path.size()));
    }
    result.graph = std::move(graph);
    return result;
}

bool exact_hamiltonicity(const UagGraph& g) {
    const int n = g.vertex_count();
    if (n > 18)
        throw std::invalid_argument("exact_hamiltonicity: refusing n > 18");
    if (n < 3) return false;
    const std::uint32_t full = (1u << n) - 1;
    // dp[mask] = endpoint bitset of paths from vertex 1 covering exactly mask.
    std::vector<std::uint32_t> dp(static_cast<std::size_t>(1) << n, 0);
    dp[1] = 1;  // the single-vertex path at 1
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::uint32_t ends = dp[mask];
        if (!ends || !(mask & 1u)) continue;
        while (ends) {
            const int v = std::countr_zero(ends) + 1;
            ends &= ends - 1;
            for (int u : g.neighbors(v)) {
                const std::uint32_t bit = 1u << (u - 1);
                if (!(mask & bit)) dp[mask | bit] |= bit;
            }
        }
    }
    std::uint32_t closers = dp[full];
    while (closers) {
        const int v = std::countr_zero(closers) + 1;
        closers &= closers - 1;
        if (v != 1 && g.has_edge(v, 1)) return true;
    }
    return false;
}

}  // namespace uag
