#include "uag/coupling.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace uag {

bool lex_leq(const VertexSubset& x, const VertexSubset& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("lex_leq: subsets must have equal size");
    const auto& a = x.members();
    const auto& b = y.members();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

CoverPair make_cover_pair(const VertexSubset& x, int pivot) {
    if (!x.contains(pivot))
        throw std::invalid_argument("make_cover_pair: pivot not in X");
    if (x.contains(pivot + 1))
        throw std::invalid_argument("make_cover_pair: pivot+1 already in X");
    std::vector<int> next = x.members();
    *std::find(next.begin(), next.end(), pivot) = pivot + 1;
    return CoverPair{pivot, x, VertexSubset(std::move(next))};
}

std::vector<CoverPair> cover_decompose(const VertexSubset& x, const VertexSubset& y) {
    if (!lex_leq(x, y))
        throw std::invalid_argument("cover_decompose: X must precede Y lexicographically");
    std::vector<CoverPair> chain;
    VertexSubset cur = x;
    while (!(cur == y)) {
        const auto& c = cur.members();
        const auto& t = y.members();
        // Largest index still short of its target; bumping it cannot collide
        // with the next element (it would contradict the choice being largest).
        int idx = -1;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
            if (c[i] < t[i]) {
                idx = i;
                break;
            }
        CoverPair step = make_cover_pair(cur, c[idx]);
        cur = step.x_prime;
        chain.push_back(std::move(step));
    }
    return chain;
}

ChoiceSequence swap_map(const ChoiceSequence& z, int pivot) {
    validate(z);
    if (pivot < 2 || pivot > z.n - 1)
        throw std::invalid_argument("swap_map: pivot must satisfy 2 <= pivot <= n-1");
    ChoiceSequence out = z;
    const int x = pivot;
    for (int j = 0; j < z.k; ++j) {
        if (z.at(x + 1, j) == x) continue;  // held in place
        out.at(x, j) = z.at(x + 1, j);
        out.at(x + 1, j) = z.at(x, j);
    }
    for (int i = x + 2; i <= z.n; ++i)
        for (int j = 0; j < z.k; ++j) {
            if (z.at(i, j) == x)
                out.at(i, j) = x + 1;
            else if (z.at(i, j) == x + 1)
                out.at(i, j) = x;
        }
    validate(out);
    return out;
}

bool verify_neighbor_claim(const ChoiceSequence& z, const CoverPair& pair) {
    ChoiceSequence swapped = swap_map(z, pair.pivot);
    auto size_n = [](const UagGraph& g, const VertexSubset& s) {
        std::vector<char> in_s(g.vertex_count() + 1, 0), seen(g.vertex_count() + 1, 0);
        for (int v : s) in_s[v] = 1;
        int count = 0;
        for (int v : s)
            for (int u : g.neighbors(v))
                if (!in_s[u] && !seen[u]) {
                    seen[u] = 1;
                    ++count;
                }
        return count;
    };
    UagGraph orig = build_graph(z);
    UagGraph next = build_graph(swapped);
    return size_n(next, pair.x_prime) <= size_n(orig, pair.x);
}

DominanceReport verify_dominance_exact(int n, int k, const VertexSubset& x,
                                       const VertexSubset& y, int m, std::uint64_t cap) {
    if (!lex_leq(x, y))
        throw std::invalid_argument("verify_dominance_exact: X must precede Y");
    for (int v : y)
        if (v > n) throw std::invalid_argument("verify_dominance_exact: member beyond n");
    // Any enumerable support has n far below the 64-vertex mask limit.
    if (n > 62) throw std::invalid_argument("verify_dominance_exact: n too large");
    DominanceReport report;
    report.n = n;
    report.k = k;
    report.m = m;
    report.x = x;
    report.y = y;
    report.total = enumeration_count(n, k, cap);

    std::uint64_t mask_x = 0, mask_y = 0;
    for (int v : x) mask_x |= 1ull << (v - 1);
    for (int v : y) mask_y |= 1ull << (v - 1);
    std::vector<std::uint64_t> adj(n + 1);
    for_each_choice_sequence(
        n, k,
        [&](const ChoiceSequence& z) {
            std::fill(adj.begin(), adj.end(), 0);
            for (int i = 2; i <= n; ++i)
                for (int j = 0; j < k; ++j) {
                    const int u = z.at(i, j);
                    adj[i] |= 1ull << (u - 1);
                    adj[u] |= 1ull << (i - 1);
                }
            std::uint64_t hood_x = 0, hood_y = 0;
            for (int v : x) hood_x |= adj[v];
            for (int v : y) hood_y |= adj[v];
            if (std::popcount(hood_x & ~mask_x) >= m) ++report.count_x;
            if (std::popcount(hood_y & ~mask_y) >= m) ++report.count_y;
        },
        cap);
    report.dominates = report.count_x >= report.count_y;
    return report;
}

}  // namespace uag
