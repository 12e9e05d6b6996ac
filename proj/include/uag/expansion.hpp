// Out-neighborhoods, (alpha,beta)-expander certification, and the analytic
// tail bounds with their union-bound sums.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "uag/graph.hpp"
#include "uag/rng.hpp"
#include "uag/vertex_subset.hpp"

namespace uag {

struct NeighborhoodReport {
    VertexSubset x;
    VertexSubset neighbors;  // N(X), disjoint from X
};
NeighborhoodReport out_neighbors(const UagGraph& g, const VertexSubset& x);

enum class CertificateMethod { exact, sampled };

struct ExpanderCertificate {
    double alpha = 0;
    double beta = 0;
    bool pass = false;
    CertificateMethod method = CertificateMethod::exact;
    // Lexicographically least violator on exact fail; the found violator on
    // sampled fail. Always verified against the graph before being reported.
    std::optional<VertexSubset> witness;
    std::uint64_t subsets_checked = 0;
};

inline constexpr std::uint64_t kDefaultSubsetCap = 100'000'000ull;

// Scans every subset of size <= floor(alpha * n) in lexicographic (DFS) order,
// so a failure carries the lexicographically least violating set. Refuses if
// the subset count exceeds the cap.
ExpanderCertificate is_expander_exact(const UagGraph& g, double alpha, double beta,
                                      std::uint64_t cap = kDefaultSubsetCap);

// One-sided heuristic: all suffix sets [n-m+1, n] are always scanned (they are
// the distribution's worst case); random subsets are then drawn with sizes
// weighted by the analytic tail bounds. A fail is sound; a pass is only
// evidence and is labeled `sampled`.
ExpanderCertificate is_expander_sampled(const UagGraph& g, double alpha, double beta,
                                        std::uint64_t trials, const RngSpec& rng);

enum class TailVariant { below_m, below_2m };

// P(|N([n-m+1,n])| < m)  <=  C(n-m, m-1)  * ((2m)_m / (n)_m)^k   (below_m)
// P(|N([n-m+1,n])| < 2m) <=  C(n-m, 2m-1) * ((3m)_m / (n)_m)^k   (below_2m)
struct TailBound {
    int n = 0, m = 0, k = 0;
    TailVariant variant = TailVariant::below_m;
    long double log_value = 0;  // natural log
    double value() const;
};
TailBound tail_bound(int n, int m, int k, TailVariant variant);

// log of the falling factorial (a)_j = a(a-1)...(a-j+1).
long double log_falling_factorial(int a, int j);
long double log_binomial(int n, int m);

enum class UnionBoundVariant { match, hamilton };

// Sum of q_m over m = 2..floor(alpha n) (match) or q'_m over m = 1..floor(alpha n)
// (hamilton), in log space. Requires k >= 3 (match) / k >= 4 (hamilton) and
// alpha below the corresponding entropy-equation threshold.
struct UnionBoundSum {
    int n = 0, k = 0;
    UnionBoundVariant variant = UnionBoundVariant::match;
    double alpha = 0;
    int terms = 0;
    long double log_value = 0;  // -inf for the empty sum
    double value() const;
    // log of a single q_m / q'_m term, for term-by-term diagnostics.
    static long double log_term(int n, int m, int k, UnionBoundVariant variant);
};
UnionBoundSum union_bound_sum(int n, int k, double alpha, UnionBoundVariant variant);

}  // namespace uag
