#include "uag/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "uag/thresholds.hpp"

namespace uag {

namespace {
constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();

int size_cap(double alpha, int n) {
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("expander check: alpha must lie in [0, 1)");
    return static_cast<int>(std::floor(alpha * n + 1e-12));
}

std::uint64_t subset_count(int n, int max_size, std::uint64_t cap) {
    long double total = 0;
    long double binom = 1;  // C(n, 0)
    for (int m = 1; m <= max_size; ++m) {
        binom = binom * (n - m + 1) / m;
        total += binom;
        if (total > static_cast<long double>(cap) * 2) break;
    }
    if (total > static_cast<long double>(cap))
        throw std::runtime_error(
            "exact expander check refused: subset count exceeds cap; use sampled mode");
    return static_cast<std::uint64_t>(total);
}

// Exact |N(X)| for an explicit member list.
int neighborhood_size(const UagGraph& g, const std::vector<int>& members,
                      std::vector<char>& in_x, std::vector<char>& seen,
                      std::vector<int>& touched) {
    for (int v : members) in_x[v] = 1;
    int count = 0;
    for (int v : members)
        for (int u : g.neighbors(v))
            if (!in_x[u] && !seen[u]) {
                seen[u] = 1;
                touched.push_back(u);
                ++count;
            }
    for (int v : members) in_x[v] = 0;
    for (int u : touched) seen[u] = 0;
    touched.clear();
    return count;
}
}  // namespace

NeighborhoodReport out_neighbors(const UagGraph& g, const VertexSubset& x) {
    const int n = g.vertex_count();
    for (int v : x)
        if (v < 1 || v > n)
            throw std::invalid_argument("out_neighbors: subset member out of [1, n]");
    std::vector<char> in_x(n + 1, 0), seen(n + 1, 0);
    for (int v : x) in_x[v] = 1;
    std::vector<int> result;
    for (int v : x)
        for (int u : g.neighbors(v))
            if (!in_x[u] && !seen[u]) {
                seen[u] = 1;
                result.push_back(u);
            }
    return NeighborhoodReport{x, VertexSubset(std::move(result))};
}

ExpanderCertificate is_expander_exact(const UagGraph& g, double alpha, double beta,
                                      std::uint64_t cap) {
    const int n = g.vertex_count();
    const int max_size = size_cap(alpha, n);
    ExpanderCertificate cert;
    cert.alpha = alpha;
    cert.beta = beta;
    cert.method = CertificateMethod::exact;
    subset_count(n, max_size, cap);

    // DFS in lexicographic order over member sequences; the first violation
    // found is the lexicographically least one. |N(X)| is maintained
    // incrementally: cnt[u] = #neighbors of u inside X.
    std::vector<int> cnt(n + 1, 0), cur;
    std::vector<char> in_x(n + 1, 0);
    int nsize = 0;
    std::uint64_t checked = 0;

    auto add = [&](int v) {
        for (int u : g.neighbors(v))
            if (cnt[u]++ == 0 && !in_x[u]) ++nsize;
        if (cnt[v] > 0) --nsize;  // v stops being an out-neighbor
        in_x[v] = 1;
        cur.push_back(v);
    };
    auto remove = [&](int v) {
        cur.pop_back();
        in_x[v] = 0;
        if (cnt[v] > 0) ++nsize;
        for (int u : g.neighbors(v))
            if (--cnt[u] == 0 && !in_x[u]) --nsize;
    };

    std::vector<int> witness;
    auto dfs = [&](auto&& self, int start) -> bool {
        for (int v = start; v <= n; ++v) {
            add(v);
            ++checked;
            if (static_cast<double>(nsize) < beta * static_cast<double>(cur.size())) {
                witness = cur;
                remove(v);
                return true;
            }
            if (static_cast<int>(cur.size()) < max_size && self(self, v + 1)) {
                remove(v);
                return true;
            }
            remove(v);
        }
        return false;
    };
    bool violated = max_size >= 1 && dfs(dfs, 1);
    cert.subsets_checked = checked;
    cert.pass = !violated;
    if (violated) cert.witness = VertexSubset(std::move(witness));
    return cert;
}

ExpanderCertificate is_expander_sampled(const UagGraph& g, double alpha, double beta,
                                        std::uint64_t trials, const RngSpec& rng) {
    if (trials < 1) throw std::invalid_argument("is_expander_sampled: trials must be >= 1");
    const int n = g.vertex_count();
    const int max_size = size_cap(alpha, n);
    ExpanderCertificate cert;
    cert.alpha = alpha;
    cert.beta = beta;
    cert.method = CertificateMethod::sampled;
    if (max_size < 1) {
        cert.pass = true;
        return cert;
    }

    std::vector<char> in_x(n + 1, 0), seen(n + 1, 0);
    std::vector<int> touched;
    auto violates = [&](const std::vector<int>& members) {
        int nsize = neighborhood_size(g, members, in_x, seen, touched);
        return static_cast<double>(nsize) < beta * static_cast<double>(members.size());
    };

    // Suffix sets are the worst case of the distribution; scan them all first.
    std::vector<int> suffix;
    for (int m = 1; m <= max_size; ++m) {
        suffix.clear();
        for (int v = n - m + 1; v <= n; ++v) suffix.push_back(v);
        ++cert.subsets_checked;
        if (violates(suffix)) {
            cert.pass = false;
            cert.witness = VertexSubset(suffix);
            return cert;
        }
    }

    // Size weights follow the analytic tail bounds (small sizes dominate);
    // k is taken from provenance when present, else estimated from density.
    int k_est = g.provenance() ? g.provenance()->k
                               : std::max(1, (n > 1 ? g.edge_count() / (n - 1) : 1));
    const TailVariant variant = beta <= 1.0 ? TailVariant::below_m : TailVariant::below_2m;
    std::vector<long double> logw(max_size + 1, kNegInf);
    long double peak = kNegInf;
    for (int m = 1; m <= max_size; ++m) {
        const bool in_domain =
            variant == TailVariant::below_m ? 2 * m <= n : 3 * m <= n;
        if (in_domain) logw[m] = tail_bound(n, m, k_est, variant).log_value;
        peak = std::max(peak, logw[m]);
    }
    std::vector<double> cdf(max_size + 1, 0.0);
    double acc = 0;
    for (int m = 1; m <= max_size; ++m) {
        acc += peak == kNegInf ? 1.0 : static_cast<double>(std::exp(logw[m] - peak));
        cdf[m] = acc;
    }

    auto eng = make_engine(rng);
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    std::vector<int> sample;
    for (std::uint64_t t = 0; t < trials; ++t) {
        double r = static_cast<double>(bounded_u64(eng, 1u << 30)) / (1u << 30) * acc;
        int m = 1;
        while (m < max_size && cdf[m] < r) ++m;
        // Partial Fisher-Yates for a uniform m-subset.
        sample.clear();
        for (int i = 0; i < m; ++i) {
            std::size_t j = i + bounded_u64(eng, n - i);
            std::swap(pool[i], pool[j]);
            sample.push_back(pool[i]);
        }
        ++cert.subsets_checked;
        if (violates(sample)) {
            std::sort(sample.begin(), sample.end());
            cert.pass = false;
            cert.witness = VertexSubset(sample);
            return cert;
        }
    }
    cert.pass = true;
    return cert;
}

long double log_falling_factorial(int a, int j) {
    if (j < 0 || a < j)
        throw std::invalid_argument("log_falling_factorial: need 0 <= j <= a");
    return std::lgamma(static_cast<long double>(a) + 1) -
           std::lgamma(static_cast<long double>(a - j) + 1);
}

long double log_binomial(int n, int m) {
    if (m < 0 || n < m) throw std::invalid_argument("log_binomial: need 0 <= m <= n");
    return std::lgamma(static_cast<long double>(n) + 1) -
           std::lgamma(static_cast<long double>(m) + 1) -
           std::lgamma(static_cast<long double>(n - m) + 1);
}

double TailBound::value() const { return static_cast<double>(std::exp(log_value)); }

TailBound tail_bound(int n, int m, int k, TailVariant variant) {
    if (m < 1 || k < 1) throw std::invalid_argument("tail_bound: m and k must be >= 1");
    if (variant == TailVariant::below_m && 2 * m > n)
        throw std::invalid_argument("tail_bound: variant m requires 2m <= n");
    if (variant == TailVariant::below_2m && 3 * m > n)
        throw std::invalid_argument("tail_bound: variant 2m requires 3m <= n");
    TailBound b;
    b.n = n;
    b.m = m;
    b.k = k;
    b.variant = variant;
    if (variant == TailVariant::below_m)
        b.log_value = log_binomial(n - m, m - 1) +
                      k * (log_falling_factorial(2 * m, m) - log_falling_factorial(n, m));
    else
        b.log_value = log_binomial(n - m, 2 * m - 1) +
                      k * (log_falling_factorial(3 * m, m) - log_falling_factorial(n, m));
    return b;
}

double UnionBoundSum::value() const { return static_cast<double>(std::exp(log_value)); }

long double UnionBoundSum::log_term(int n, int m, int k, UnionBoundVariant variant) {
    if (variant == UnionBoundVariant::match)
        return log_binomial(n, m) +
               tail_bound(n, m, k, TailVariant::below_m).log_value;
    return log_binomial(n, m) + tail_bound(n, m, k, TailVariant::below_2m).log_value;
}

UnionBoundSum union_bound_sum(int n, int k, double alpha, UnionBoundVariant variant) {
    const bool match = variant == UnionBoundVariant::match;
    if (match && k < 3)
        throw std::invalid_argument("union_bound_sum: match variant requires k >= 3");
    if (!match && k < 4)
        throw std::invalid_argument("union_bound_sum: hamilton variant requires k >= 4");
    if (alpha <= 0.0)
        throw std::invalid_argument("union_bound_sum: alpha must be positive");
    const double threshold =
        solve_threshold(k, match ? ThresholdFamily::alpha1 : ThresholdFamily::alpha2).root;
    if (alpha >= threshold)
        throw std::invalid_argument("union_bound_sum: alpha must be below " +
                                    std::string(match ? "alpha1(k)" : "alpha2(k)"));

    UnionBoundSum sum;
    sum.n = n;
    sum.k = k;
    sum.alpha = alpha;
    sum.variant = variant;
    sum.log_value = kNegInf;
    const int m_lo = match ? 2 : 1;
    const int m_hi = static_cast<int>(std::floor(alpha * n + 1e-12));
    // logsumexp over the terms
    long double peak = kNegInf;
    std::vector<long double> logs;
    for (int m = m_lo; m <= m_hi; ++m) {
        logs.push_back(UnionBoundSum::log_term(n, m, k, variant));
        peak = std::max(peak, logs.back());
    }
    sum.terms = static_cast<int>(logs.size());
    if (logs.empty()) return sum;
    long double acc = 0;
    for (long double lv : logs) acc += std::exp(lv - peak);
    sum.log_value = peak + std::log(acc);
    return sum;
}

}  // namespace uag
