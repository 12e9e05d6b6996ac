#include "uag/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace uag {

namespace {
// -x log2 x with the 0 log 0 = 0 convention; avoids NaN at the endpoints.
double neg_xlog2x(double x) { return x <= 0.0 ? 0.0 : -x * std::log2(x); }

constexpr double kLog2_27_4 = 2.7548875021634686;  // log2(27/4) = 3 log2 3 - 2
}  // namespace

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("binary_entropy: x must lie in [0, 1]");
    return neg_xlog2x(x) + neg_xlog2x(1.0 - x);
}

double f1(double x, int k) {
    if (x <= 0.0 || x >= 0.5)
        throw std::invalid_argument("f1: x must lie in (0, 1/2)");
    return 2.0 * (k + 1) * x + binary_entropy(2.0 * x) - k * binary_entropy(x);
}

double f2(double x, int k) {
    if (x <= 0.0 || x >= 1.0 / 3.0)
        throw std::invalid_argument("f2: x must lie in (0, 1/3)");
    return kLog2_27_4 * (k + 1) * x + binary_entropy(3.0 * x) - k * binary_entropy(x);
}

ThresholdSolution solve_threshold(int k, ThresholdFamily which, double tol) {
    if (tol <= 0) throw std::invalid_argument("solve_threshold: tol must be positive");
    const bool first = which == ThresholdFamily::alpha1;
    auto f = [&](double x) { return first ? f1(x, k) : f2(x, k); };
    double lo = 1e-9;
    double hi = (first ? 0.5 : 1.0 / 3.0) - 1e-9;
    double flo = f(lo), fhi = f(hi);
    if (!(flo < 0.0 && fhi > 0.0))
        throw std::runtime_error("solve_threshold: no sign change for k=" +
                                 std::to_string(k) +
                                 " (k out of the family's validity range)");
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return ThresholdSolution{k, which, 0.5 * (lo + hi), lo, hi, tol};
}

double zeta(double alpha, int k) {
    return alpha - 1.0 / (k + 1) + std::pow(1.0 - alpha, k + 1) / (k + 1);
}

double step_success_prob(double alpha, int i, int n, int k) {
    if (i < 1 || static_cast<double>(i) > alpha * n)
        throw std::invalid_argument("step_success_prob: step index beyond alpha*n");
    double p = 1.0 - std::pow(1.0 - (alpha * n - (i - 1)) / n, k);
    return std::clamp(p, 0.0, 1.0);
}

double expected_success_total(double alpha, int k) { return zeta(alpha, k); }

double chernoff_bound(double mu, double eps) {
    if (mu < 0) throw std::invalid_argument("chernoff_bound: mu must be >= 0");
    if (eps <= 0.0 || eps >= 1.5)
        throw std::invalid_argument("chernoff_bound: eps must lie in (0, 3/2)");
    return 2.0 * std::exp(-eps * eps * mu / 3.0);
}

}  // namespace uag
