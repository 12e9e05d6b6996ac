// Scalar backbone: the binary-entropy threshold equations and their roots,
// the augmentation yield zeta, per-step success probabilities, and the
// Chernoff utility.
#pragma once

namespace uag {

// H(x) = -x log2 x - (1-x) log2(1-x), with H(0) = H(1) = 0.
double binary_entropy(double x);

// Entropy equations whose unique positive roots are the expansion thresholds:
//   f1(x,k) = 2(k+1)x + H(2x) - k H(x)            on (0, 1/2)
//   f2(x,k) = log2(27/4)(k+1)x + H(3x) - k H(x)   on (0, 1/3)
double f1(double x, int k);
double f2(double x, int k);

enum class ThresholdFamily { alpha1, alpha2 };

struct ThresholdSolution {
    int k = 0;
    ThresholdFamily which = ThresholdFamily::alpha1;
    double root = 0;
    double bracket_lo = 0;  // final bisection interval
    double bracket_hi = 0;
    double tolerance = 0;
};

// Bisection from a verified sign-change bracket. Requires k >= 3 for alpha1
// and k >= 4 for alpha2; otherwise no sign change exists and the solve fails.
ThresholdSolution solve_threshold(int k, ThresholdFamily which, double tol = 1e-12);

// zeta = alpha - 1/(k+1) + (1-alpha)^(k+1)/(k+1): the expected number of
// successful augmentation steps per n in the fresh-choice exposure process.
double zeta(double alpha, int k);

// P(step i succeeds) = 1 - (1 - (alpha n - (i-1))/n)^k, clamped to [0,1].
double step_success_prob(double alpha, int i, int n, int k);

// Closed form of n * integral_0^alpha (1 - (1-(alpha-x))^k) dx, per n;
// identically zeta(alpha, k).
double expected_success_total(double alpha, int k);

// P(|X - mu| >= eps mu) <= 2 exp(-eps^2 mu / 3), for 0 < eps < 3/2.
double chernoff_bound(double mu, double eps);

}  // namespace uag
