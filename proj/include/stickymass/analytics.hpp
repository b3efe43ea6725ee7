#ifndef STICKYMASS_ANALYTICS_HPP
#define STICKYMASS_ANALYTICS_HPP

#include <cstddef>
#include <optional>
#include <span>

#include "stickymass/channel.hpp"
#include "stickymass/distributions.hpp"

namespace stickymass {

// ---------------------------------------------------------------------------
// Exact per-letter occupancy probabilities for a length-n sticky output.
// All take the letter mass (or pair of masses), the stickiness alpha in
// [0, 1), and the sequence length n.  Evaluation goes through
// exp(m * log1p(-c)) so small masses at large n keep full relative precision.
// ---------------------------------------------------------------------------

/// Probability that a letter of mass p never appears:
/// (1-p) (1-(1-alpha)p)^(n-1).
double prob_unseen(double p, double alpha, int n);

/// Probability that a letter of mass p appears exactly once, strictly inside
/// positions 2..n-1, with both endpoints different from it:
/// (n-2) (1-alpha)^2 p (1-p)^2 (1-(1-alpha)p)^(n-3).  Requires n >= 3.
double prob_interior_singleton(double p, double alpha, int n);

/// Probability that two distinct letters of masses px, py both never appear:
/// (1-px-py) (1-(1-alpha)(px+py))^(n-1).
double prob_pair_unseen(double px, double py, double alpha, int n);

/// Probability that the first letter is an interior singleton (as in
/// prob_interior_singleton) while the second never appears:
/// (n-2) (1-alpha)^2 px (1-px-py)^2 (1-(1-alpha)(px+py))^(n-3).
/// Swap the arguments for the mirrored event.  Requires n >= 3.
double prob_singleton_unseen(double px, double py, double alpha, int n);

/// Probability that two distinct letters are both interior singletons with
/// all endpoints avoiding them.  Requires n >= 5; shorter sequences must be
/// handled by enumeration.
double prob_pair_singletons(double px, double py, double alpha, int n);

/// Cross term of the estimator's squared error for a pair of letters:
/// px py P(both unseen) + P(both singletons)/((1-alpha)^4 (n-2)^2)
///   - [px P(y singleton, x unseen) + py P(x singleton, y unseen)]
///     /((1-alpha)^2 (n-2)).
/// Symmetric in (px, py).  Requires n >= 5.
double mse_cross_term(double px, double py, double alpha, int n);

struct ExactMseOptions {
  // Alphabets larger than this raise ResourceError; raise it explicitly for
  // large structured alphabets (equal-mass letters are grouped internally,
  // so uniform and two-point alphabets stay cheap at any size).
  std::size_t max_alphabet = 5000;
};

/// Exact mean squared error of the known-alpha modified Good-Turing estimate
/// against the missing mass, by summing the closed forms over letters and
/// pairs.  Requires n >= 5.
double exact_mse(const DiscreteDistribution& dist, double alpha, int n, ExactMseOptions opts = {});

/// Exact expectation of (estimate - missing mass) for the known-alpha
/// modified Good-Turing estimate.  Linear in the alphabet size, so no cap
/// applies.  Requires n >= 3.
double exact_bias(const DiscreteDistribution& dist, double alpha, int n);

// ---------------------------------------------------------------------------
// Worst-case risk bounds.  alpha is clamped to at most 1 - 1e-9.
// ---------------------------------------------------------------------------

/// Explicit leading part of the worst-case MSE upper bound:
/// (3 + (1 + 1/n)/(1-alpha)) / ((n-2)(1-alpha)).  Requires n >= 3.
double minimax_upper_bound_leading(int n, double alpha);

/// Minimax lower bound on the MSE of any missing-mass estimator:
/// (1/32)/(1 + (n-1)(1-alpha)) - (1 - (1-alpha)/2)^(n-1).
/// May be negative for small n.  Requires n >= 2.
double minimax_lower_bound(int n, double alpha);

/// Bound on the sum of px^2 P(x unseen): 1/((1-alpha)(n-1)).  The sharper
/// denominator (n+1) also holds (it drops out of the same argument one step
/// earlier); the (n-1) form is the one the final chain supports, so it is
/// what this returns.  Requires n >= 2.
double unseen_second_moment_bound(int n, double alpha);

struct BoundReport {
  int n;
  double alpha;
  double lower;
  double upper_leading;
  std::optional<double> mse;
};

BoundReport compute_bounds(int n, double alpha, const DiscreteDistribution* dist = nullptr,
                           ExactMseOptions opts = {});

// ---------------------------------------------------------------------------
// Divergence tools for stationary Markov laws.
// ---------------------------------------------------------------------------

/// KL divergence (nats) between two finite distributions given as value
/// spans.  Terms with zero left mass contribute nothing; left mass outside
/// the right support gives +infinity.
double kl_divergence(std::span<const double> a, std::span<const double> b);

/// KL divergence between the length-n trajectory laws of two stationary
/// chains: D(p1 || p2) + (n-1) sum_x p1(x) D(P1(x,.) || P2(x,.)).
double markov_kl(const TransitionMatrix& t1, const DiscreteDistribution& p1,
                 const TransitionMatrix& t2, const DiscreteDistribution& p2, int n);

/// Closed-form KL pieces for the pair of sticky chains built on two_point(0, L)
/// and two_point(gamma, L) with shared stickiness alpha: the stationary
/// divergence, the head-letter row divergence, and the (common) tail-letter
/// row divergence.  All three are divergences OF the flat chain FROM the
/// separated one, D(P_0 || P_gamma).  Exact; each row piece also satisfies
/// row <= -0.5 (1-alpha) ln(1-4 gamma^2).
struct TwoPointKlTerms {
  double stationary_kl;
  double head_row_kl;
  double tail_row_kl;
};

TwoPointKlTerms two_point_kl_terms(double gamma, long long L, double alpha);

/// Total variation bound between the two trajectory laws above with
/// separation beta: sqrt(2) beta (1 + (n-1)(1-alpha)/2)^(1/2).
double two_point_tv_bound(double beta, double alpha, int n);

// ---------------------------------------------------------------------------
// Two-point testing bound on the worst-case MSE.
// ---------------------------------------------------------------------------

/// Probabilities that the missing mass escapes its target interval under the
/// gamma = 0 law (eps1) and the gamma = beta law (eps2):
/// eps1 = (1 - (1-alpha)/2)^(n-1) / 2,
/// eps2 = (1/2 - beta)(1 - (1-alpha)(1/2 + beta))^(n-1).
struct EpsilonPair {
  double eps1;
  double eps2;
};

EpsilonPair containment_failure_probs(double beta, double alpha, int n);

/// Generic two-point risk bound: delta * affinity - (eps1 + eps2) * diameter.
double lecam_lower_bound(double delta, double affinity, double eps1, double eps2, double diameter);

struct LeCamConfig {
  double beta;
  double L;
  double alpha;
  int n;
  double delta;     // half the squared separation of the two target intervals
  double eps1;
  double eps2;
  double diameter;  // sup of the squared loss, 1 for masses in [0, 1]

  /// Validates n/(2L) <= beta < 0.5 and fills the derived fields.
  static LeCamConfig make(double beta, double L, double alpha, int n);

  /// The separation/tail-size choice that maximizes the evaluated bound:
  /// beta = (1/(2 sqrt 2)) (1 + (n-1)(1-alpha)/2)^(-1/2), L = e^n capped
  /// at 2^62.
  static LeCamConfig optimized(int n, double alpha);
};

double optimized_separation(int n, double alpha);

/// Evaluates the two-point bound at the config:
/// 0.5 (beta - n/(2L))^2 (1 - sqrt(2) beta (1 + (n-1)(1-alpha)/2)^(1/2))
///   - (1 - (1-alpha)/2)^(n-1).
double lecam_bound(const LeCamConfig& config);

}  // namespace stickymass

#endif
