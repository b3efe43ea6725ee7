#include "stickymass/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stickymass/errors.hpp"
#include "stickymass/numeric.hpp"

namespace stickymass {

namespace {

constexpr double kAlphaCeiling = 1.0 - 1e-9;

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("stickiness must lie in [0, 1)");
}

// The worst-case bounds stay meaningful as alpha -> 1 (they blow up or
// degenerate smoothly), so they accept the closed interval and clamp.
void check_alpha_bound(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("stickiness must lie in [0, 1]");
}

void check_mass(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

void check_length(int n, int at_least) {
  if (n < at_least)
    throw std::invalid_argument("sequence length must be at least " + std::to_string(at_least));
}

}  // namespace

double prob_unseen(double p, double alpha, int n) {
  check_mass(p, "letter mass");
  check_alpha(alpha);
  check_length(n, 1);
  return (1.0 - p) * pow_one_minus((1.0 - alpha) * p, n - 1);
}

double prob_interior_singleton(double p, double alpha, int n) {
  check_mass(p, "letter mass");
  check_alpha(alpha);
  check_length(n, 3);
  double fresh = 1.0 - alpha;
  double q = 1.0 - p;
  return (n - 2) * fresh * fresh * p * q * q * pow_one_minus(fresh * p, n - 3);
}

double prob_pair_unseen(double px, double py, double alpha, int n) {
  check_mass(px, "letter mass");
  check_mass(py, "letter mass");
  check_mass(px + py, "pair mass");
  check_alpha(alpha);
  check_length(n, 1);
  double s = px + py;
  return (1.0 - s) * pow_one_minus((1.0 - alpha) * s, n - 1);
}

double prob_singleton_unseen(double px, double py, double alpha, int n) {
  check_mass(px, "letter mass");
  check_mass(py, "letter mass");
  check_mass(px + py, "pair mass");
  check_alpha(alpha);
  check_length(n, 3);
  double fresh = 1.0 - alpha;
  double s = px + py;
  double r = 1.0 - s;
  return (n - 2) * fresh * fresh * px * r * r * pow_one_minus(fresh * s, n - 3);
}

double prob_pair_singletons(double px, double py, double alpha, int n) {
  check_mass(px, "letter mass");
  check_mass(py, "letter mass");
  check_mass(px + py, "pair mass");
  check_alpha(alpha);
  check_length(n, 5);
  double fresh = 1.0 - alpha;
  double s = px + py;
  double r = 1.0 - s;
  // Adjacent singleton pairs contribute one factor, separated pairs another;
  // together they fold into a single bracket.
  double bracket = 2.0 * (1.0 - fresh * s) + (n - 4) * fresh * r;
  return (n - 3) * fresh * fresh * fresh * px * py * r * r *
         pow_one_minus(fresh * s, n - 5) * bracket;
}

double mse_cross_term(double px, double py, double alpha, int n) {
  check_length(n, 5);
  double fresh = 1.0 - alpha;
  double c2 = fresh * fresh * (n - 2);
  return px * py * prob_pair_unseen(px, py, alpha, n) +
         prob_pair_singletons(px, py, alpha, n) / (c2 * c2) -
         (px * prob_singleton_unseen(py, px, alpha, n) +
          py * prob_singleton_unseen(px, py, alpha, n)) /
             c2;
}

namespace {

// Distinct positive masses with multiplicities, largest first.  Equal-mass
// letters (uniform bodies, two-point tails) contribute identical closed-form
// terms, so the pair sum over them collapses from K^2 to G^2 evaluations.
std::vector<std::pair<double, long long>> mass_groups(const DiscreteDistribution& dist) {
  std::vector<double> masses;
  masses.reserve(dist.probs().size());
  for (double p : dist.probs())
    if (p > 0.0) masses.push_back(p);
  std::sort(masses.begin(), masses.end(), std::greater<double>());
  std::vector<std::pair<double, long long>> groups;
  for (double p : masses) {
    if (!groups.empty() && groups.back().first == p)
      ++groups.back().second;
    else
      groups.emplace_back(p, 1);
  }
  return groups;
}

}  // namespace

double exact_mse(const DiscreteDistribution& dist, double alpha, int n, ExactMseOptions opts) {
  check_alpha(alpha);
  check_length(n, 5);
  if (static_cast<std::size_t>(dist.alphabet_size()) > opts.max_alphabet)
    throw ResourceError("exact_mse: alphabet size " + std::to_string(dist.alphabet_size()) +
                        " exceeds the cap of " + std::to_string(opts.max_alphabet) +
                        " (raise ExactMseOptions::max_alphabet to override)");

  auto groups = mass_groups(dist);
  double fresh = 1.0 - alpha;
  double c2 = fresh * fresh * (n - 2);

  CompensatedSum unseen_term;
  CompensatedSum singleton_term;
  for (const auto& [p, m] : groups) {
    double dm = static_cast<double>(m);
    unseen_term.add(dm * p * p * prob_unseen(p, alpha, n));
    singleton_term.add(dm * prob_interior_singleton(p, alpha, n));
  }

  CompensatedSum cross;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto [pg, mg] = groups[g];
    if (mg > 1)
      cross.add(static_cast<double>(mg) * static_cast<double>(mg - 1) *
                mse_cross_term(pg, pg, alpha, n));
    for (std::size_t h = g + 1; h < groups.size(); ++h) {
      auto [ph, mh] = groups[h];
      cross.add(2.0 * static_cast<double>(mg) * static_cast<double>(mh) *
                mse_cross_term(pg, ph, alpha, n));
    }
  }

  return cross.total() + unseen_term.total() + singleton_term.total() / (c2 * c2);
}

double exact_bias(const DiscreteDistribution& dist, double alpha, int n) {
  check_alpha(alpha);
  check_length(n, 3);
  // Per letter, the estimator's expectation cancels its (n-2)(1-alpha)^2
  // rescaling exactly:
  //   E[estimate] - E[missing] =
  //   sum_x p (1-p)^2 (1-(1-alpha)p)^(n-3) - p (1-p) (1-(1-alpha)p)^(n-1).
  double fresh = 1.0 - alpha;
  CompensatedSum bias;
  for (double p : dist.probs()) {
    if (p == 0.0) continue;
    double q = 1.0 - p;
    bias.add(p * q * q * pow_one_minus(fresh * p, n - 3));
    bias.add(-p * q * pow_one_minus(fresh * p, n - 1));
  }
  return bias.total();
}

double minimax_upper_bound_leading(int n, double alpha) {
  check_alpha_bound(alpha);
  check_length(n, 3);
  double fresh = 1.0 - std::min(alpha, kAlphaCeiling);
  return (3.0 + (1.0 + 1.0 / n) / fresh) / ((n - 2) * fresh);
}

double minimax_lower_bound(int n, double alpha) {
  check_alpha_bound(alpha);
  check_length(n, 2);
  double fresh = 1.0 - std::min(alpha, kAlphaCeiling);
  return (1.0 / 32.0) / (1.0 + (n - 1) * fresh) - pow_one_minus(0.5 * fresh, n - 1);
}

double unseen_second_moment_bound(int n, double alpha) {
  check_alpha_bound(alpha);
  check_length(n, 2);
  double fresh = 1.0 - std::min(alpha, kAlphaCeiling);
  return 1.0 / (fresh * (n - 1));
}

BoundReport compute_bounds(int n, double alpha, const DiscreteDistribution* dist,
                           ExactMseOptions opts) {
  BoundReport report{n, alpha, minimax_lower_bound(n, alpha),
                     minimax_upper_bound_leading(n, alpha), std::nullopt};
  if (dist != nullptr) report.mse = exact_mse(*dist, alpha, n, opts);
  return report;
}

double kl_divergence(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("KL divergence needs equal-size distributions");
  CompensatedSum total;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    if (b[i] == 0.0) return std::numeric_limits<double>::infinity();
    total.add(a[i] * std::log(a[i] / b[i]));
  }
  return total.total();
}

double markov_kl(const TransitionMatrix& t1, const DiscreteDistribution& p1,
                 const TransitionMatrix& t2, const DiscreteDistribution& p2, int n) {
  int k = p1.alphabet_size();
  if (t1.size() != k || t2.size() != k || p2.alphabet_size() != k)
    throw std::invalid_argument("markov_kl needs a shared alphabet");
  check_length(n, 1);
  double head = kl_divergence(p1.probs(), p2.probs());
  if (std::isinf(head)) return head;
  CompensatedSum rows;
  for (int x = 0; x < k; ++x) {
    double mass = p1.prob(x + 1);
    if (mass == 0.0) continue;
    double row = kl_divergence(t1.row(x), t2.row(x));
    if (std::isinf(row)) return row;
    rows.add(mass * row);
  }
  return head + (n - 1) * rows.total();
}

TwoPointKlTerms two_point_kl_terms(double gamma, long long L, double alpha) {
  if (!(gamma >= 0.0 && gamma < 0.5))
    throw std::invalid_argument("two_point_kl_terms: gamma must lie in [0, 0.5)");
  if (L < 1) throw std::invalid_argument("two_point_kl_terms: L must be at least 1");
  check_alpha(alpha);
  double a = 1.0 - alpha;

  TwoPointKlTerms terms{};
  terms.stationary_kl = -0.5 * std::log1p(-4.0 * gamma * gamma);
  terms.head_row_kl = -0.5 * (1.0 + alpha) * std::log1p(2.0 * gamma * a / (1.0 + alpha)) -
                      0.5 * a * std::log1p(-2.0 * gamma);

  // Tail row, exactly: the off-diagonal entries pair into the stationary
  // term, and the diagonal (self-transition) entry replaces one tail entry.
  double h1 = 0.5 / static_cast<double>(L);
  double d1 = alpha + a * h1;
  double d2 = alpha + a * (0.5 - gamma) / static_cast<double>(L);
  terms.tail_row_kl = -0.5 * a * std::log1p(2.0 * gamma) -
                      static_cast<double>(L - 1) * a * h1 * std::log1p(-2.0 * gamma) +
                      d1 * std::log1p(a * gamma / (static_cast<double>(L) * d2));
  return terms;
}

double two_point_tv_bound(double beta, double alpha, int n) {
  if (!(beta >= 0.0 && beta < 0.5))
    throw std::invalid_argument("two_point_tv_bound: beta must lie in [0, 0.5)");
  check_alpha(alpha);
  check_length(n, 1);
  return std::sqrt(2.0) * beta * std::sqrt(1.0 + 0.5 * (n - 1) * (1.0 - alpha));
}

EpsilonPair containment_failure_probs(double beta, double alpha, int n) {
  if (!(beta >= 0.0 && beta < 0.5))
    throw std::invalid_argument("containment_failure_probs: beta must lie in [0, 0.5)");
  check_alpha(alpha);
  check_length(n, 1);
  double fresh = 1.0 - alpha;
  EpsilonPair eps{};
  eps.eps1 = 0.5 * pow_one_minus(0.5 * fresh, n - 1);
  eps.eps2 = (0.5 - beta) * pow_one_minus(fresh * (0.5 + beta), n - 1);
  return eps;
}

double lecam_lower_bound(double delta, double affinity, double eps1, double eps2,
                         double diameter) {
  return delta * affinity - (eps1 + eps2) * diameter;
}

LeCamConfig LeCamConfig::make(double beta, double L, double alpha, int n) {
  check_alpha(alpha);
  if (n < 1) throw std::invalid_argument("LeCamConfig: n must be at least 1");
  if (!(L > 0.0)) throw std::invalid_argument("LeCamConfig: L must be positive");
  double floor = static_cast<double>(n) / (2.0 * L);
  if (!(beta >= floor && beta < 0.5))
    throw std::invalid_argument("LeCamConfig: beta must lie in [n/(2L), 0.5)");
  LeCamConfig config{};
  config.beta = beta;
  config.L = L;
  config.alpha = alpha;
  config.n = n;
  double sep = beta - floor;
  config.delta = 0.5 * sep * sep;
  EpsilonPair eps = containment_failure_probs(beta, alpha, n);
  config.eps1 = eps.eps1;
  config.eps2 = eps.eps2;
  config.diameter = 1.0;
  return config;
}

double optimized_separation(int n, double alpha) {
  check_alpha(alpha);
  check_length(n, 1);
  return 1.0 / (2.0 * std::sqrt(2.0) * std::sqrt(1.0 + 0.5 * (n - 1) * (1.0 - alpha)));
}

LeCamConfig LeCamConfig::optimized(int n, double alpha) {
  // e^n tail letters drive the discretization term n/(2L) to zero; capped at
  // 2^62 so the count stays a sane floating-point integer.
  double L = n <= 42 ? std::exp(static_cast<double>(n)) : 0x1p62;
  return make(optimized_separation(n, alpha), L, alpha, n);
}

double lecam_bound(const LeCamConfig& config) {
  double affinity = 1.0 - two_point_tv_bound(config.beta, config.alpha, config.n);
  return config.delta * affinity -
         pow_one_minus(0.5 * (1.0 - config.alpha), config.n - 1);
}

}  // namespace stickymass
