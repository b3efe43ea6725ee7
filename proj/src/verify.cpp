#include "stickymass/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "stickymass/analytics.hpp"
#include "stickymass/channel.hpp"
#include "stickymass/distributions.hpp"
#include "stickymass/estimators.hpp"
#include "stickymass/oracle.hpp"
#include "stickymass/random.hpp"

namespace stickymass {

namespace {

bool absent_everywhere(const std::vector<int>& letters, int x) {
  for (int l : letters)
    if (l == x) return false;
  return true;
}

// Exactly one appearance, strictly inside, endpoints avoiding the letter.
bool interior_singleton_of(const std::vector<int>& letters, int x) {
  if (letters.front() == x || letters.back() == x) return false;
  int count = 0;
  for (std::size_t i = 1; i + 1 < letters.size(); ++i)
    if (letters[i] == x && ++count > 1) return false;
  return count == 1;
}

DiscreteDistribution cell_distribution(const VerifyGrid& grid, int k, int n, std::size_t alpha_idx,
                                       int which) {
  RandomStream rng(mix_seed(grid.seed, static_cast<std::uint64_t>(k) * 1000 + n,
                            static_cast<std::uint64_t>(alpha_idx),
                            static_cast<std::uint64_t>(which)));
  return random_distribution(k, rng);
}

void track(CheckResult& result, double err) { result.max_err = std::max(result.max_err, err); }

void finish(CheckResult& result) { result.pass = result.max_err <= result.tolerance; }

}  // namespace

VerifyGrid small_grid() {
  VerifyGrid grid;
  grid.alphabet_sizes = {2, 3};
  grid.lengths = {5, 6};
  grid.alphas = {0.0, 0.3, 0.7};
  grid.dists_per_cell = 2;
  return grid;
}

VerifyGrid full_grid() {
  VerifyGrid grid;
  grid.alphabet_sizes = {2, 3, 4};
  grid.lengths = {5, 6, 7};
  grid.alphas = {0.0, 0.3, 0.7};
  grid.dists_per_cell = 5;
  return grid;
}

std::vector<CheckResult> verify_occupancy_forms(const VerifyGrid& grid, double tolerance) {
  std::vector<CheckResult> results(6);
  results[0].name = "prob_unseen";
  results[1].name = "prob_interior_singleton";
  results[2].name = "prob_pair_unseen";
  results[3].name = "prob_singleton_unseen";
  results[4].name = "prob_unseen_singleton";
  results[5].name = "prob_pair_singletons";
  for (CheckResult& r : results) r.tolerance = tolerance;

  for (int k : grid.alphabet_sizes) {
    for (int n : grid.lengths) {
      for (std::size_t ai = 0; ai < grid.alphas.size(); ++ai) {
        double alpha = grid.alphas[ai];
        for (int d = 0; d < grid.dists_per_cell; ++d) {
          DiscreteDistribution dist = cell_distribution(grid, k, n, ai, d);
          SequenceLaw law = enumerate_law(dist, ChannelParams(alpha), n);
          for (int x = 1; x <= k; ++x) {
            double px = dist.prob(x);
            track(results[0],
                  std::abs(event_prob(law, [x](const std::vector<int>& s) {
                             return absent_everywhere(s, x);
                           }) -
                           prob_unseen(px, alpha, n)));
            track(results[1],
                  std::abs(event_prob(law, [x](const std::vector<int>& s) {
                             return interior_singleton_of(s, x);
                           }) -
                           prob_interior_singleton(px, alpha, n)));
            for (int y = 1; y <= k; ++y) {
              if (y == x) continue;
              double py = dist.prob(y);
              track(results[2],
                    std::abs(event_prob(law, [x, y](const std::vector<int>& s) {
                               return absent_everywhere(s, x) && absent_everywhere(s, y);
                             }) -
                             prob_pair_unseen(px, py, alpha, n)));
              track(results[3],
                    std::abs(event_prob(law, [x, y](const std::vector<int>& s) {
                               return interior_singleton_of(s, x) && absent_everywhere(s, y);
                             }) -
                             prob_singleton_unseen(px, py, alpha, n)));
              track(results[4],
                    std::abs(event_prob(law, [x, y](const std::vector<int>& s) {
                               return absent_everywhere(s, x) && interior_singleton_of(s, y);
                             }) -
                             prob_singleton_unseen(py, px, alpha, n)));
              if (n >= 5)
                track(results[5],
                      std::abs(event_prob(law, [x, y](const std::vector<int>& s) {
                                 return interior_singleton_of(s, x) && interior_singleton_of(s, y);
                               }) -
                               prob_pair_singletons(px, py, alpha, n)));
            }
          }
        }
      }
    }
  }
  for (CheckResult& r : results) finish(r);
  return results;
}

CheckResult verify_exact_mse(const VerifyGrid& grid, double tolerance) {
  CheckResult result{"exact_mse_vs_enumeration", 0.0, tolerance, false, ""};
  for (int k : grid.alphabet_sizes) {
    for (int n : grid.lengths) {
      if (n < 5) continue;
      for (std::size_t ai = 0; ai < grid.alphas.size(); ++ai) {
        double alpha = grid.alphas[ai];
        for (int d = 0; d < grid.dists_per_cell; ++d) {
          DiscreteDistribution dist = cell_distribution(grid, k, n, ai, d);
          SequenceLaw law = enumerate_law(dist, ChannelParams(alpha), n);
          double brute = brute_mse(law, dist, [alpha](const SampleSequence& seq) {
            return modified_good_turing(seq, alpha).estimate;
          });
          track(result, std::abs(brute - exact_mse(dist, alpha, n)));
        }
      }
    }
  }
  finish(result);
  return result;
}

CheckResult verify_exact_bias(const VerifyGrid& grid, double tolerance) {
  CheckResult result{"exact_bias_vs_enumeration", 0.0, tolerance, false, ""};
  for (int k : grid.alphabet_sizes) {
    for (int n : grid.lengths) {
      if (n < 3) continue;
      for (std::size_t ai = 0; ai < grid.alphas.size(); ++ai) {
        double alpha = grid.alphas[ai];
        for (int d = 0; d < grid.dists_per_cell; ++d) {
          DiscreteDistribution dist = cell_distribution(grid, k, n, ai, d);
          SequenceLaw law = enumerate_law(dist, ChannelParams(alpha), n);
          double brute = brute_bias(law, dist, [alpha](const SampleSequence& seq) {
            return modified_good_turing(seq, alpha).estimate;
          });
          track(result, std::abs(brute - exact_bias(dist, alpha, n)));
        }
      }
    }
  }
  finish(result);
  return result;
}

CheckResult verify_bias_decay() {
  CheckResult result{"bias_decay_power_law", 0.0, 1.0, false,
                     "max of |exact_bias| / (10/n) over the production grid"};
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (int n : {100, 400, 1600}) {
      int k = static_cast<int>(std::ceil(1.2 * n));
      double bias = exact_bias(power_law(k, 0.1), alpha, n);
      track(result, std::abs(bias) / (10.0 / n));
    }
  }
  finish(result);
  return result;
}

CheckResult verify_markov_kl(const VerifyGrid& grid, double tolerance) {
  CheckResult result{"markov_kl_vs_enumeration", 0.0, tolerance, false, ""};
  for (int k : grid.alphabet_sizes) {
    for (int n : grid.lengths) {
      for (int d = 0; d < grid.dists_per_cell; ++d) {
        RandomStream rng(mix_seed(grid.seed, 0x6b6cULL + static_cast<std::uint64_t>(k),
                                  static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d)));
        DiscreteDistribution d1 = random_distribution(k, rng);
        DiscreteDistribution d2 = random_distribution(k, rng);
        double a1 = 0.95 * rng.next_unit();
        double a2 = 0.95 * rng.next_unit();
        double closed = markov_kl(transition_matrix(d1, ChannelParams(a1)), d1,
                                  transition_matrix(d2, ChannelParams(a2)), d2, n);
        double brute = brute_kl(enumerate_law(d1, ChannelParams(a1), n),
                                enumerate_law(d2, ChannelParams(a2), n));
        track(result, std::abs(closed - brute));
      }
    }
  }
  finish(result);
  return result;
}

std::vector<CheckResult> verify_two_point(double row_tolerance) {
  CheckResult rows{"two_point_rows_vs_generic", 0.0, row_tolerance, false, ""};
  CheckResult bounds{"two_point_row_log_bound", 0.0, 1e-14, false,
                     "largest bound violation (0 when every row obeys it)"};
  CheckResult assembly{"two_point_kl_assembly", 0.0, 1e-12, false,
                       "terms reassembled against markov_kl"};

  for (double gamma : {1e-3, 0.05, 0.1, 0.2, 0.3, 0.45}) {
    for (long long L : {1LL, 2LL, 3LL, 4LL, 7LL, 50LL}) {
      for (double alpha : {0.0, 0.3, 0.5, 0.7, 0.9}) {
        DiscreteDistribution p1 = two_point(0.0, L);
        DiscreteDistribution p2 = two_point(gamma, L);
        TransitionMatrix t1 = transition_matrix(p1, ChannelParams(alpha));
        TransitionMatrix t2 = transition_matrix(p2, ChannelParams(alpha));
        TwoPointKlTerms terms = two_point_kl_terms(gamma, L, alpha);

        track(rows, std::abs(terms.stationary_kl - kl_divergence(p1.probs(), p2.probs())));
        track(rows, std::abs(terms.head_row_kl - kl_divergence(t1.row(0), t2.row(0))));
        track(rows, std::abs(terms.tail_row_kl - kl_divergence(t1.row(1), t2.row(1))));
        track(rows, std::abs(terms.tail_row_kl -
                             kl_divergence(t1.row(static_cast<int>(L)), t2.row(static_cast<int>(L)))));

        double log_bound = -0.5 * (1.0 - alpha) * std::log1p(-4.0 * gamma * gamma);
        track(bounds, std::max(0.0, terms.head_row_kl - log_bound));
        track(bounds, std::max(0.0, terms.tail_row_kl - log_bound));

        int n = 4;
        double assembled =
            terms.stationary_kl + (n - 1) * (0.5 * terms.head_row_kl + 0.5 * terms.tail_row_kl);
        track(assembly, std::abs(assembled - markov_kl(t1, p1, t2, p2, n)));
      }
    }
  }
  finish(rows);
  finish(bounds);
  finish(assembly);
  return {rows, bounds, assembly};
}

std::vector<CheckResult> run_verification(const std::string& grid_name) {
  VerifyGrid grid;
  VerifyGrid kl_grid;
  if (grid_name == "small") {
    grid = small_grid();
    kl_grid = small_grid();
    kl_grid.lengths = {2, 3, 5};
  } else if (grid_name == "full") {
    grid = full_grid();
    kl_grid = full_grid();
    kl_grid.alphabet_sizes = {2, 3};
    kl_grid.lengths = {2, 3, 4, 5};
  } else {
    throw std::invalid_argument("verification grid must be 'small' or 'full'");
  }

  std::vector<CheckResult> results = verify_occupancy_forms(grid, 1e-10);
  results.push_back(verify_exact_mse(grid, 1e-10));
  results.push_back(verify_exact_bias(grid, 1e-10));
  results.push_back(verify_bias_decay());
  results.push_back(verify_markov_kl(kl_grid, 1e-10));
  for (CheckResult& r : verify_two_point(1e-12)) results.push_back(std::move(r));
  return results;
}

}  // namespace stickymass
