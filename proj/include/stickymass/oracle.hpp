#ifndef STICKYMASS_ORACLE_HPP
#define STICKYMASS_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "stickymass/channel.hpp"
#include "stickymass/distributions.hpp"

namespace stickymass {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Exhaustive law of the channel output: one probability per length-n
/// sequence over {1..K}, in lexicographic order.  Index encoding is base-K
/// with the first position most significant.
struct SequenceLaw {
  int alphabet_size = 0;
  int length = 0;
  std::vector<double> probs;

  std::size_t index_of(const std::vector<int>& letters) const;
  std::vector<int> sequence_at(std::size_t index) const;
};

/// Depth-first walk over all K^n sequences, invoking visit(letters, prob)
/// with the exact path probability.  Sequences are visited in lexicographic
/// order and nothing is materialized.  Refuses to walk more than budget
/// sequences.
void enumerate_sequences(const DiscreteDistribution& dist, ChannelParams params, int n,
                         const std::function<void(const std::vector<int>&, double)>& visit,
                         std::uint64_t budget = kDefaultEnumerationBudget);

SequenceLaw enumerate_law(const DiscreteDistribution& dist, ChannelParams params, int n,
                          std::uint64_t budget = kDefaultEnumerationBudget);

/// Exact probability of an event under the law.
double event_prob(const SequenceLaw& law, const std::function<bool(const std::vector<int>&)>& event);

/// Exact expectation of a statistic under the law.
double expectation(const SequenceLaw& law, const std::function<double(const std::vector<int>&)>& fn);

/// Exact mean squared error of an estimator against the true missing mass.
double brute_mse(const SequenceLaw& law, const DiscreteDistribution& dist,
                 const std::function<double(const SampleSequence&)>& estimator);

/// Exact mean of (estimate - missing mass).
double brute_bias(const SequenceLaw& law, const DiscreteDistribution& dist,
                  const std::function<double(const SampleSequence&)>& estimator);

/// Total variation distance between two laws on the same sequence space.
double brute_tv(const SequenceLaw& a, const SequenceLaw& b);

/// KL divergence (nats) between two laws on the same sequence space.
/// Zero-mass terms of a contribute nothing; mass of a outside b's support
/// gives +infinity.
double brute_kl(const SequenceLaw& a, const SequenceLaw& b);

}  // namespace stickymass

#endif
