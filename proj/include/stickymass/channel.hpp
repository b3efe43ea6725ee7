#ifndef STICKYMASS_CHANNEL_HPP
#define STICKYMASS_CHANNEL_HPP

#include <span>
#include <vector>

#include "stickymass/distributions.hpp"
#include "stickymass/random.hpp"

namespace stickymass {

/// Stickiness parameter of the duplication channel: each fresh draw from the
/// source is repeated, each following position copying the previous one with
/// probability alpha and drawing fresh with probability 1 - alpha.
struct ChannelParams {
  double alpha;
  explicit ChannelParams(double a);
};

/// Observed output: letters[i] in {1..K}, 1-based letters.
struct SampleSequence {
  std::vector<int> letters;
  int length() const { return static_cast<int>(letters.size()); }
};

/// Markov view of the channel: X1 ~ dist, then each position repeats the
/// previous letter with probability alpha, else draws fresh from dist.
SampleSequence simulate_markov(const DiscreteDistribution& dist, ChannelParams params, int n,
                               RandomStream& rng);

/// Run-length view: i.i.d. draws from dist, each repeated a geometric(1-alpha)
/// number of times, truncated to n positions.  Same output law as
/// simulate_markov.
SampleSequence simulate_repeats(const DiscreteDistribution& dist, ChannelParams params, int n,
                                RandomStream& rng);

/// Dense row-stochastic matrix, 0-based rows/cols indexed by letter - 1.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(int size) : size_(size), data_(static_cast<std::size_t>(size) * size) {}

  int size() const { return size_; }
  double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * size_ + c]; }
  double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * size_ + c]; }
  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * size_, static_cast<std::size_t>(size_)};
  }

 private:
  int size_;
  std::vector<double> data_;
};

/// Dense transition matrix of the channel's Markov view:
/// alpha on the diagonal plus (1 - alpha) times the source mass in each
/// column.  Only materialized for alphabets up to 4096 letters; larger
/// alphabets must be handled through (alpha, dist) directly.
TransitionMatrix transition_matrix(const DiscreteDistribution& dist, ChannelParams params);

}  // namespace stickymass

#endif
