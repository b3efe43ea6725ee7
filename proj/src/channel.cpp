#include "stickymass/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "stickymass/errors.hpp"

namespace stickymass {

namespace {
constexpr int kDenseMatrixCap = 4096;
}

ChannelParams::ChannelParams(double a) : alpha(a) {
  if (!(a >= 0.0 && a < 1.0))
    throw std::invalid_argument("channel stickiness must lie in [0, 1)");
}

SampleSequence simulate_markov(const DiscreteDistribution& dist, ChannelParams params, int n,
                               RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("sequence length must be at least 1");
  SampleSequence seq;
  seq.letters.reserve(static_cast<std::size_t>(n));
  int current = dist.sample(rng);
  seq.letters.push_back(current);
  for (int i = 1; i < n; ++i) {
    if (rng.next_unit() >= params.alpha) current = dist.sample(rng);
    seq.letters.push_back(current);
  }
  return seq;
}

SampleSequence simulate_repeats(const DiscreteDistribution& dist, ChannelParams params, int n,
                                RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("sequence length must be at least 1");
  SampleSequence seq;
  seq.letters.reserve(static_cast<std::size_t>(n));
  double log_alpha = params.alpha > 0.0 ? std::log(params.alpha) : 0.0;
  while (seq.length() < n) {
    int letter = dist.sample(rng);
    long long repeats = 1;
    if (params.alpha > 0.0) {
      // Geometric(1 - alpha) on {1, 2, ...} by inversion; 1 - u lies in (0, 1].
      double u = rng.next_unit();
      repeats = 1 + static_cast<long long>(std::floor(std::log1p(-u) / log_alpha));
      if (repeats < 1) repeats = 1;
    }
    long long room = n - seq.length();
    if (repeats > room) repeats = room;
    for (long long r = 0; r < repeats; ++r) seq.letters.push_back(letter);
  }
  return seq;
}

TransitionMatrix transition_matrix(const DiscreteDistribution& dist, ChannelParams params) {
  int k = dist.alphabet_size();
  if (k > kDenseMatrixCap)
    throw ResourceError("transition matrix is only materialized for alphabets up to 4096 letters");
  TransitionMatrix m(k);
  double fresh = 1.0 - params.alpha;
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) m.at(r, c) = fresh * dist.prob(c + 1);
    m.at(r, r) += params.alpha;
  }
  return m;
}

}  // namespace stickymass
