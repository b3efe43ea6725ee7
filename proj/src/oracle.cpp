#include "stickymass/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stickymass/errors.hpp"
#include "stickymass/numeric.hpp"
#include "stickymass/stats.hpp"

namespace stickymass {

namespace {

// K^n with overflow detection; returns false if the count exceeds limit.
bool sequence_count(int k, int n, std::uint64_t limit, std::uint64_t& out) {
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > limit / static_cast<std::uint64_t>(k)) return false;
    count *= static_cast<std::uint64_t>(k);
  }
  out = count;
  return count <= limit;
}

void check_same_space(const SequenceLaw& a, const SequenceLaw& b) {
  if (a.alphabet_size != b.alphabet_size || a.length != b.length)
    throw std::invalid_argument("laws must share alphabet size and sequence length");
}

struct Walker {
  const DiscreteDistribution& dist;
  double alpha;
  int n;
  const std::function<void(const std::vector<int>&, double)>& visit;
  std::vector<int> letters;

  void descend(int depth, double prob) {
    if (depth == n) {
      visit(letters, prob);
      return;
    }
    int k = dist.alphabet_size();
    double fresh = 1.0 - alpha;
    int prev = depth == 0 ? 0 : letters[static_cast<std::size_t>(depth) - 1];
    for (int x = 1; x <= k; ++x) {
      double step = depth == 0 ? dist.prob(x) : fresh * dist.prob(x);
      if (depth > 0 && x == prev) step += alpha;
      letters.push_back(x);
      descend(depth + 1, prob * step);
      letters.pop_back();
    }
  }
};

}  // namespace

std::size_t SequenceLaw::index_of(const std::vector<int>& letters) const {
  std::size_t idx = 0;
  for (int x : letters) idx = idx * static_cast<std::size_t>(alphabet_size) +
                              static_cast<std::size_t>(x - 1);
  return idx;
}

std::vector<int> SequenceLaw::sequence_at(std::size_t index) const {
  std::vector<int> letters(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    letters[static_cast<std::size_t>(i)] =
        static_cast<int>(index % static_cast<std::size_t>(alphabet_size)) + 1;
    index /= static_cast<std::size_t>(alphabet_size);
  }
  return letters;
}

void enumerate_sequences(const DiscreteDistribution& dist, ChannelParams params, int n,
                         const std::function<void(const std::vector<int>&, double)>& visit,
                         std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("sequence length must be at least 1");
  std::uint64_t count = 0;
  if (!sequence_count(dist.alphabet_size(), n, budget, count))
    throw ResourceError("enumeration needs K^n = " + std::to_string(dist.alphabet_size()) + "^" +
                        std::to_string(n) + " sequences, over the budget of " +
                        std::to_string(budget));
  Walker w{dist, params.alpha, n, visit, {}};
  w.letters.reserve(static_cast<std::size_t>(n));
  w.descend(0, 1.0);
}

SequenceLaw enumerate_law(const DiscreteDistribution& dist, ChannelParams params, int n,
                          std::uint64_t budget) {
  SequenceLaw law;
  law.alphabet_size = dist.alphabet_size();
  law.length = n;
  enumerate_sequences(
      dist, params, n, [&law](const std::vector<int>&, double p) { law.probs.push_back(p); },
      budget);
  return law;
}

double event_prob(const SequenceLaw& law,
                  const std::function<bool(const std::vector<int>&)>& event) {
  CompensatedSum total;
  std::size_t idx = 0;
  std::vector<int> letters(static_cast<std::size_t>(law.length), 1);
  for (;;) {
    if (event(letters)) total.add(law.probs[idx]);
    // odometer increment in lexicographic order
    int pos = law.length - 1;
    while (pos >= 0 && letters[static_cast<std::size_t>(pos)] == law.alphabet_size) {
      letters[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++letters[static_cast<std::size_t>(pos)];
    ++idx;
  }
  return total.total();
}

double expectation(const SequenceLaw& law,
                   const std::function<double(const std::vector<int>&)>& fn) {
  CompensatedSum total;
  std::size_t idx = 0;
  std::vector<int> letters(static_cast<std::size_t>(law.length), 1);
  for (;;) {
    total.add(fn(letters) * law.probs[idx]);
    int pos = law.length - 1;
    while (pos >= 0 && letters[static_cast<std::size_t>(pos)] == law.alphabet_size) {
      letters[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++letters[static_cast<std::size_t>(pos)];
    ++idx;
  }
  return total.total();
}

double brute_mse(const SequenceLaw& law, const DiscreteDistribution& dist,
                 const std::function<double(const SampleSequence&)>& estimator) {
  return expectation(law, [&](const std::vector<int>& letters) {
    SampleSequence seq{letters};
    double diff = estimator(seq) - missing_mass(seq, dist);
    return diff * diff;
  });
}

double brute_bias(const SequenceLaw& law, const DiscreteDistribution& dist,
                  const std::function<double(const SampleSequence&)>& estimator) {
  return expectation(law, [&](const std::vector<int>& letters) {
    SampleSequence seq{letters};
    return estimator(seq) - missing_mass(seq, dist);
  });
}

double brute_tv(const SequenceLaw& a, const SequenceLaw& b) {
  check_same_space(a, b);
  CompensatedSum total;
  for (std::size_t i = 0; i < a.probs.size(); ++i) total.add(std::abs(a.probs[i] - b.probs[i]));
  return 0.5 * total.total();
}

double brute_kl(const SequenceLaw& a, const SequenceLaw& b) {
  check_same_space(a, b);
  CompensatedSum total;
  for (std::size_t i = 0; i < a.probs.size(); ++i) {
    double pa = a.probs[i];
    if (pa == 0.0) continue;
    double pb = b.probs[i];
    if (pb == 0.0) return std::numeric_limits<double>::infinity();
    total.add(pa * std::log(pa / pb));
  }
  return total.total();
}

}  // namespace stickymass
