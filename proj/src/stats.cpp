#include "stickymass/stats.hpp"

#include <algorithm>
#include <stdexcept>

#include "stickymass/numeric.hpp"

namespace stickymass {

OccupancyCounts counts(const SampleSequence& seq) {
  if (seq.letters.empty()) throw std::invalid_argument("sequence must be nonempty");
  OccupancyCounts occ;
  for (int x : seq.letters) ++occ.letter_counts[x];
  for (const auto& [letter, c] : occ.letter_counts) ++occ.count_of_counts[c];
  return occ;
}

double missing_mass(const SampleSequence& seq, const DiscreteDistribution& dist) {
  if (seq.letters.empty()) throw std::invalid_argument("sequence must be nonempty");
  std::vector<int> seen(seq.letters);
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  CompensatedSum observed;
  for (int x : seen) {
    if (x < 1 || x > dist.alphabet_size())
      throw std::invalid_argument("sequence letter outside the distribution's alphabet");
    observed.add(dist.prob(x));
  }
  double m = 1.0 - observed.total();
  return m < 0.0 ? 0.0 : m;
}

int interior_singletons(const SampleSequence& seq) {
  int n = seq.length();
  if (n < 3) throw std::invalid_argument("interior singletons need length at least 3");
  std::unordered_map<int, int> interior;
  for (int i = 1; i + 1 < n; ++i) ++interior[seq.letters[static_cast<std::size_t>(i)]];
  int first = seq.letters.front();
  int last = seq.letters.back();
  int count = 0;
  for (const auto& [letter, c] : interior)
    if (c == 1 && letter != first && letter != last) ++count;
  return count;
}

int state_changes(const SampleSequence& seq) {
  if (seq.letters.empty()) throw std::invalid_argument("sequence must be nonempty");
  int changes = 0;
  for (std::size_t i = 1; i < seq.letters.size(); ++i)
    if (seq.letters[i] != seq.letters[i - 1]) ++changes;
  return changes;
}

}  // namespace stickymass
