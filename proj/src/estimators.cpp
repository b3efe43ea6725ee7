#include "stickymass/estimators.hpp"

#include <algorithm>
#include <stdexcept>

#include "stickymass/stats.hpp"

namespace stickymass {

EstimateReport good_turing(const SampleSequence& seq) {
  OccupancyCounts occ = counts(seq);
  auto it = occ.count_of_counts.find(1);
  int singletons = it == occ.count_of_counts.end() ? 0 : it->second;
  return {static_cast<double>(singletons) / seq.length(), 0.0, AlphaSource::known};
}

double estimate_alpha(const SampleSequence& seq) {
  int n = seq.length();
  if (n < 1) throw std::invalid_argument("sequence must be nonempty");
  double hat = 1.0 - static_cast<double>(state_changes(seq) + 1) / n;
  return std::clamp(hat, 0.0, 1.0 - 1.0 / n);
}

namespace {

EstimateReport modified_gt(const SampleSequence& seq, double alpha, AlphaSource source) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("stickiness must lie in [0, 1)");
  int n = seq.length();
  if (n < 3) throw std::invalid_argument("modified Good-Turing needs length at least 3");
  double scale = (1.0 - alpha) * (1.0 - alpha) * (n - 2);
  return {interior_singletons(seq) / scale, alpha, source};
}

}  // namespace

EstimateReport modified_good_turing(const SampleSequence& seq, double alpha) {
  return modified_gt(seq, alpha, AlphaSource::known);
}

EstimateReport modified_good_turing_estimated(const SampleSequence& seq) {
  return modified_gt(seq, estimate_alpha(seq), AlphaSource::estimated);
}

}  // namespace stickymass
