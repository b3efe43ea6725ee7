#ifndef STICKYMASS_STATS_HPP
#define STICKYMASS_STATS_HPP

#include <map>
#include <unordered_map>

#include "stickymass/channel.hpp"
#include "stickymass/distributions.hpp"

namespace stickymass {

/// Occupancy view of a sequence: per-letter counts plus the count-of-counts
/// profile (how many letters appear exactly l times).
struct OccupancyCounts {
  std::unordered_map<int, int> letter_counts;
  std::map<int, int> count_of_counts;
};

OccupancyCounts counts(const SampleSequence& seq);

/// Total source mass of letters that never appear in the sequence.
/// Computed as 1 minus the observed mass.  Letters must lie in the
/// distribution's alphabet.
double missing_mass(const SampleSequence& seq, const DiscreteDistribution& dist);

/// Number of letters that appear exactly once in positions 2..n-1 and differ
/// from both endpoint letters.  Requires n >= 3.
int interior_singletons(const SampleSequence& seq);

/// Number of positions i >= 2 with letters[i] != letters[i-1].
int state_changes(const SampleSequence& seq);

}  // namespace stickymass

#endif
