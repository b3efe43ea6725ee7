#ifndef STICKYMASS_ESTIMATORS_HPP
#define STICKYMASS_ESTIMATORS_HPP

#include "stickymass/channel.hpp"

namespace stickymass {

enum class AlphaSource { known, estimated };

struct EstimateReport {
  double estimate;
  double alpha_used;
  AlphaSource alpha_source;
};

/// Classic Good-Turing missing-mass estimate: (number of letters seen exactly
/// once) / n.  Suited to independent samples; biased under sticky outputs.
EstimateReport good_turing(const SampleSequence& seq);

/// Stickiness estimate from the change count: 1 - (changes + 1) / n, clamped
/// to [0, 1 - 1/n].
double estimate_alpha(const SampleSequence& seq);

/// Missing-mass estimate adapted to sticky outputs: interior singletons
/// rescaled by (1 - alpha)^2 (n - 2).  Requires n >= 3 and alpha in [0, 1).
/// The raw value is reported; it is not truncated to [0, 1].
EstimateReport modified_good_turing(const SampleSequence& seq, double alpha);

/// modified_good_turing with alpha replaced by estimate_alpha(seq).
EstimateReport modified_good_turing_estimated(const SampleSequence& seq);

}  // namespace stickymass

#endif
