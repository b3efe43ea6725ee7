#ifndef STICKYMASS_DISTRIBUTIONS_HPP
#define STICKYMASS_DISTRIBUTIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "stickymass/random.hpp"

namespace stickymass {

/// Probability distribution on the alphabet {1, ..., K}.
///
/// Entries must be finite, nonnegative, and sum to 1 within 1e-12
/// (compensated summation); construction validates this.  Zero-mass letters
/// are allowed and are never produced by sampling.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<double> probs);

  int alphabet_size() const { return static_cast<int>(probs_.size()); }

  /// Mass of a 1-based letter.
  double prob(int letter) const { return probs_[static_cast<std::size_t>(letter) - 1]; }

  const std::vector<double>& probs() const { return probs_; }

  /// Inverse-CDF draw; returns a 1-based letter with positive mass.
  int sample(RandomStream& rng) const;

 private:
  std::vector<double> probs_;
  std::vector<double> cum_;     // running compensated partial sums
  int last_positive_;           // highest letter with positive mass
};

/// p_i proportional to i^(-s) on {1..K}.  s = 0 gives the uniform
/// distribution exactly (identical entries, not just up to rounding).
DiscreteDistribution power_law(int K, double s);

/// Head letter gets mass p1; the rest of the mass is spread over {2..K}
/// proportionally to i^(-s) with i the actual letter index.
DiscreteDistribution nearly_power_law(int K, double p1, double s);

/// Head letter of mass 0.5 + gamma plus L equal tail letters sharing the
/// remaining 0.5 - gamma.  Alphabet size is L + 1.
DiscreteDistribution two_point(double gamma, long long L);

/// Uniform over {1..K}; convenience for power_law(K, 0).
DiscreteDistribution uniform(int K);

/// A uniformly random point of the K-simplex (all entries positive).
DiscreteDistribution random_distribution(int K, RandomStream& rng);

/// Free-function form of DiscreteDistribution::sample.
int sample_letter(const DiscreteDistribution& dist, RandomStream& rng);

/// Parsed distribution spec string:
///   powerlaw:K,s | nearly:K,p1,s | twopoint:gamma,L | explicit:p1,p2,...
/// For powerlaw/nearly the K field may be "<factor>n" (e.g. "1.2n"), which
/// resolves to ceil(factor * n) once a sequence length is known.
struct DistSpec {
  enum class Kind { power_law, nearly_power_law, two_point, explicit_list };

  Kind kind = Kind::power_law;
  bool k_symbolic = false;
  double k_factor = 0.0;
  long long k_value = 0;
  double s = 0.0;
  double p1 = 0.0;
  double gamma = 0.0;
  long long L = 0;
  std::vector<double> probs;

  static DistSpec parse(const std::string& text);

  /// Alphabet size for the given n (needed only when K is symbolic).
  long long resolve_alphabet(std::optional<int> n) const;

  DiscreteDistribution materialize(std::optional<int> n = std::nullopt) const;
};

}  // namespace stickymass

#endif
