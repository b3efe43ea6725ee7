#include "stickymass/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "stickymass/errors.hpp"
#include "stickymass/numeric.hpp"

namespace stickymass {

namespace {

constexpr double kSumTolerance = 1e-12;

std::vector<double> normalized(std::vector<double> weights) {
  CompensatedSum total;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("distribution weights must be finite and nonnegative");
    total.add(w);
  }
  double t = total.total();
  if (!(t > 0.0)) throw std::invalid_argument("distribution weights must have positive total");
  for (double& w : weights) w /= t;
  return weights;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs)
    : probs_(std::move(probs)), last_positive_(-1) {
  if (probs_.empty()) throw std::invalid_argument("alphabet must be nonempty");
  CompensatedSum total;
  cum_.reserve(probs_.size());
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    double p = probs_[i];
    if (!std::isfinite(p) || p < 0.0)
      throw std::invalid_argument("probabilities must be finite and nonnegative");
    total.add(p);
    cum_.push_back(total.total());
    if (p > 0.0) last_positive_ = static_cast<int>(i);
  }
  if (std::abs(total.total() - 1.0) > kSumTolerance)
    throw std::invalid_argument("probabilities must sum to 1 within 1e-12");
}

int DiscreteDistribution::sample(RandomStream& rng) const {
  // Scale into [0, total) so the search always lands inside the table; a
  // zero-mass letter owns an empty half-open interval and cannot be hit.
  double t = rng.next_unit() * cum_.back();
  auto it = std::upper_bound(cum_.begin(), cum_.end(), t);
  if (it == cum_.end()) return last_positive_ + 1;
  int letter = static_cast<int>(it - cum_.begin()) + 1;
  return letter;
}

int sample_letter(const DiscreteDistribution& dist, RandomStream& rng) {
  return dist.sample(rng);
}

DiscreteDistribution power_law(int K, double s) {
  if (K < 1) throw std::invalid_argument("power_law: K must be at least 1");
  if (!(s >= 0.0)) throw std::invalid_argument("power_law: exponent must be nonnegative");
  std::vector<double> w(static_cast<std::size_t>(K));
  if (s == 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(K));
    return DiscreteDistribution(std::move(w));
  }
  for (int i = 1; i <= K; ++i)
    w[static_cast<std::size_t>(i) - 1] = std::exp(-s * std::log(static_cast<double>(i)));
  return DiscreteDistribution(normalized(std::move(w)));
}

DiscreteDistribution uniform(int K) { return power_law(K, 0.0); }

DiscreteDistribution nearly_power_law(int K, double p1, double s) {
  if (K < 2) throw std::invalid_argument("nearly_power_law: K must be at least 2");
  if (!(p1 > 0.0 && p1 < 1.0))
    throw std::invalid_argument("nearly_power_law: head mass must lie in (0, 1)");
  if (!(s >= 0.0)) throw std::invalid_argument("nearly_power_law: exponent must be nonnegative");
  std::vector<double> tail(static_cast<std::size_t>(K) - 1);
  CompensatedSum total;
  for (int i = 2; i <= K; ++i) {
    double w = std::exp(-s * std::log(static_cast<double>(i)));
    tail[static_cast<std::size_t>(i) - 2] = w;
    total.add(w);
  }
  double t = total.total();
  std::vector<double> p(static_cast<std::size_t>(K));
  p[0] = p1;
  for (int i = 2; i <= K; ++i)
    p[static_cast<std::size_t>(i) - 1] = (1.0 - p1) * tail[static_cast<std::size_t>(i) - 2] / t;
  return DiscreteDistribution(std::move(p));
}

DiscreteDistribution two_point(double gamma, long long L) {
  if (!(gamma >= 0.0 && gamma < 0.5))
    throw std::invalid_argument("two_point: gamma must lie in [0, 0.5)");
  if (L < 1) throw std::invalid_argument("two_point: L must be at least 1");
  std::vector<double> p(static_cast<std::size_t>(L) + 1);
  p[0] = 0.5 + gamma;
  double tail = (0.5 - gamma) / static_cast<double>(L);
  std::fill(p.begin() + 1, p.end(), tail);
  return DiscreteDistribution(std::move(p));
}

DiscreteDistribution random_distribution(int K, RandomStream& rng) {
  if (K < 1) throw std::invalid_argument("random_distribution: K must be at least 1");
  std::vector<double> w(static_cast<std::size_t>(K));
  for (double& v : w) {
    double u;
    do {
      u = rng.next_unit();
    } while (u <= 0.0);
    v = -std::log(u);
  }
  return DiscreteDistribution(normalized(std::move(w)));
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& field, const char* what) {
  double v = 0.0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw std::invalid_argument(std::string("dist spec: bad ") + what + " '" + field + "'");
  return v;
}

long long parse_int(const std::string& field, const char* what) {
  long long v = 0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw std::invalid_argument(std::string("dist spec: bad ") + what + " '" + field + "'");
  return v;
}

// K field: either an integer or "<factor>n" resolved later as ceil(factor*n).
void parse_alphabet_field(const std::string& field, DistSpec& spec) {
  if (!field.empty() && field.back() == 'n') {
    spec.k_symbolic = true;
    spec.k_factor = parse_double(field.substr(0, field.size() - 1), "alphabet factor");
    if (!(spec.k_factor > 0.0))
      throw std::invalid_argument("dist spec: alphabet factor must be positive");
  } else {
    spec.k_symbolic = false;
    spec.k_value = parse_int(field, "alphabet size");
  }
}

}  // namespace

DistSpec DistSpec::parse(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("dist spec: expected '<family>:<args>', got '" + text + "'");
  std::string family = text.substr(0, colon);
  std::vector<std::string> args = split(text.substr(colon + 1), ',');

  DistSpec spec;
  if (family == "powerlaw") {
    if (args.size() != 2) throw std::invalid_argument("dist spec: powerlaw takes K,s");
    spec.kind = Kind::power_law;
    parse_alphabet_field(args[0], spec);
    spec.s = parse_double(args[1], "exponent");
  } else if (family == "nearly") {
    if (args.size() != 3) throw std::invalid_argument("dist spec: nearly takes K,p1,s");
    spec.kind = Kind::nearly_power_law;
    parse_alphabet_field(args[0], spec);
    spec.p1 = parse_double(args[1], "head mass");
    spec.s = parse_double(args[2], "exponent");
  } else if (family == "twopoint") {
    if (args.size() != 2) throw std::invalid_argument("dist spec: twopoint takes gamma,L");
    spec.kind = Kind::two_point;
    spec.gamma = parse_double(args[0], "gamma");
    spec.L = parse_int(args[1], "tail size");
  } else if (family == "explicit") {
    if (args.empty()) throw std::invalid_argument("dist spec: explicit takes p1,p2,...");
    spec.kind = Kind::explicit_list;
    for (const std::string& a : args) spec.probs.push_back(parse_double(a, "probability"));
  } else {
    throw std::invalid_argument("dist spec: unknown family '" + family + "'");
  }
  return spec;
}

long long DistSpec::resolve_alphabet(std::optional<int> n) const {
  switch (kind) {
    case Kind::two_point:
      return L + 1;
    case Kind::explicit_list:
      return static_cast<long long>(probs.size());
    default:
      break;
  }
  if (!k_symbolic) return k_value;
  if (!n)
    throw std::invalid_argument("dist spec: symbolic alphabet size requires a sequence length");
  return static_cast<long long>(std::ceil(k_factor * static_cast<double>(*n)));
}

DiscreteDistribution DistSpec::materialize(std::optional<int> n) const {
  switch (kind) {
    case Kind::power_law:
      return power_law(static_cast<int>(resolve_alphabet(n)), s);
    case Kind::nearly_power_law:
      return nearly_power_law(static_cast<int>(resolve_alphabet(n)), p1, s);
    case Kind::two_point:
      return two_point(gamma, L);
    case Kind::explicit_list:
      return DiscreteDistribution(probs);
  }
  throw std::logic_error("unreachable");
}

}  // namespace stickymass
