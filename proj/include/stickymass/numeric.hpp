#ifndef STICKYMASS_NUMERIC_HPP
#define STICKYMASS_NUMERIC_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace stickymass {

// Neumaier-compensated accumulator.  Used everywhere a long sum feeds a
// tight tolerance (normalization, enumeration totals, MSE reductions) so
// results do not drift with the number of terms.
class CompensatedSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double total() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.total();
}

// (1 - c)^m evaluated as exp(m * log1p(-c)) so that tiny c and large m keep
// full relative precision.  c is clamped to [0, 1]; m == 0 returns 1 even
// when c == 1.
inline double pow_one_minus(double c, long long m) {
  if (m == 0) return 1.0;
  if (c <= 0.0) return m == 1 ? 1.0 - c : std::exp(static_cast<double>(m) * std::log1p(-c));
  if (c >= 1.0) return 0.0;
  return std::exp(static_cast<double>(m) * std::log1p(-c));
}

// Shortest decimal string that round-trips to the same double.  Keeps CSV
// output byte-stable and exactly parseable.
inline std::string shortest_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return compensated_total(values) / static_cast<double>(values.size());
}

// Sample standard deviation (n-1 denominator); 0 for fewer than two samples.
inline double sample_stddev(std::span<const double> values, double mean) {
  if (values.size() < 2) return 0.0;
  CompensatedSum s;
  for (double v : values) {
    double d = v - mean;
    s.add(d * d);
  }
  return std::sqrt(s.total() / static_cast<double>(values.size() - 1));
}

}  // namespace stickymass

#endif
