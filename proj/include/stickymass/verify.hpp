#ifndef STICKYMASS_VERIFY_HPP
#define STICKYMASS_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace stickymass {

struct CheckResult {
  std::string name;
  double max_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

/// Grid of small channels over which closed forms are checked against
/// exhaustive enumeration.
struct VerifyGrid {
  std::vector<int> alphabet_sizes;
  std::vector<int> lengths;
  std::vector<double> alphas;
  int dists_per_cell = 5;
  std::uint64_t seed = 20240915;
};

VerifyGrid small_grid();
VerifyGrid full_grid();

/// Per-letter/pair occupancy closed forms vs enumeration (six checks).
std::vector<CheckResult> verify_occupancy_forms(const VerifyGrid& grid, double tolerance);

/// Closed-form MSE vs enumeration over the grid (lengths below 5 skipped).
CheckResult verify_exact_mse(const VerifyGrid& grid, double tolerance);

/// Closed-form bias vs enumeration over the grid (lengths below 3 skipped).
CheckResult verify_exact_bias(const VerifyGrid& grid, double tolerance);

/// |exact bias| <= 10/n on the shipped power-law family at production sizes.
CheckResult verify_bias_decay();

/// Trajectory-law KL decomposition vs enumeration over random sticky chain
/// pairs.
CheckResult verify_markov_kl(const VerifyGrid& grid, double tolerance);

/// Two-point closed-form row KLs vs the generic row computation, and the
/// exact TV <= Pinsker(KL) <= closed-form TV bound chain.
std::vector<CheckResult> verify_two_point(double row_tolerance);

/// Everything above at the named size ("small" or "full").
std::vector<CheckResult> run_verification(const std::string& grid_name);

}  // namespace stickymass

#endif
