#ifndef STICKYMASS_HARNESS_HPP
#define STICKYMASS_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stickymass/distributions.hpp"

namespace stickymass {

enum class AlphaMode { known, estimated, both };

/// Monte Carlo experiment over a grid of (alpha, n) cells.  Each cell runs
/// `trials` independent sequences; in mode `both` the known-alpha and
/// estimated-alpha estimates share each trial's sequence.
struct ExperimentSpec {
  std::string dist_spec;            // distribution spec string; K may be "<factor>n"
  std::vector<double> alphas;
  std::vector<int> ns;
  int trials = 0;
  std::uint64_t seed = 0;
  AlphaMode mode = AlphaMode::both;
  bool with_exact = false;          // attach the closed-form MSE when the alphabet allows
};

struct MseRow {
  double alpha = 0.0;
  int n = 0;
  int trials = 0;
  std::optional<double> mse_known;
  std::optional<double> se_known;
  std::optional<double> mse_estimated;
  std::optional<double> se_estimated;
  std::optional<double> mean_alpha_hat;
  std::optional<double> exact_mse;
};

struct MseReport {
  std::vector<MseRow> rows;  // sorted by (alpha, n), covering the full grid
};

/// Runs the experiment.  Trials are distributed over `threads` workers, but
/// every per-trial result is written to a slot indexed by trial number and
/// reduced in trial order with compensated summation, so the report is
/// byte-identical for any thread count.  threads = 0 means all hardware
/// threads.
MseReport run_mse_experiment(const ExperimentSpec& spec, unsigned threads = 0);

/// CSV with header
/// alpha,n,trials,mse_known,se_known,mse_estimated,se_estimated,mean_alpha_hat,exact_mse
/// Absent values are empty fields; doubles use shortest round-trip form.
void emit_csv(const MseReport& report, std::ostream& out);
std::string csv_string(const MseReport& report);

/// Inverse of emit_csv, field-for-field.
MseReport parse_csv(std::istream& in);

/// The full measurement grid behind one of the two shipped plots:
/// "fig1" uses powerlaw:1.2n,0.1 and "fig2" uses nearly:1.2n,0.1,0.5, both on
/// alpha in {0.5, 0.75, 0.95}, n in {100, ..., 6400} doubling, both alpha
/// modes.
MseReport figdata(const std::string& figure, int trials, std::uint64_t seed,
                  unsigned threads = 0);

}  // namespace stickymass

#endif
