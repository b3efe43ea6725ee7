// Command-line front end: simulate sticky-channel outputs, estimate missing
// mass, run Monte Carlo MSE grids, evaluate risk bounds, and verify the
// closed forms against exhaustive enumeration.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stickymass/analytics.hpp"
#include "stickymass/channel.hpp"
#include "stickymass/distributions.hpp"
#include "stickymass/estimators.hpp"
#include "stickymass/harness.hpp"
#include "stickymass/numeric.hpp"
#include "stickymass/stats.hpp"
#include "stickymass/verify.hpp"

namespace {

using namespace stickymass;

struct GlobalOpts {
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = all hardware threads
  std::string out;
};

// Stream for results: --out path or stdout.
class OutputFile {
 public:
  explicit OutputFile(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

double clip_unit(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

int run_simulate(const GlobalOpts& global, const std::string& dist_spec, double alpha, int n,
                 const std::string& method) {
  DiscreteDistribution dist = DistSpec::parse(dist_spec).materialize(n);
  RandomStream rng(global.seed);
  SampleSequence seq = method == "repeats"
                           ? simulate_repeats(dist, ChannelParams(alpha), n, rng)
                           : simulate_markov(dist, ChannelParams(alpha), n, rng);
  OutputFile out(global.out);
  for (int i = 0; i < seq.length(); ++i) {
    if (i > 0) out.stream() << ' ';
    out.stream() << seq.letters[static_cast<std::size_t>(i)];
  }
  out.stream() << '\n';
  return 0;
}

SampleSequence read_sequence(std::istream& in) {
  SampleSequence seq;
  int letter = 0;
  while (in >> letter) seq.letters.push_back(letter);
  if (seq.letters.empty()) throw std::runtime_error("no sequence on standard input");
  return seq;
}

int run_estimate(const GlobalOpts& global, const std::string& dist_spec, const std::string& alpha,
                 std::optional<int> n, bool clip) {
  OutputFile out(global.out);
  std::ostream& os = out.stream();
  auto emit = [&os, clip](const char* key, double v, bool clippable = false) {
    os << key << ' ' << shortest_double(clippable && clip ? clip_unit(v) : v) << '\n';
  };

  SampleSequence seq;
  std::optional<double> channel_alpha;
  if (alpha == "auto") {
    seq = read_sequence(std::cin);
  } else {
    channel_alpha = std::stod(alpha);
    if (!n) throw CLI::ValidationError("--n is required when --alpha is numeric");
    RandomStream rng(global.seed);
    seq = simulate_markov(DistSpec::parse(dist_spec).materialize(*n), ChannelParams(*channel_alpha),
                          *n, rng);
  }
  DiscreteDistribution dist = DistSpec::parse(dist_spec).materialize(seq.length());

  OccupancyCounts occ = counts(seq);
  auto ones = occ.count_of_counts.find(1);
  os << "n " << seq.length() << '\n';
  if (channel_alpha) os << "alpha " << shortest_double(*channel_alpha) << '\n';
  emit("missing_mass", missing_mass(seq, dist));
  os << "phi1 " << (ones == occ.count_of_counts.end() ? 0 : ones->second) << '\n';
  if (seq.length() >= 3) os << "phi1_interior " << interior_singletons(seq) << '\n';
  os << "tau " << state_changes(seq) << '\n';
  emit("alpha_hat", estimate_alpha(seq));
  emit("good_turing", good_turing(seq).estimate, true);
  if (seq.length() >= 3) {
    if (channel_alpha)
      emit("modified_gt_known", modified_good_turing(seq, *channel_alpha).estimate, true);
    emit("modified_gt_estimated", modified_good_turing_estimated(seq).estimate, true);
  }
  return 0;
}

int run_mse(const GlobalOpts& global, const std::string& dist_spec, std::vector<double> alphas,
            std::vector<int> ns, int trials, const std::string& mode, bool with_exact) {
  ExperimentSpec spec;
  spec.dist_spec = dist_spec;
  spec.alphas = std::move(alphas);
  spec.ns = std::move(ns);
  spec.trials = trials;
  spec.seed = global.seed;
  spec.with_exact = with_exact;
  if (mode == "known")
    spec.mode = AlphaMode::known;
  else if (mode == "estimated")
    spec.mode = AlphaMode::estimated;
  else
    spec.mode = AlphaMode::both;
  MseReport report = run_mse_experiment(spec, global.threads);
  OutputFile out(global.out);
  emit_csv(report, out.stream());
  return 0;
}

int run_bounds(const GlobalOpts& global, double alpha, int n, const std::string& dist_spec,
               std::size_t max_alphabet, bool as_csv) {
  ExactMseOptions opts;
  opts.max_alphabet = max_alphabet;
  std::unique_ptr<DiscreteDistribution> dist;
  if (!dist_spec.empty())
    dist = std::make_unique<DiscreteDistribution>(DistSpec::parse(dist_spec).materialize(n));
  BoundReport report = compute_bounds(n, alpha, dist.get(), opts);

  OutputFile out(global.out);
  std::ostream& os = out.stream();
  if (as_csv) {
    os << "n,alpha,lower_bound,upper_bound_leading,exact_mse\n";
    os << report.n << ',' << shortest_double(report.alpha) << ','
       << shortest_double(report.lower) << ',' << shortest_double(report.upper_leading) << ',';
    if (report.mse) os << shortest_double(*report.mse);
    os << '\n';
  } else {
    os << "n " << report.n << '\n';
    os << "alpha " << shortest_double(report.alpha) << '\n';
    os << "lower_bound " << shortest_double(report.lower) << '\n';
    os << "upper_bound_leading " << shortest_double(report.upper_leading) << '\n';
    if (report.mse) os << "exact_mse " << shortest_double(*report.mse) << '\n';
  }
  return 0;
}

int run_verify(const GlobalOpts& global, const std::string& grid) {
  std::vector<CheckResult> results = run_verification(grid);
  OutputFile out(global.out);
  std::ostream& os = out.stream();
  bool all_pass = true;
  for (const CheckResult& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  max_err=" << shortest_double(r.max_err)
       << "  tol=" << shortest_double(r.tolerance);
    if (!r.detail.empty()) os << "  (" << r.detail << ')';
    os << '\n';
    all_pass = all_pass && r.pass;
  }
  os << (all_pass ? "all checks passed" : "some checks FAILED") << '\n';
  return all_pass ? 0 : 1;
}

int run_figdata(const GlobalOpts& global, const std::string& figure, int trials) {
  MseReport report = figdata(figure, trials, global.seed, global.threads);
  OutputFile out(global.out);
  emit_csv(report, out.stream());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Missing-mass estimation for sticky channels"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file with one key = value per line; flags win");

  GlobalOpts global;
  app.add_option("--seed", global.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--threads", global.threads, "Worker threads (0 = all hardware threads)")
      ->capture_default_str();
  app.add_option("--out", global.out, "Write results to this file instead of stdout");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Sample one channel output sequence");
  simulate->fallthrough();
  std::string sim_dist, sim_method = "markov";
  double sim_alpha = 0.0;
  int sim_n = 0;
  simulate->add_option("--dist", sim_dist, "Distribution spec (powerlaw:K,s | nearly:K,p1,s | twopoint:gamma,L | explicit:p1,p2,...)")->required();
  simulate->add_option("--alpha", sim_alpha, "Channel stickiness in [0, 1)")->required();
  simulate->add_option("--n", sim_n, "Sequence length")->required();
  simulate->add_option("--method", sim_method, "markov or repeats")
      ->check(CLI::IsMember({"markov", "repeats"}));

  // estimate
  auto* estimate = app.add_subcommand(
      "estimate", "Report sequence statistics and missing-mass estimates");
  estimate->fallthrough();
  std::string est_dist, est_alpha;
  int est_n = 0;
  bool est_clip = false;
  estimate->add_option("--dist", est_dist, "Distribution spec")->required();
  estimate
      ->add_option("--alpha", est_alpha,
                   "Channel stickiness, or 'auto' to read a sequence from stdin")
      ->required();
  estimate->add_option("--n", est_n, "Sequence length (numeric --alpha only)");
  estimate->add_flag("--clip", est_clip, "Truncate reported estimates to [0, 1]");

  // mse
  auto* mse = app.add_subcommand("mse", "Monte Carlo MSE over an (alpha, n) grid; CSV output");
  mse->fallthrough();
  std::string mse_dist, mse_mode = "both";
  std::vector<double> mse_alphas;
  std::vector<int> mse_ns;
  int mse_trials = 1000;
  bool mse_exact = false;
  mse->add_option("--dist", mse_dist, "Distribution spec; K may be '<factor>n'")->required();
  mse->add_option("--alpha", mse_alphas, "Channel stickiness (repeatable)")->required();
  mse->add_option("--n", mse_ns, "Sequence length (repeatable)")->required();
  mse->add_option("--trials", mse_trials, "Trials per cell")->capture_default_str();
  mse->add_option("--alpha-mode", mse_mode, "known, estimated, or both")
      ->check(CLI::IsMember({"known", "estimated", "both"}))
      ->capture_default_str();
  mse->add_flag("--exact", mse_exact, "Attach the closed-form MSE per cell when feasible");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Risk bounds (and exact MSE with --dist)");
  bounds->fallthrough();
  std::string bounds_dist;
  double bounds_alpha = 0.0;
  int bounds_n = 0;
  std::size_t bounds_max_k = 5000;
  bool bounds_csv = false;
  bounds->add_option("--alpha", bounds_alpha, "Channel stickiness")->required();
  bounds->add_option("--n", bounds_n, "Sequence length")->required();
  bounds->add_option("--dist", bounds_dist, "Distribution spec for the exact MSE");
  bounds->add_option("--max-k", bounds_max_k, "Alphabet cap for the exact MSE")
      ->capture_default_str();
  bounds->add_flag("--csv", bounds_csv, "Emit one CSV row instead of key-value lines");

  // verify
  auto* verify = app.add_subcommand("verify", "Check closed forms against enumeration");
  verify->fallthrough();
  std::string verify_grid = "small";
  verify->add_option("--grid", verify_grid, "small or full")
      ->check(CLI::IsMember({"small", "full"}))
      ->capture_default_str();

  // figdata
  auto* fig = app.add_subcommand("figdata", "Full measurement grid for a shipped figure");
  fig->fallthrough();
  std::string fig_name;
  int fig_trials = 16000;
  fig->add_option("figure", fig_name, "fig1 or fig2")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2"}));
  fig->add_option("--trials", fig_trials, "Trials per cell")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(global, sim_dist, sim_alpha, sim_n, sim_method);
    if (estimate->parsed())
      return run_estimate(global, est_dist, est_alpha,
                          estimate->count("--n") ? std::optional<int>(est_n) : std::nullopt,
                          est_clip);
    if (mse->parsed())
      return run_mse(global, mse_dist, mse_alphas, mse_ns, mse_trials, mse_mode, mse_exact);
    if (bounds->parsed())
      return run_bounds(global, bounds_alpha, bounds_n, bounds_dist, bounds_max_k, bounds_csv);
    if (verify->parsed()) return run_verify(global, verify_grid);
    if (fig->parsed()) return run_figdata(global, fig_name, fig_trials);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
