#include "stickymass/harness.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <ostream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "stickymass/analytics.hpp"
#include "stickymass/channel.hpp"
#include "stickymass/errors.hpp"
#include "stickymass/estimators.hpp"
#include "stickymass/numeric.hpp"
#include "stickymass/stats.hpp"

namespace stickymass {

namespace {

constexpr const char* kCsvHeader =
    "alpha,n,trials,mse_known,se_known,mse_estimated,se_estimated,mean_alpha_hat,exact_mse";

unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

struct CellResults {
  std::vector<double> sq_err_known;
  std::vector<double> sq_err_estimated;
  std::vector<double> alpha_hats;
};

// One cell of the grid.  The per-trial seed depends only on (master seed,
// alpha bits, n, trial index), so cell results do not change when the grid
// around them changes, and workers write to disjoint trial slots.
CellResults run_cell(const DiscreteDistribution& dist, double alpha, int n, int trials,
                     std::uint64_t seed, AlphaMode mode, unsigned threads) {
  bool want_known = mode != AlphaMode::estimated;
  bool want_estimated = mode != AlphaMode::known;

  CellResults results;
  if (want_known) results.sq_err_known.resize(static_cast<std::size_t>(trials));
  if (want_estimated) {
    results.sq_err_estimated.resize(static_cast<std::size_t>(trials));
    results.alpha_hats.resize(static_cast<std::size_t>(trials));
  }

  std::uint64_t alpha_bits = std::bit_cast<std::uint64_t>(alpha);
  auto work = [&](int lo, int hi) {
    ChannelParams params(alpha);
    for (int t = lo; t < hi; ++t) {
      RandomStream rng(mix_seed(seed, alpha_bits, static_cast<std::uint64_t>(n),
                                static_cast<std::uint64_t>(t)));
      SampleSequence seq = simulate_markov(dist, params, n, rng);
      double truth = missing_mass(seq, dist);
      if (want_known) {
        double diff = modified_good_turing(seq, alpha).estimate - truth;
        results.sq_err_known[static_cast<std::size_t>(t)] = diff * diff;
      }
      if (want_estimated) {
        EstimateReport est = modified_good_turing_estimated(seq);
        double diff = est.estimate - truth;
        results.sq_err_estimated[static_cast<std::size_t>(t)] = diff * diff;
        results.alpha_hats[static_cast<std::size_t>(t)] = est.alpha_used;
      }
    }
  };

  unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(std::max(trials, 1)));
  if (workers <= 1) {
    work(0, trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    int chunk = (trials + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (unsigned w = 0; w < workers; ++w) {
      int lo = static_cast<int>(w) * chunk;
      int hi = std::min(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(work, lo, hi);
    }
    for (std::thread& th : pool) th.join();
  }
  return results;
}

}  // namespace

MseReport run_mse_experiment(const ExperimentSpec& spec, unsigned threads) {
  if (spec.trials < 1) throw std::invalid_argument("experiment needs at least one trial");
  if (spec.alphas.empty() || spec.ns.empty())
    throw std::invalid_argument("experiment needs at least one alpha and one n");
  DistSpec dist_spec = DistSpec::parse(spec.dist_spec);

  std::vector<double> alphas(spec.alphas);
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  std::vector<int> ns(spec.ns);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  unsigned workers = resolve_threads(threads);

  MseReport report;
  for (double alpha : alphas) {
    for (int n : ns) {
      DiscreteDistribution dist = dist_spec.materialize(n);
      CellResults cell = run_cell(dist, alpha, n, spec.trials, spec.seed, spec.mode, workers);

      MseRow row;
      row.alpha = alpha;
      row.n = n;
      row.trials = spec.trials;
      if (!cell.sq_err_known.empty()) {
        double mse = mean_of(cell.sq_err_known);
        row.mse_known = mse;
        row.se_known = sample_stddev(cell.sq_err_known, mse) /
                       std::sqrt(static_cast<double>(spec.trials));
      }
      if (!cell.sq_err_estimated.empty()) {
        double mse = mean_of(cell.sq_err_estimated);
        row.mse_estimated = mse;
        row.se_estimated = sample_stddev(cell.sq_err_estimated, mse) /
                           std::sqrt(static_cast<double>(spec.trials));
        row.mean_alpha_hat = mean_of(cell.alpha_hats);
      }
      if (spec.with_exact && n >= 5 &&
          static_cast<std::size_t>(dist.alphabet_size()) <= ExactMseOptions{}.max_alphabet)
        row.exact_mse = exact_mse(dist, alpha, n);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

namespace {

void put_field(std::ostream& out, const std::optional<double>& v, bool leading_comma = true) {
  if (leading_comma) out << ',';
  if (v) out << shortest_double(*v);
}

std::optional<double> parse_field(const std::string& field) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw std::invalid_argument("csv: bad numeric field '" + field + "'");
  return v;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

void emit_csv(const MseReport& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const MseRow& row : report.rows) {
    out << shortest_double(row.alpha) << ',' << row.n << ',' << row.trials;
    put_field(out, row.mse_known);
    put_field(out, row.se_known);
    put_field(out, row.mse_estimated);
    put_field(out, row.se_estimated);
    put_field(out, row.mean_alpha_hat);
    put_field(out, row.exact_mse);
    out << '\n';
  }
}

std::string csv_string(const MseReport& report) {
  std::ostringstream out;
  emit_csv(report, out);
  return out.str();
}

MseReport parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::invalid_argument("csv: unexpected header '" + line + "'");

  MseReport report;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_row(line);
    if (fields.size() != 9)
      throw std::invalid_argument("csv: expected 9 fields, got " +
                                  std::to_string(fields.size()));
    MseRow row;
    auto alpha = parse_field(fields[0]);
    if (!alpha) throw std::invalid_argument("csv: alpha must be present");
    row.alpha = *alpha;
    row.n = static_cast<int>(std::stol(fields[1]));
    row.trials = static_cast<int>(std::stol(fields[2]));
    row.mse_known = parse_field(fields[3]);
    row.se_known = parse_field(fields[4]);
    row.mse_estimated = parse_field(fields[5]);
    row.se_estimated = parse_field(fields[6]);
    row.mean_alpha_hat = parse_field(fields[7]);
    row.exact_mse = parse_field(fields[8]);
    report.rows.push_back(std::move(row));
  }
  return report;
}

MseReport figdata(const std::string& figure, int trials, std::uint64_t seed, unsigned threads) {
  ExperimentSpec spec;
  if (figure == "fig1")
    spec.dist_spec = "powerlaw:1.2n,0.1";
  else if (figure == "fig2")
    spec.dist_spec = "nearly:1.2n,0.1,0.5";
  else
    throw std::invalid_argument("figdata: figure must be fig1 or fig2");
  spec.alphas = {0.5, 0.75, 0.95};
  spec.ns = {100, 200, 400, 800, 1600, 3200, 6400};
  spec.trials = trials;
  spec.seed = seed;
  spec.mode = AlphaMode::both;
  return run_mse_experiment(spec, threads);
}

}  // namespace stickymass
