#ifndef KLIN_HARNESS_HPP
#define KLIN_HARNESS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "klin/distance.hpp"
#include "klin/tester.hpp"

namespace klin {

/// Grid of tester experiments: cells are the cartesian product
/// ns x ks x epsilons x families x dists, each run `trials` times with
/// per-trial seeds derive_seed(master_seed, cell_id, trial).
struct ExperimentConfig {
  std::vector<int> ns;
  std::vector<int> ks;
  std::vector<double> epsilons;
  Mode mode = Mode::Star;
  std::vector<std::string> families;  // member | wrongweight[+1|-1] | randomtable | corrupted
  std::vector<std::string> dists;     // distribution spec strings
  int trials = 1;
  uint64_t master_seed = 0;
  int threads = 1;
};

struct TrialRecord {
  int cell_id = 0;
  int n = 0;
  int k = 0;
  double epsilon = 0.0;
  Mode mode = Mode::Star;
  std::string family;
  std::string dist;
  std::string label;  // "member" | "far"
  double delta = 0.0; // certified distance for far instances
  int trial = 0;
  bool accept = true;
  Stage stage = Stage::None;
  uint64_t f_queries = 0;
  uint64_t d_samples = 0;
  double wall_ms = 0.0;
};

struct CellSummary {
  int cell_id = 0;
  int n = 0, k = 0;
  double epsilon = 0.0;
  Mode mode = Mode::Star;
  std::string family, dist;
  int trials = 0;
  int accepts = 0;
  double accept_rate = 0.0;
  double wilson_lo = 0.0, wilson_hi = 0.0;
  double mean_f_queries = 0.0;
  uint64_t max_f_queries = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::vector<CellSummary> summaries;
};

/// Uniformly random weight-k support over [n].
ParitySupport gen_k_parity(int n, int k, Rng& rng);

struct FarInstance {
  FunctionOracle oracle;
  double delta = 0.0;     // certified or by-construction distance
  bool certified_exact = false;  // true when delta came from distance_to_class
};

/// Adversarial generators, each returning a certificate delta >= epsilon:
///  - wrongweight: parity of weight k+1 (or k-1), 1/2-far under uniform;
///  - randomtable: random truth table, resampled (budget 200) until the exact
///    distance to the class is >= epsilon (n <= 16);
///  - corrupted: a k-parity flipped on points of d-mass >= 2*epsilon chosen
///    from d's highest-mass points, then certified exactly (n <= 16).
/// The class is k-Linear* in star mode and k-Linear in exact mode.
FarInstance gen_far_instance(int n, int k, double epsilon, const DistributionSpec& d,
                             const std::string& family, Mode mode, Rng& rng);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// CSV surfaces. The trial CSV carries no wall-clock column, so identical
// (config, master_seed) produce byte-identical files at any thread count.
void write_trials_csv(const ExperimentResult& r, std::ostream& out);
void write_summary_csv(const ExperimentResult& r, std::ostream& out);

struct WilsonInterval {
  double lo = 0.0, hi = 0.0;
};
WilsonInterval wilson95(int successes, int trials);

/// Closed-form query totals from the accounting identity.
struct ScalingRow {
  int k = 0;
  double epsilon = 0.0;
  uint64_t blr = 0, binning = 0, learner = 0, consistency = 0, total = 0;
  int q_learn = 0;
};
std::vector<ScalingRow> query_scaling_report(const std::vector<int>& ks,
                                             const std::vector<double>& epsilons);

/// Flat key-value config file for the bench CLI. Keys: n, k_list,
/// epsilon_list, mode, family, dist, trials, seed, threads.
ExperimentConfig load_bench_config(std::istream& in);
ExperimentConfig load_bench_config_file(const std::string& path);

/// Runs the experiment and writes `out_csv` plus the sibling summary file
/// obtained by replacing the extension with ".summary.csv".
ExperimentResult run_bench_to_files(const ExperimentConfig& cfg, const std::string& out_csv);

std::string format_double(double v);  // shortest round-trip form, for CSV

}  // namespace klin

#endif
