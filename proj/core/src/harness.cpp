#include "klin/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "klin/exact_sum.hpp"
#include "klin/function_spec.hpp"

namespace klin {

namespace {

constexpr int kCertifyBudget = 200;
constexpr int kCertifyMaxDim = 16;

ClassMode class_mode_for(Mode mode) {
  return mode == Mode::Star ? ClassMode::AtMostK : ClassMode::ExactK;
}

double certify(FunctionOracle& f, const DistributionSpec& d, int k, Mode mode) {
  return distance_to_class(f, d, k, class_mode_for(mode)).first;
}

// Highest-mass points of d, by descending mass then ascending packed index.
std::vector<std::pair<uint64_t, double>> mass_ranked_points(const DistributionSpec& d) {
  std::vector<std::pair<uint64_t, double>> pts;
  if (d.kind() == DistributionSpec::Kind::Explicit || d.kind() == DistributionSpec::Kind::Mixture) {
    std::map<uint64_t, double> merged;
    for (const auto& [pt, w] : d.points()) merged[pt.words()[0]] += w;
    pts.assign(merged.begin(), merged.end());
  } else {
    BitVector scratch(d.n());
    for (uint64_t idx = 0; idx < (uint64_t{1} << d.n()); ++idx) {
      scratch.words()[0] = idx;
      pts.emplace_back(idx, d.mass(scratch));
    }
  }
  std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return pts;
}

}  // namespace

ParitySupport gen_k_parity(int n, int k, Rng& rng) {
  if (k < 0 || k > n) throw std::invalid_argument("gen_k_parity: need 0 <= k <= n");
  // Floyd's sampling: uniform k-subset in k draws.
  std::vector<int> chosen;
  chosen.reserve(k);
  for (int j = n - k + 1; j <= n; ++j) {
    const int t = static_cast<int>(rng.below(j)) + 1;
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
      chosen.push_back(t);
    else
      chosen.push_back(j);
  }
  return ParitySupport(n, std::move(chosen));
}

FarInstance gen_far_instance(int n, int k, double epsilon, const DistributionSpec& d,
                             const std::string& family, Mode mode, Rng& rng) {
  if (d.n() != n) throw std::invalid_argument("gen_far_instance: distribution dimension mismatch");
  const bool can_certify = n <= kCertifyMaxDim;

  if (family == "wrongweight" || family == "wrongweight+1" || family == "wrongweight-1") {
    int weight = family == "wrongweight-1" ? k - 1 : k + 1;
    if (weight > n) throw std::invalid_argument("gen_far_instance: wrong-weight parity needs k+1 <= n");
    if (weight < 0 || (mode == Mode::Star && weight <= k))
      throw std::invalid_argument("gen_far_instance: weight " + std::to_string(weight) +
                                  " is inside the tested class");
    FarInstance inst{make_parity_oracle(gen_k_parity(n, weight, rng)), 0.0, false};
    if (can_certify) {
      inst.delta = certify(inst.oracle, d, k, mode);
      inst.certified_exact = true;
    } else if (d.kind() == DistributionSpec::Kind::Uniform) {
      inst.delta = 0.5;  // distinct parities are 1/2-far under uniform
    } else {
      throw std::invalid_argument(
          "gen_far_instance: wrongweight under a non-uniform distribution needs n <= 16");
    }
    if (inst.delta < epsilon)
      throw std::runtime_error("gen_far_instance: wrong-weight certificate below epsilon");
    return inst;
  }

  if (family == "randomtable") {
    if (!can_certify) throw std::invalid_argument("gen_far_instance: randomtable needs n <= 16");
    const size_t words = ((size_t{1} << n) + 63) / 64;
    for (int attempt = 0; attempt < kCertifyBudget; ++attempt) {
      std::vector<uint64_t> table(words);
      for (auto& w : table) w = rng.next_u64();
      FarInstance inst{make_table_oracle(n, std::move(table)), 0.0, true};
      inst.delta = certify(inst.oracle, d, k, mode);
      if (inst.delta >= epsilon) return inst;
    }
    throw std::runtime_error("gen_far_instance: certification budget exhausted (randomtable)");
  }

  if (family == "corrupted") {
    if (!can_certify) throw std::invalid_argument("gen_far_instance: corrupted needs n <= 16");
    const double target_mass = std::min(1.0, 2.0 * epsilon);
    for (int attempt = 0; attempt < kCertifyBudget; ++attempt) {
      const ParitySupport base = gen_k_parity(n, k, rng);
      std::vector<uint64_t> flips;
      if (d.kind() == DistributionSpec::Kind::Uniform) {
        const uint64_t size = uint64_t{1} << n;
        const uint64_t count = static_cast<uint64_t>(std::ceil(target_mass * size));
        while (flips.size() < count) {
          const uint64_t p = rng.below(size);
          if (std::find(flips.begin(), flips.end(), p) == flips.end()) flips.push_back(p);
        }
      } else {
        ExactSum mass;
        for (const auto& [idx, w] : mass_ranked_points(d)) {
          if (mass.value() >= target_mass) break;
          flips.push_back(idx);
          mass.add(w);
        }
        if (mass.value() < target_mass)
          throw std::runtime_error("gen_far_instance: distribution carries mass below 2*epsilon");
      }
      FarInstance inst{make_corrupted_parity_oracle(base, std::move(flips)), 0.0, true};
      inst.delta = certify(inst.oracle, d, k, mode);
      if (inst.delta >= epsilon) return inst;
    }
    throw std::runtime_error("gen_far_instance: certification budget exhausted (corrupted)");
  }

  throw std::invalid_argument("gen_far_instance: unknown family: " + family);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (cfg.ns.empty() || cfg.ks.empty() || cfg.epsilons.empty() || cfg.families.empty() ||
      cfg.dists.empty())
    throw std::invalid_argument("run_experiment: empty grid axis");

  struct Cell {
    int n, k;
    double epsilon;
    std::string family, dist;
    TesterConfig tcfg;
    DistributionSpec d;
    std::shared_ptr<const KLinearTester> tester;
  };

  // Learner matrices depend only on k; build each once and share.
  std::map<int, std::shared_ptr<const QueryMatrix>> matrices;
  for (int k : cfg.ks) {
    const TesterConfig probe = TesterConfig::make(std::max(cfg.ns[0], k * k + 1), k, 0.5, cfg.mode, 0);
    if (!matrices.count(k))
      matrices[k] =
          std::make_shared<const QueryMatrix>(build_bch_matrix(probe.learner_cells, probe.learner_k));
  }

  std::vector<Cell> cells;
  for (int n : cfg.ns)
    for (int k : cfg.ks)
      for (double eps : cfg.epsilons)
        for (const auto& family : cfg.families)
          for (const auto& dist : cfg.dists) {
            TesterConfig tcfg = TesterConfig::make(n, k, eps, cfg.mode, cfg.master_seed);
            DistributionSpec d = make_distribution(dist, n);
            auto tester = std::make_shared<const KLinearTester>(tcfg, matrices.at(k));
            cells.push_back(Cell{n, k, eps, family, dist, tcfg, std::move(d), std::move(tester)});
          }

  const size_t total_jobs = cells.size() * static_cast<size_t>(cfg.trials);
  ExperimentResult result;
  result.records.resize(total_jobs);

  std::atomic<size_t> next_job{0};
  std::exception_ptr first_error;
  std::mutex error_mu;

  const auto worker = [&]() {
    for (;;) {
      const size_t job = next_job.fetch_add(1, std::memory_order_relaxed);
      if (job >= total_jobs) return;
      const size_t ci = job / cfg.trials;
      const int trial = static_cast<int>(job % cfg.trials);
      const Cell& cell = cells[ci];
      try {
        const uint64_t trial_seed = derive_seed(cfg.master_seed, ci, trial);
        Rng inst_rng(derive_seed(trial_seed, 1));
        const uint64_t run_seed = derive_seed(trial_seed, 2);

        TrialRecord rec;
        rec.cell_id = static_cast<int>(ci);
        rec.n = cell.n;
        rec.k = cell.k;
        rec.epsilon = cell.epsilon;
        rec.mode = cfg.mode;
        rec.family = cell.family;
        rec.dist = cell.dist;
        rec.trial = trial;

        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        if (cell.family == "member") {
          const int w = cfg.mode == Mode::Exact
                            ? cell.k
                            : static_cast<int>(inst_rng.below(cell.k + 1));
          FunctionOracle f = make_parity_oracle(gen_k_parity(cell.n, w, inst_rng));
          rec.label = "member";
          rec.delta = 0.0;
          v = cell.tester->run_with_seed(f, cell.d, run_seed);
        } else {
          FarInstance inst = gen_far_instance(cell.n, cell.k, cell.epsilon, cell.d, cell.family,
                                              cfg.mode, inst_rng);
          rec.label = "far";
          rec.delta = inst.delta;
          v = cell.tester->run_with_seed(inst.oracle, cell.d, run_seed);
        }
        const auto t1 = std::chrono::steady_clock::now();

        rec.accept = v.accept;
        rec.stage = v.rejecting_stage;
        rec.f_queries = v.stats.f_queries;
        rec.d_samples = v.stats.d_samples;
        rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        result.records[job] = std::move(rec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int width = std::max(1, cfg.threads);
  if (width == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (int t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& cell = cells[ci];
    CellSummary s;
    s.cell_id = static_cast<int>(ci);
    s.n = cell.n;
    s.k = cell.k;
    s.epsilon = cell.epsilon;
    s.mode = cfg.mode;
    s.family = cell.family;
    s.dist = cell.dist;
    s.trials = cfg.trials;
    uint64_t sum_q = 0;
    for (int t = 0; t < cfg.trials; ++t) {
      const TrialRecord& rec = result.records[ci * cfg.trials + t];
      s.accepts += rec.accept ? 1 : 0;
      sum_q += rec.f_queries;
      s.max_f_queries = std::max(s.max_f_queries, rec.f_queries);
    }
    s.accept_rate = static_cast<double>(s.accepts) / s.trials;
    const WilsonInterval w = wilson95(s.accepts, s.trials);
    s.wilson_lo = w.lo;
    s.wilson_hi = w.hi;
    s.mean_f_queries = static_cast<double>(sum_q) / s.trials;
    result.summaries.push_back(std::move(s));
  }
  return result;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trials_csv(const ExperimentResult& r, std::ostream& out) {
  out << "cell_id,n,k,epsilon,mode,family,dist,label,delta,trial,verdict,stage,f_queries,"
         "d_samples\n";
  for (const TrialRecord& rec : r.records) {
    out << rec.cell_id << ',' << rec.n << ',' << rec.k << ',' << format_double(rec.epsilon) << ','
        << to_string(rec.mode) << ',' << rec.family << ',' << rec.dist << ',' << rec.label << ','
        << format_double(rec.delta) << ',' << rec.trial << ','
        << (rec.accept ? "accept" : "reject") << ',' << to_string(rec.stage) << ','
        << rec.f_queries << ',' << rec.d_samples << '\n';
  }
}

void write_summary_csv(const ExperimentResult& r, std::ostream& out) {
  out << "cell_id,n,k,epsilon,mode,family,dist,trials,accepts,accept_rate,wilson_lo,wilson_hi,"
         "mean_f_queries,max_f_queries\n";
  for (const CellSummary& s : r.summaries) {
    out << s.cell_id << ',' << s.n << ',' << s.k << ',' << format_double(s.epsilon) << ','
        << to_string(s.mode) << ',' << s.family << ',' << s.dist << ',' << s.trials << ','
        << s.accepts << ',' << format_double(s.accept_rate) << ',' << format_double(s.wilson_lo)
        << ',' << format_double(s.wilson_hi) << ',' << format_double(s.mean_f_queries) << ','
        << s.max_f_queries << '\n';
  }
}

WilsonInterval wilson95(int successes, int trials) {
  if (trials <= 0) return {0.0, 0.0};
  const double z = 1.959963984540054;
  const double nt = trials;
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (p + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
  WilsonInterval w{std::max(0.0, center - half), std::min(1.0, center + half)};
  // At the extremes the interval endpoint is exactly the observed rate.
  if (successes == trials) w.hi = 1.0;
  if (successes == 0) w.lo = 0.0;
  return w;
}

std::vector<ScalingRow> query_scaling_report(const std::vector<int>& ks,
                                             const std::vector<double>& epsilons) {
  std::vector<ScalingRow> rows;
  for (int k : ks)
    for (double eps : epsilons) {
      const TesterConfig cfg =
          TesterConfig::make(std::max(k * k + 1, k + 2), k, eps, Mode::Exact, 0);
      ScalingRow row;
      row.k = k;
      row.epsilon = eps;
      row.blr = 3ull * cfg.blr_rounds;
      row.binning = 2ull * cfg.bin_cells;
      row.learner = 2ull * cfg.q_learn;
      row.consistency = 3ull * cfg.t_consistency;
      row.total = planned_f_queries(cfg);
      row.q_learn = cfg.q_learn;
      rows.push_back(row);
    }
  return rows;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
  return out;
}

}  // namespace

ExperimentConfig load_bench_config(std::istream& in) {
  ExperimentConfig cfg;
  cfg.families = {"member"};
  cfg.dists = {"uniform"};
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto sep = line.find('=');
    if (sep == std::string::npos) sep = line.find_first_of(" \t");
    if (sep == std::string::npos) throw std::runtime_error("bench config: malformed line: " + line);
    const std::string key = trim(line.substr(0, sep));
    const std::string value = trim(line.substr(sep + 1));
    if (key == "n") {
      cfg.ns = {std::stoi(value)};
    } else if (key == "k_list") {
      cfg.ks.clear();
      for (const auto& tok : split_csv(value)) cfg.ks.push_back(std::stoi(tok));
    } else if (key == "epsilon_list") {
      cfg.epsilons.clear();
      for (const auto& tok : split_csv(value)) cfg.epsilons.push_back(std::stod(tok));
    } else if (key == "mode") {
      if (value != "star" && value != "exact") throw std::runtime_error("bench config: bad mode");
      cfg.mode = value == "star" ? Mode::Star : Mode::Exact;
    } else if (key == "family") {
      cfg.families = {value};
    } else if (key == "dist") {
      cfg.dists = {value};
    } else if (key == "trials") {
      cfg.trials = std::stoi(value);
    } else if (key == "seed") {
      cfg.master_seed = std::stoull(value);
    } else if (key == "threads") {
      cfg.threads = std::stoi(value);
    } else {
      throw std::runtime_error("bench config: unknown key: " + key);
    }
  }
  return cfg;
}

ExperimentConfig load_bench_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bench config: " + path);
  return load_bench_config(in);
}

ExperimentResult run_bench_to_files(const ExperimentConfig& cfg, const std::string& out_csv) {
  ExperimentResult result = run_experiment(cfg);
  std::ofstream out(out_csv, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + out_csv);
  write_trials_csv(result, out);

  std::string summary_path = out_csv;
  const std::string ext = ".csv";
  if (summary_path.size() >= ext.size() &&
      summary_path.compare(summary_path.size() - ext.size(), ext.size(), ext) == 0)
    summary_path.resize(summary_path.size() - ext.size());
  summary_path += ".summary.csv";
  std::ofstream sout(summary_path, std::ios::binary);
  if (!sout) throw std::runtime_error("cannot write: " + summary_path);
  write_summary_csv(result, sout);
  return result;
}

}  // namespace klin
