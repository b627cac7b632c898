#ifndef KLIN_TESTER_HPP
#define KLIN_TESTER_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "klin/blr.hpp"
#include "klin/distribution.hpp"
#include "klin/learner.hpp"
#include "klin/oracle.hpp"

namespace klin {

enum class Mode { Star, Exact };
enum class Stage { None, Blr, Binning, Learner, Consistency };

const char* to_string(Mode m);
const char* to_string(Stage s);

/// Parameters of one tester run, with every derived constant pinned at
/// construction so the query plan is a pure function of (config, seed).
struct TesterConfig {
  int n = 0;
  int k = 0;
  double epsilon = 0.0;
  Mode mode = Mode::Star;
  uint64_t seed = 0;

  // Derived:
  int bin_cells = 0;       // 16k
  int learner_cells = 0;   // r = 2^m - 1, smallest such >= 256 k^2
  int learner_m = 0;
  int learner_k = 0;       // 8k
  int q_learn = 0;         // learner query count = 8k * m + 1
  double eps_prime = 0.0;  // 1 / (12 (16k + q_learn))
  int blr_rounds = 0;      // t1 = 24 (16k + q_learn); overridable for sensitivity runs
  int t_consistency = 0;   // ceil(4 / epsilon)

  static TesterConfig make(int n, int k, double epsilon, Mode mode, uint64_t seed);
};

// Accounting identity: 3*t1 + 2*16k + 2*q_learn + 3*ceil(4/eps).
uint64_t planned_f_queries(const TesterConfig& cfg);

/// A uniformly random assignment of the n coordinates to cells 1..m_cells.
struct Partition {
  int n = 0;
  int m_cells = 0;
  std::vector<int32_t> cells;  // cells[i-1] = cell of coordinate i

  int cell_of(int i) const { return cells[i - 1]; }
};

Partition random_partition(int n, int m_cells, Rng& rng);

/// Lifts y over the cells to the point x over [n] with x_j = y_{cell(j)};
/// x is constant on every cell.
BitVector expand_projection(const Partition& p, const BitVector& y);

struct StageVerdict {
  bool reject = false;
  // Stage detail, where meaningful:
  int blr_failures = -1;
  int bin_count = -1;
  bool learner_not_sparse = false;
  int learned_weight = -1;
  int consistency_mismatch_at = -1;  // 1-based sample index, -1 = none
};

struct Verdict {
  bool accept = true;
  Stage rejecting_stage = Stage::None;
  QueryStats stats;
  StageVerdict stage1, stage21, stage22, stage3;
};

/// The query plan of one run: every f-query point, flat-packed, in stage
/// order. Built without touching f; answers are consumed in plan order.
class QueryPlan {
public:
  QueryPlan(int n, size_t expected_points);

  int n() const { return n_; }
  size_t size() const { return count_; }
  BitView point(size_t i) const { return BitView(n_, words_.data() + i * wpp_); }

  // Appends a zeroed point and returns its words.
  uint64_t* append();
  void append_random(Rng& rng);
  void append_view(BitView v);
  void append_xor(BitView a, BitView b);

  // Stage offsets [begin, end) into the point list.
  size_t stage_begin[4] = {0, 0, 0, 0};
  size_t stage_end[4] = {0, 0, 0, 0};
  // d-samples drawn for the consistency stage.
  std::vector<BitVector> d_samples;

  size_t word_count() const { return count_ * wpp_; }
  const std::vector<uint64_t>& raw_words() const { return words_; }

private:
  int n_;
  size_t wpp_;
  size_t count_ = 0;
  std::vector<uint64_t> words_;
};

/// The full pipeline, both modes. Holds the learner matrix so repeated runs
/// (e.g. Monte Carlo trials) share one immutable construction.
class KLinearTester {
public:
  explicit KLinearTester(TesterConfig cfg);
  KLinearTester(TesterConfig cfg, std::shared_ptr<const QueryMatrix> matrix);

  const TesterConfig& config() const { return cfg_; }
  const QueryMatrix& learner_matrix() const { return *matrix_; }
  std::shared_ptr<const QueryMatrix> shared_matrix() const { return matrix_; }

  Verdict run(FunctionOracle& f, const DistributionSpec& d) const;
  Verdict run_with_seed(FunctionOracle& f, const DistributionSpec& d, uint64_t seed) const;

  /// The complete plan for a given seed; a function of (config, seed, d) only.
  QueryPlan plan(const DistributionSpec& d, uint64_t seed) const;

private:
  TesterConfig cfg_;
  std::shared_ptr<const QueryMatrix> matrix_;
};

// Standalone stage runs (free-mode oracle access), for piecewise validation.
StageVerdict stage1_blr(FunctionOracle& f, const TesterConfig& cfg, Rng& rng);
StageVerdict stage21_bin_count(FunctionOracle& f, const TesterConfig& cfg, Rng& rng);
StageVerdict stage22_learn(FunctionOracle& f, const TesterConfig& cfg, const QueryMatrix& matrix,
                           Rng& rng);
StageVerdict stage3_consistency(FunctionOracle& f, const DistributionSpec& d,
                                const TesterConfig& cfg, Rng& rng);

/// One-sided tester for membership in k-Linear* (parities of weight <= k).
Verdict test_k_linear_star(FunctionOracle& f, const DistributionSpec& d, const TesterConfig& cfg);
/// Two-sided tester for membership in k-Linear (parities of weight exactly k).
Verdict test_k_linear(FunctionOracle& f, const DistributionSpec& d, const TesterConfig& cfg);

}  // namespace klin

#endif
