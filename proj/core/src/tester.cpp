#include "klin/tester.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace klin {

namespace {

int ceil_log2(long long v) {
  int m = 0;
  while ((1LL << m) < v) ++m;
  return m;
}

// Per-stage rng streams, derived from the run seed so that no stage's draws
// can depend on another stage's (or on any oracle answer).
enum StageStream : uint64_t { kBlrStream = 1, kBinStream = 2, kLearnStream = 3, kConsStream = 4 };

Rng stage_rng(uint64_t seed, StageStream s) { return Rng(derive_seed(seed, s)); }

}  // namespace

const char* to_string(Mode m) { return m == Mode::Star ? "star" : "exact"; }

const char* to_string(Stage s) {
  switch (s) {
    case Stage::None: return "none";
    case Stage::Blr: return "blr";
    case Stage::Binning: return "binning";
    case Stage::Learner: return "learner";
    case Stage::Consistency: return "consistency";
  }
  return "?";
}

TesterConfig TesterConfig::make(int n, int k, double epsilon, Mode mode, uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("TesterConfig: epsilon must lie in (0, 1]");
  if (k < 1 || k >= n) throw std::invalid_argument("TesterConfig: need 1 <= k < n");
  if (static_cast<long long>(k) * k > n)
    std::cerr << "klin: warning: k^2 = " << static_cast<long long>(k) * k << " exceeds n = " << n
              << "; the analysis assumes k < sqrt(n)\n";

  TesterConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.epsilon = epsilon;
  cfg.mode = mode;
  cfg.seed = seed;
  cfg.bin_cells = 16 * k;
  cfg.learner_k = 8 * k;
  const long long r0 = 256LL * k * k;
  cfg.learner_m = ceil_log2(r0 + 1);
  cfg.learner_cells = static_cast<int>((1LL << cfg.learner_m) - 1);
  cfg.q_learn = cfg.learner_k * cfg.learner_m + 1;
  const long long denom = 16LL * k + cfg.q_learn;
  cfg.eps_prime = 1.0 / (12.0 * static_cast<double>(denom));
  cfg.blr_rounds = static_cast<int>(24 * denom);
  cfg.t_consistency = static_cast<int>(std::ceil(4.0 / epsilon));

  if (!(cfg.eps_prime < 0.125)) throw std::logic_error("TesterConfig: eps' >= 1/8");
  if (static_cast<double>(denom) * 2.0 * cfg.eps_prime > 1.0 / 6.0 + 1e-12)
    throw std::logic_error("TesterConfig: union-bound inequality violated");
  return cfg;
}

uint64_t planned_f_queries(const TesterConfig& cfg) {
  return 3ull * cfg.blr_rounds + 2ull * cfg.bin_cells + 2ull * cfg.q_learn +
         3ull * cfg.t_consistency;
}

Partition random_partition(int n, int m_cells, Rng& rng) {
  if (m_cells < 1) throw std::invalid_argument("random_partition: need at least one cell");
  Partition p;
  p.n = n;
  p.m_cells = m_cells;
  p.cells.resize(n);
  for (int i = 0; i < n; ++i) p.cells[i] = static_cast<int32_t>(rng.below(m_cells)) + 1;
  return p;
}

BitVector expand_projection(const Partition& p, const BitVector& y) {
  if (y.n() != p.m_cells) throw std::invalid_argument("expand_projection: y must have one bit per cell");
  BitVector x(p.n);
  for (int j = 1; j <= p.n; ++j)
    if (y.get(p.cell_of(j))) x.set(j, true);
  return x;
}

QueryPlan::QueryPlan(int n, size_t expected_points)
    : n_(n), wpp_((static_cast<size_t>(n) + 63) / 64) {
  words_.reserve(expected_points * wpp_);
}

uint64_t* QueryPlan::append() {
  words_.resize(words_.size() + wpp_, 0);
  ++count_;
  return words_.data() + (count_ - 1) * wpp_;
}

void QueryPlan::append_random(Rng& rng) {
  uint64_t* w = append();
  rng.fill_words({w, wpp_}, n_);
}

void QueryPlan::append_view(BitView v) {
  uint64_t* w = append();
  for (size_t i = 0; i < wpp_; ++i) w[i] = v.w[i];
}

void QueryPlan::append_xor(BitView a, BitView b) {
  uint64_t* w = append();
  for (size_t i = 0; i < wpp_; ++i) w[i] = a.w[i] ^ b.w[i];
}

namespace {

void build_stage1(const TesterConfig& cfg, Rng& rng, QueryPlan& plan) {
  BitVector x(cfg.n), y(cfg.n);
  for (int round = 0; round < cfg.blr_rounds; ++round) {
    x.randomize(rng);
    y.randomize(rng);
    plan.append_view(x);
    plan.append_view(y);
    plan.append_xor(x, y);
  }
}

// Binning: one partition into 16k cells, one z; the i-th g-query point is z
// restricted to cell i, asked through the self-corrector with a fresh mask.
void build_stage21(const TesterConfig& cfg, Rng& rng, QueryPlan& plan) {
  const Partition part = random_partition(cfg.n, cfg.bin_cells, rng);
  BitVector z(cfg.n);
  z.randomize(rng);
  std::vector<BitVector> cell_point(cfg.bin_cells, BitVector(cfg.n));
  for (int j = 1; j <= cfg.n; ++j)
    if (z.get(j)) cell_point[part.cell_of(j) - 1].set(j, true);
  BitVector corr(cfg.n);
  for (int i = 0; i < cfg.bin_cells; ++i) {
    corr.randomize(rng);
    plan.append_xor(cell_point[i], corr);
    plan.append_view(corr);
  }
}

void build_stage22(const TesterConfig& cfg, const QueryMatrix& matrix, Rng& rng, QueryPlan& plan) {
  const Partition part = random_partition(cfg.n, cfg.learner_cells, rng);
  BitVector corr(cfg.n);
  for (const BitVector& row : matrix.rows()) {
    const BitVector base = expand_projection(part, row);
    corr.randomize(rng);
    plan.append_xor(base, corr);
    plan.append_view(corr);
  }
}

void build_stage3(const TesterConfig& cfg, const DistributionSpec& d, Rng& rng, QueryPlan& plan) {
  BitVector corr(cfg.n);
  for (int i = 0; i < cfg.t_consistency; ++i) {
    BitVector x = d.sample(rng);
    corr.randomize(rng);
    plan.append_view(x);
    plan.append_xor(x, corr);
    plan.append_view(corr);
    plan.d_samples.push_back(std::move(x));
  }
}

std::vector<uint8_t> collect_answers(FunctionOracle& f, const QueryPlan& plan) {
  f.begin_plan(plan.size());
  for (size_t i = 0; i < plan.size(); ++i) f.plan_query(plan.point(i));
  f.seal_plan();
  std::vector<uint8_t> ans(plan.size());
  for (size_t i = 0; i < plan.size(); ++i) ans[i] = f.answer(i);
  f.end_plan();
  return ans;
}

StageVerdict eval_stage1(const TesterConfig& cfg, const std::vector<uint8_t>& ans, size_t b) {
  StageVerdict v;
  v.blr_failures = 0;
  for (int r = 0; r < cfg.blr_rounds; ++r)
    if ((ans[b + 3 * r] ^ ans[b + 3 * r + 1]) != ans[b + 3 * r + 2]) ++v.blr_failures;
  v.reject = v.blr_failures > 0;
  return v;
}

StageVerdict eval_stage21(const TesterConfig& cfg, const std::vector<uint8_t>& ans, size_t b) {
  StageVerdict v;
  v.bin_count = 0;
  for (int i = 0; i < cfg.bin_cells; ++i)
    if (ans[b + 2 * i] ^ ans[b + 2 * i + 1]) ++v.bin_count;
  v.reject = v.bin_count > cfg.k;
  return v;
}

StageVerdict eval_stage22(const TesterConfig& cfg, const QueryMatrix& matrix,
                          const std::vector<uint8_t>& ans, size_t b) {
  StageVerdict v;
  BitVector learned(matrix.q());
  for (int r = 0; r < matrix.q(); ++r)
    if (ans[b + 2 * r] ^ ans[b + 2 * r + 1]) learned.set(r + 1, true);
  const DecodeResult res = decode(matrix, learned, cfg.learner_k);
  v.learner_not_sparse = res.not_sparse();
  if (res.not_sparse()) {
    v.reject = true;
  } else {
    v.learned_weight = res.support->weight();
    v.reject = cfg.mode == Mode::Star ? v.learned_weight > cfg.k : v.learned_weight != cfg.k;
  }
  return v;
}

StageVerdict eval_stage3(const TesterConfig& cfg, const std::vector<uint8_t>& ans, size_t b) {
  StageVerdict v;
  for (int i = 0; i < cfg.t_consistency; ++i) {
    const uint8_t direct = ans[b + 3 * i];
    const uint8_t corrected = ans[b + 3 * i + 1] ^ ans[b + 3 * i + 2];
    if (direct != corrected) {
      v.reject = true;
      v.consistency_mismatch_at = i + 1;
      return v;
    }
  }
  return v;
}

StageVerdict run_single_stage(FunctionOracle& f, const TesterConfig& cfg, QueryPlan& plan,
                              StageVerdict (*eval)(const TesterConfig&,
                                                   const std::vector<uint8_t>&, size_t)) {
  const auto ans = collect_answers(f, plan);
  return eval(cfg, ans, 0);
}

}  // namespace

KLinearTester::KLinearTester(TesterConfig cfg)
    : KLinearTester(cfg, std::make_shared<const QueryMatrix>(
                             build_bch_matrix(cfg.learner_cells, cfg.learner_k))) {}

KLinearTester::KLinearTester(TesterConfig cfg, std::shared_ptr<const QueryMatrix> matrix)
    : cfg_(cfg), matrix_(std::move(matrix)) {
  if (matrix_->n_cols() != cfg_.learner_cells || matrix_->k_sparse() != cfg_.learner_k)
    throw std::invalid_argument("KLinearTester: matrix does not match the config");
  if (matrix_->q() != cfg_.q_learn) throw std::logic_error("KLinearTester: q_learn mismatch");
  if (cfg_.q_learn > cfg_.learner_k * ceil_log2(cfg_.learner_cells + 1LL) + 1)
    throw std::logic_error("KLinearTester: learner query bound violated");
}

QueryPlan KLinearTester::plan(const DistributionSpec& d, uint64_t seed) const {
  if (d.n() != cfg_.n) throw std::invalid_argument("KLinearTester: distribution dimension mismatch");
  QueryPlan plan(cfg_.n, planned_f_queries(cfg_));

  Rng r1 = stage_rng(seed, kBlrStream);
  plan.stage_begin[0] = plan.size();
  build_stage1(cfg_, r1, plan);
  plan.stage_end[0] = plan.size();

  Rng r21 = stage_rng(seed, kBinStream);
  plan.stage_begin[1] = plan.size();
  build_stage21(cfg_, r21, plan);
  plan.stage_end[1] = plan.size();

  Rng r22 = stage_rng(seed, kLearnStream);
  plan.stage_begin[2] = plan.size();
  build_stage22(cfg_, *matrix_, r22, plan);
  plan.stage_end[2] = plan.size();

  Rng r3 = stage_rng(seed, kConsStream);
  plan.stage_begin[3] = plan.size();
  build_stage3(cfg_, d, r3, plan);
  plan.stage_end[3] = plan.size();

  return plan;
}

Verdict KLinearTester::run_with_seed(FunctionOracle& f, const DistributionSpec& d,
                                     uint64_t seed) const {
  if (f.n() != cfg_.n) throw std::invalid_argument("KLinearTester: oracle dimension mismatch");
  const QueryPlan qp = plan(d, seed);

  const uint64_t before = f.query_count();
  const auto ans = collect_answers(f, qp);

  Verdict v;
  v.stage1 = eval_stage1(cfg_, ans, qp.stage_begin[0]);
  v.stage21 = eval_stage21(cfg_, ans, qp.stage_begin[1]);
  // Rejection short-circuits evaluation only; every planned point was
  // already answered, so the accounting identity holds on every run.
  if (v.stage1.reject) {
    v.accept = false;
    v.rejecting_stage = Stage::Blr;
  } else if (v.stage21.reject) {
    v.accept = false;
    v.rejecting_stage = Stage::Binning;
  } else {
    v.stage22 = eval_stage22(cfg_, *matrix_, ans, qp.stage_begin[2]);
    if (v.stage22.reject) {
      v.accept = false;
      v.rejecting_stage = Stage::Learner;
    } else {
      v.stage3 = eval_stage3(cfg_, ans, qp.stage_begin[3]);
      if (v.stage3.reject) {
        v.accept = false;
        v.rejecting_stage = Stage::Consistency;
      }
    }
  }

  v.stats.per_stage["blr"] = qp.stage_end[0] - qp.stage_begin[0];
  v.stats.per_stage["binning"] = qp.stage_end[1] - qp.stage_begin[1];
  v.stats.per_stage["learner"] = qp.stage_end[2] - qp.stage_begin[2];
  v.stats.per_stage["consistency"] = qp.stage_end[3] - qp.stage_begin[3];
  v.stats.f_queries = f.query_count() - before;
  v.stats.d_samples = qp.d_samples.size();
  if (v.stats.f_queries != planned_f_queries(cfg_) ||
      v.stats.f_queries != v.stats.per_stage_total())
    throw std::logic_error("KLinearTester: query accounting identity violated");
  return v;
}

Verdict KLinearTester::run(FunctionOracle& f, const DistributionSpec& d) const {
  return run_with_seed(f, d, cfg_.seed);
}

StageVerdict stage1_blr(FunctionOracle& f, const TesterConfig& cfg, Rng& rng) {
  QueryPlan plan(cfg.n, 3 * static_cast<size_t>(cfg.blr_rounds));
  build_stage1(cfg, rng, plan);
  return run_single_stage(f, cfg, plan, eval_stage1);
}

StageVerdict stage21_bin_count(FunctionOracle& f, const TesterConfig& cfg, Rng& rng) {
  QueryPlan plan(cfg.n, 2 * static_cast<size_t>(cfg.bin_cells));
  build_stage21(cfg, rng, plan);
  return run_single_stage(f, cfg, plan, eval_stage21);
}

StageVerdict stage22_learn(FunctionOracle& f, const TesterConfig& cfg, const QueryMatrix& matrix,
                           Rng& rng) {
  QueryPlan plan(cfg.n, 2 * static_cast<size_t>(cfg.q_learn));
  build_stage22(cfg, matrix, rng, plan);
  const auto ans = collect_answers(f, plan);
  return eval_stage22(cfg, matrix, ans, 0);
}

StageVerdict stage3_consistency(FunctionOracle& f, const DistributionSpec& d,
                                const TesterConfig& cfg, Rng& rng) {
  QueryPlan plan(cfg.n, 3 * static_cast<size_t>(cfg.t_consistency));
  build_stage3(cfg, d, rng, plan);
  const auto ans = collect_answers(f, plan);
  return eval_stage3(cfg, ans, 0);
}

Verdict test_k_linear_star(FunctionOracle& f, const DistributionSpec& d, const TesterConfig& cfg) {
  if (cfg.mode != Mode::Star) throw std::invalid_argument("test_k_linear_star: config mode must be star");
  return KLinearTester(cfg).run(f, d);
}

Verdict test_k_linear(FunctionOracle& f, const DistributionSpec& d, const TesterConfig& cfg) {
  if (cfg.mode != Mode::Exact) throw std::invalid_argument("test_k_linear: config mode must be exact");
  return KLinearTester(cfg).run(f, d);
}

}  // namespace klin
