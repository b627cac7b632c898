#ifndef KLIN_ORACLE_HPP
#define KLIN_ORACLE_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "klin/bitvector.hpp"

namespace klin {

/// Counting black-box access to a fixed Boolean function f: {0,1}^n -> {0,1}.
///
/// The evaluator must be pure: repeated queries at the same point return the
/// same bit. Besides free-mode eval(), the oracle supports a plan-then-answer
/// mode in which the complete list of query points must be registered and
/// sealed before any answer is released. Non-adaptive algorithms run against
/// that mode, which turns non-adaptivity into a checkable runtime contract.
class FunctionOracle {
public:
  using Evaluator = std::function<bool(BitView)>;

  FunctionOracle(int n, Evaluator f) : n_(n), f_(std::move(f)) {
    if (n_ <= 0) throw std::invalid_argument("FunctionOracle: dimension must be positive");
    if (!f_) throw std::invalid_argument("FunctionOracle: empty evaluator");
  }

  int n() const { return n_; }

  // The counter is safe to bump from concurrent trials sharing one oracle.
  uint64_t query_count() const { return std::atomic_ref<const uint64_t>(count_).load(std::memory_order_relaxed); }

  bool eval(BitView x) {
    if (mode_ != Mode::Free)
      throw std::logic_error("FunctionOracle: free-mode query during plan-then-answer");
    check_point(x);
    bump();
    return f_(x);
  }

  void begin_plan(size_t expected_points = 0) {
    if (mode_ != Mode::Free) throw std::logic_error("FunctionOracle: plan already open");
    mode_ = Mode::Planning;
    wpp_ = (static_cast<size_t>(n_) + 63) / 64;
    plan_words_.clear();
    plan_words_.reserve(expected_points * wpp_);
    plan_points_ = 0;
  }

  void plan_query(BitView x) {
    if (mode_ != Mode::Planning) throw std::logic_error("FunctionOracle: no open plan");
    check_point(x);
    plan_words_.insert(plan_words_.end(), x.w, x.w + wpp_);
    ++plan_points_;
  }

  void seal_plan() {
    if (mode_ != Mode::Planning) throw std::logic_error("FunctionOracle: no open plan");
    mode_ = Mode::Sealed;
  }

  // Releases the answer to planned point i. Calling this before seal_plan()
  // is the contract violation the mode exists to detect.
  bool answer(size_t i) {
    if (mode_ != Mode::Sealed)
      throw std::logic_error("FunctionOracle: answer released before the plan was sealed");
    if (i >= plan_points_) throw std::invalid_argument("FunctionOracle: answer index out of range");
    bump();
    return f_(BitView(n_, plan_words_.data() + i * wpp_));
  }

  size_t plan_size() const { return plan_points_; }

  BitView planned(size_t i) const {
    if (i >= plan_points_) throw std::invalid_argument("FunctionOracle: plan index out of range");
    return BitView(n_, plan_words_.data() + i * wpp_);
  }

  void end_plan() {
    plan_words_.clear();
    plan_points_ = 0;
    mode_ = Mode::Free;
  }

private:
  enum class Mode { Free, Planning, Sealed };

  void check_point(BitView x) const {
    if (x.n != n_) throw std::invalid_argument("FunctionOracle: query dimension mismatch");
  }
  void bump() { std::atomic_ref<uint64_t>(count_).fetch_add(1, std::memory_order_relaxed); }

  int n_;
  Evaluator f_;
  alignas(8) uint64_t count_ = 0;
  Mode mode_ = Mode::Free;
  size_t wpp_ = 0;
  std::vector<uint64_t> plan_words_;
  size_t plan_points_ = 0;
};

/// Query accounting for one tester run.
struct QueryStats {
  uint64_t f_queries = 0;
  uint64_t d_samples = 0;
  std::map<std::string, uint64_t> per_stage;

  uint64_t per_stage_total() const {
    uint64_t t = 0;
    for (const auto& [_, c] : per_stage) t += c;
    return t;
  }
};

}  // namespace klin

#endif
