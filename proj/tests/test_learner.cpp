#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

#include "klin/function_spec.hpp"
#include "klin/harness.hpp"
#include "klin/learner.hpp"

using namespace klin;

namespace {

// All supports of weight <= max_w over [n].
void for_each_support(int n, int max_w, const std::function<void(const ParitySupport&)>& fn) {
  std::vector<int> idx;
  const std::function<void(int)> rec = [&](int from) {
    fn(ParitySupport(n, idx));
    if (static_cast<int>(idx.size()) == max_w) return;
    for (int c = from; c <= n; ++c) {
      idx.push_back(c);
      rec(c + 1);
      idx.pop_back();
    }
  };
  rec(1);
}

}  // namespace

TEST_CASE("field tables: primitivity and the m=4 reduction") {
  const FieldTables f4 = build_field(4);
  CHECK(f4.order() == 15);
  CHECK(f4.pow_alpha(15) == 1);
  for (int i = 1; i < 15; ++i) CHECK(f4.pow_alpha(i) != 1);
  CHECK(f4.pow_alpha(4) == 0b0011);  // alpha^4 = alpha + 1 under x^4 + x + 1

  const FieldTables f3 = build_field(3);
  CHECK(f3.order() == 7);

  CHECK_THROWS_AS(build_field(2), std::invalid_argument);
  CHECK_THROWS_AS(build_field(17), std::invalid_argument);
}

TEST_CASE("every pinned polynomial is primitive") {
  for (int m = 3; m <= 16; ++m) CHECK_NOTHROW(build_field(m));
}

TEST_CASE("field multiplication sanity") {
  const FieldTables f = build_field(5);
  Rng rng(2);
  for (int it = 0; it < 200; ++it) {
    const uint32_t a = 1 + static_cast<uint32_t>(rng.below(f.order()));
    const uint32_t b = 1 + static_cast<uint32_t>(rng.below(f.order()));
    CHECK(f.mul(a, b) == f.mul(b, a));
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.mul(a, 1) == a);
    CHECK(f.mul(a, 0) == 0);
  }
}

TEST_CASE("N=7 K=1 syndrome rows form the Hamming check matrix") {
  const QueryMatrix m = build_bch_matrix(7, 1);
  CHECK(m.q() <= 4);
  CHECK(m.m() == 3);
  // Columns of the 3 syndrome rows: distinct and nonzero.
  std::vector<uint32_t> cols;
  for (int c = 1; c <= 7; ++c) {
    uint32_t v = 0;
    for (int r = 0; r < 3; ++r)
      if (m.rows()[r].get(c)) v |= 1u << r;
    CHECK(v != 0);
    cols.push_back(v);
  }
  std::sort(cols.begin(), cols.end());
  CHECK(std::adjacent_find(cols.begin(), cols.end()) == cols.end());
}

TEST_CASE("N=15 K=2: q <= 9 and every <=4-column subset sums nonzero") {
  const QueryMatrix m = build_bch_matrix(15, 2);
  CHECK(m.q() <= 9);
  std::vector<int> idx;
  const std::function<void(int, BitVector)> rec = [&](int from, BitVector acc) {
    if (!idx.empty()) CHECK(acc.any());
    if (idx.size() == 4) return;
    for (int c = from; c <= 15; ++c) {
      idx.push_back(c);
      rec(c + 1, acc ^ m.column(c));
      idx.pop_back();
    }
  };
  rec(1, BitVector(m.q()));
}

TEST_CASE("query bound q <= K ceil(log2(N+1)) + 1") {
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{7, 1}, {15, 2}, {31, 3}, {100, 5}, {2047, 16}}) {
    const QueryMatrix m = build_bch_matrix(n, k);
    int lg = 0;
    while ((1LL << lg) < n + 1LL) ++lg;
    CHECK(m.q() <= k * lg + 1);
  }
}

TEST_CASE("matrix construction depends only on (N, K)") {
  const QueryMatrix a = build_bch_matrix(63, 4);
  const QueryMatrix b = build_bch_matrix(63, 4);
  REQUIRE(a.q() == b.q());
  for (int r = 0; r < a.q(); ++r) CHECK(a.rows()[r] == b.rows()[r]);
}

TEST_CASE("syndrome basics: empty, unit, linearity") {
  const QueryMatrix m = build_bch_matrix(7, 1);
  CHECK_FALSE(syndrome(m, ParitySupport::empty(7)).any());
  CHECK(syndrome(m, ParitySupport(7, {3})) == m.column(3));
  Rng rng(4);
  for (int it = 0; it < 50; ++it) {
    const int a = 1 + static_cast<int>(rng.below(7));
    int b = 1 + static_cast<int>(rng.below(7));
    if (b == a) b = (b % 7) + 1;
    const BitVector sa = syndrome(m, ParitySupport(7, {a}));
    const BitVector sb = syndrome(m, ParitySupport(7, {b}));
    CHECK(syndrome(m, ParitySupport(7, {a, b})) == (sa ^ sb));
  }
}

TEST_CASE("syndrome rows and columns tell the same story") {
  const QueryMatrix m = build_bch_matrix(31, 3);
  Rng rng(8);
  for (int it = 0; it < 20; ++it) {
    const ParitySupport x = gen_k_parity(31, static_cast<int>(rng.below(4)), rng);
    const BitVector s = syndrome(m, x);
    for (int r = 0; r < m.q(); ++r) CHECK(s.get(r + 1) == parity_and(x.mask(), m.rows()[r]));
  }
}

TEST_CASE("decode o syndrome is the identity, exhaustively") {
  for (const auto& [n, k, cases] :
       std::vector<std::tuple<int, int, int>>{{7, 1, 8}, {15, 2, 121}, {31, 3, 4992}}) {
    const QueryMatrix m = build_bch_matrix(n, k);
    int count = 0;
    for_each_support(n, k, [&](const ParitySupport& x) {
      const DecodeResult r = decode(m, syndrome(m, x), k);
      REQUIRE_FALSE(r.not_sparse());
      CHECK(*r.support == x);
      ++count;
    });
    CHECK(count == cases);
  }
}

TEST_CASE("decode equals brute_force_decode on all small syndromes") {
  const QueryMatrix m = build_bch_matrix(15, 2);
  for_each_support(15, 2, [&](const ParitySupport& x) {
    const BitVector s = syndrome(m, x);
    const DecodeResult fast = decode(m, s, 2);
    const DecodeResult slow = brute_force_decode(m, s, 2);
    REQUIRE_FALSE(fast.not_sparse());
    REQUIRE_FALSE(slow.not_sparse());
    CHECK(*fast.support == *slow.support);
  });
}

TEST_CASE("weight-3 syndromes at (15,2) are flagged not-sparse") {
  const QueryMatrix m = build_bch_matrix(15, 2);
  int cases = 0;
  for (int a = 1; a <= 15; ++a)
    for (int b = a + 1; b <= 15; ++b)
      for (int c = b + 1; c <= 15; ++c) {
        const BitVector s = syndrome(m, ParitySupport(15, {a, b, c}));
        CHECK(decode(m, s, 2).not_sparse());
        CHECK(brute_force_decode(m, s, 2).not_sparse());
        ++cases;
      }
  CHECK(cases == 455);
}

TEST_CASE("answers outside the syndrome image decode to not-sparse") {
  const QueryMatrix m = build_bch_matrix(15, 2);
  Rng rng(12);
  int tested = 0;
  while (tested < 50) {
    BitVector answers(m.q());
    answers.randomize(rng);
    const DecodeResult slow = brute_force_decode(m, answers, 2);
    const DecodeResult fast = decode(m, answers, 2);
    if (slow.not_sparse()) {
      CHECK(fast.not_sparse());
      ++tested;
    } else {
      CHECK(*fast.support == *slow.support);
    }
  }
}

TEST_CASE("random supports round-trip at (1023, 8)") {
  const QueryMatrix m = build_bch_matrix(1023, 8);
  Rng rng(19);
  for (int it = 0; it < 300; ++it) {
    const ParitySupport x = gen_k_parity(1023, static_cast<int>(rng.below(9)), rng);
    const DecodeResult r = decode(m, syndrome(m, x), 8);
    REQUIRE_FALSE(r.not_sparse());
    CHECK(*r.support == x);
  }
}

TEST_CASE("learn_sparse_parity recovers oracles exactly") {
  FunctionOracle f = make_parity_oracle(ParitySupport(15, {2, 9}));
  const LearnResult r = learn_sparse_parity(f, 2);
  REQUIRE_FALSE(r.result.not_sparse());
  CHECK(*r.result.support == ParitySupport(15, {2, 9}));
  CHECK(r.queries == 9);
  CHECK(f.query_count() == 9);

  FunctionOracle zero = make_const_oracle(15, false);
  const LearnResult rz = learn_sparse_parity(zero, 2);
  REQUIRE_FALSE(rz.result.not_sparse());
  CHECK(rz.result.support->weight() == 0);
}

TEST_CASE("learning a non-parity is caught by the cross-check or downstream") {
  // Constant 1 answers every query with 1; no 2-sparse parity does that here.
  FunctionOracle f = make_const_oracle(15, true);
  const LearnResult r = learn_sparse_parity(f, 2);
  CHECK(r.result.not_sparse());
}

TEST_CASE("dump/load round trip") {
  const QueryMatrix m = build_bch_matrix(15, 2);
  std::stringstream ss;
  dump_matrix(m, ss);
  const std::string header = ss.str().substr(0, ss.str().find('\n'));
  CHECK(header == "15 2 9 4 poly=0x13");
  const QueryMatrix loaded = load_matrix(ss);
  CHECK(loaded.n_cols() == 15);
  CHECK(loaded.q() == 9);
  for (int r = 0; r < 9; ++r) CHECK(loaded.rows()[r] == m.rows()[r]);
}

TEST_CASE("decode validation") {
  const QueryMatrix m = build_bch_matrix(15, 2);
  CHECK_THROWS_AS(decode(m, BitVector(8), 2), std::invalid_argument);   // wrong length
  CHECK_THROWS_AS(decode(m, BitVector(9), 3), std::invalid_argument);   // K beyond design
  CHECK_THROWS_AS(build_bch_matrix(15, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_bch_matrix(0, 1), std::invalid_argument);
}
