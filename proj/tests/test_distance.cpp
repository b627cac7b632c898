#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "klin/distance.hpp"
#include "klin/function_spec.hpp"
#include "klin/harness.hpp"

using namespace klin;

TEST_CASE("identical functions are at distance zero") {
  FunctionOracle f = make_parity_oracle(ParitySupport(6, {2, 5}));
  FunctionOracle g = make_parity_oracle(ParitySupport(6, {2, 5}));
  CHECK(exact_distance(f, g, DistributionSpec::uniform(6)) == 0.0);
}

TEST_CASE("chi_1 vs chi_2 at n=2 disagree on exactly {01, 10}") {
  FunctionOracle f = make_parity_oracle(ParitySupport(2, {1}));
  FunctionOracle g = make_parity_oracle(ParitySupport(2, {2}));
  CHECK(exact_distance(f, g, DistributionSpec::uniform(2)) == 0.5);
}

TEST_CASE("distinct parities are 1/2-far under uniform") {
  Rng rng(17);
  const int n = 10;
  for (int it = 0; it < 30; ++it) {
    const ParitySupport a = gen_k_parity(n, 1 + static_cast<int>(rng.below(n)), rng);
    ParitySupport b = gen_k_parity(n, 1 + static_cast<int>(rng.below(n)), rng);
    if (a == b) continue;
    FunctionOracle f = make_parity_oracle(a);
    FunctionOracle g = make_parity_oracle(b);
    CHECK(exact_distance(f, g, DistributionSpec::uniform(n)) == 0.5);
  }
}

TEST_CASE("distance is symmetric, bounded, and zero iff equal on support") {
  Rng rng(31);
  const int n = 6;
  for (int it = 0; it < 25; ++it) {
    std::vector<uint64_t> ta{rng.next_u64()}, tb{rng.next_u64()};
    FunctionOracle f = make_table_oracle(n, ta);
    FunctionOracle g = make_table_oracle(n, tb);
    FunctionOracle f2 = make_table_oracle(n, ta);
    FunctionOracle g2 = make_table_oracle(n, tb);
    const auto d = DistributionSpec::uniform(n);
    const double ab = exact_distance(f, g, d);
    const double ba = exact_distance(g2, f2, d);
    CHECK(ab == ba);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK((ab == 0.0) == (ta[0] == tb[0]));
  }
}

TEST_CASE("table distributions ignore zero-mass points") {
  // f and g differ only where the distribution has no mass.
  FunctionOracle f = make_parity_oracle(ParitySupport(4, {1}));
  FunctionOracle g = make_parity_oracle(ParitySupport(4, {2}));
  const auto d = DistributionSpec::mixture(
      4, {{BitVector::from_string("1100"), 0.5}, {BitVector::from_string("0000"), 0.5}});
  CHECK(exact_distance(f, g, d) == 0.0);
}

TEST_CASE("product distances agree with an explicit table of the same masses") {
  const int n = 8;
  const auto prod = DistributionSpec::product(n, 0.3);
  std::vector<std::pair<BitVector, double>> pts;
  for (uint64_t idx = 0; idx < (1u << n); ++idx) {
    BitVector pt = BitVector::from_low_bits(n, idx);
    pts.emplace_back(pt, prod.mass(pt));
  }
  const auto table = DistributionSpec::explicit_table(n, std::move(pts));
  Rng rng(3);
  for (int it = 0; it < 10; ++it) {
    std::vector<uint64_t> tw(4);
    for (auto& w : tw) w = rng.next_u64();
    FunctionOracle f1 = make_table_oracle(n, tw);
    FunctionOracle f2 = make_table_oracle(n, tw);
    FunctionOracle g = make_parity_oracle(ParitySupport(n, {3}));
    FunctionOracle g2 = make_parity_oracle(ParitySupport(n, {3}));
    CHECK(exact_distance(f1, g, prod) ==
          doctest::Approx(exact_distance(f2, g2, table)).epsilon(1e-12));
  }
}

TEST_CASE("dimension guards") {
  FunctionOracle f = make_const_oracle(25, false);
  FunctionOracle g = make_const_oracle(25, false);
  CHECK_THROWS_AS(exact_distance(f, g, DistributionSpec::uniform(25)), std::invalid_argument);
  FunctionOracle h = make_const_oracle(21, false);
  CHECK_THROWS_AS(distance_to_class(h, DistributionSpec::uniform(21), 1, ClassMode::ExactK),
                  std::invalid_argument);
}

TEST_CASE("distance_to_class: members, wrong weights, constants") {
  const auto u8 = DistributionSpec::uniform(8);

  FunctionOracle member = make_parity_oracle(ParitySupport(8, {1, 2}));
  const auto [d0, s0] = distance_to_class(member, u8, 2, ClassMode::ExactK);
  CHECK(d0 == 0.0);
  CHECK(s0 == ParitySupport(8, {1, 2}));

  FunctionOracle wide = make_parity_oracle(ParitySupport(8, {1, 2, 3}));
  const auto [d1, s1] = distance_to_class(wide, u8, 2, ClassMode::ExactK);
  CHECK(d1 == 0.5);
  CHECK(s1.weight() == 2);

  FunctionOracle one = make_const_oracle(4, true);
  const auto [d2, s2] = distance_to_class(one, DistributionSpec::uniform(4), 1, ClassMode::AtMostK);
  CHECK(d2 == 0.5);
  CHECK(s2.weight() == 1);  // the empty support sits at distance 1
}

TEST_CASE("at-most-k distance never exceeds exact-k distance") {
  Rng rng(47);
  const int n = 8;
  const auto u = DistributionSpec::uniform(n);
  for (int it = 0; it < 20; ++it) {
    std::vector<uint64_t> tw(4);
    for (auto& w : tw) w = rng.next_u64();
    const int k = 1 + static_cast<int>(rng.below(4));
    FunctionOracle f1 = make_table_oracle(n, tw);
    FunctionOracle f2 = make_table_oracle(n, tw);
    const double atmost = distance_to_class(f1, u, k, ClassMode::AtMostK).first;
    const double exact = distance_to_class(f2, u, k, ClassMode::ExactK).first;
    CHECK(atmost <= exact);
  }
}

TEST_CASE("distance_to_class agrees with per-candidate exact_distance") {
  Rng rng(53);
  const int n = 6;
  const auto d = DistributionSpec::product(n, 0.4);
  std::vector<uint64_t> tw{rng.next_u64()};
  FunctionOracle f = make_table_oracle(n, tw);
  const auto [best, argmin] = distance_to_class(f, d, 2, ClassMode::AtMostK);
  (void)argmin;
  // Re-derive the minimum the slow way.
  double slow = 2.0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > 2) continue;
    std::vector<int> idx;
    for (int i = 1; i <= n; ++i)
      if ((mask >> (i - 1)) & 1) idx.push_back(i);
    FunctionOracle f2 = make_table_oracle(n, tw);
    FunctionOracle g = make_parity_oracle(ParitySupport(n, idx));
    slow = std::min(slow, exact_distance(f2, g, d));
  }
  CHECK(best == doctest::Approx(slow).epsilon(1e-12));
}
