#include "klin/distance.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "klin/exact_sum.hpp"

namespace klin {

namespace {

constexpr int kMaxEnumDim = 24;
constexpr int kMaxClassDim = 20;
constexpr uint64_t kMaxCandidates = 2'000'000;

uint64_t binomial(int n, int w) {
  if (w < 0 || w > n) return 0;
  uint64_t c = 1;
  for (int i = 1; i <= w; ++i) c = c * static_cast<uint64_t>(n - w + i) / i;
  return c;
}

// All n-bit masks of weight w, ascending (Gosper's hack).
template <typename Fn>
void for_each_mask(int n, int w, Fn&& fn) {
  if (w == 0) {
    fn(uint32_t{0});
    return;
  }
  const uint32_t limit = uint32_t{1} << n;
  uint32_t m = (uint32_t{1} << w) - 1;
  while (m < limit) {
    fn(m);
    const uint32_t c = m & -m;
    const uint32_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

// Per-point masses of a product distribution over all 2^n points, indexed by
// the packed low-bits representation.
std::vector<double> product_masses(int n, const std::vector<double>& ps) {
  std::vector<double> mass{1.0};
  mass.reserve(size_t{1} << n);
  for (int i = 0; i < n; ++i) {
    const size_t half = mass.size();
    mass.resize(half * 2);
    for (size_t x = 0; x < half; ++x) {
      mass[half + x] = mass[x] * ps[i];
      mass[x] *= 1.0 - ps[i];
    }
  }
  // The loop above appends the new coordinate as the high bit, so reorder is
  // unnecessary: coordinate i+1 is bit i, matching BitVector::from_low_bits.
  return mass;
}

}  // namespace

double exact_distance(FunctionOracle& f, FunctionOracle& g, const DistributionSpec& d) {
  const int n = f.n();
  if (g.n() != n || d.n() != n) throw std::invalid_argument("exact_distance: dimension mismatch");

  switch (d.kind()) {
    case DistributionSpec::Kind::Explicit:
    case DistributionSpec::Kind::Mixture: {
      if (n > kMaxEnumDim) throw std::invalid_argument("exact_distance: dimension too large");
      ExactSum acc;
      for (const auto& [pt, w] : d.points())
        if (f.eval(pt) != g.eval(pt)) acc.add(w);
      return acc.value();
    }
    case DistributionSpec::Kind::Uniform: {
      if (n > kMaxEnumDim) throw std::invalid_argument("exact_distance: dimension too large");
      BitVector scratch(n);
      uint64_t disagreements = 0;
      for (uint64_t idx = 0; idx < (uint64_t{1} << n); ++idx) {
        scratch.words()[0] = idx;
        if (f.eval(scratch) != g.eval(scratch)) ++disagreements;
      }
      return std::ldexp(static_cast<double>(disagreements), -n);
    }
    case DistributionSpec::Kind::Product: {
      if (n > kMaxEnumDim) throw std::invalid_argument("exact_distance: dimension too large");
      const auto mass = product_masses(n, d.product_ps());
      BitVector scratch(n);
      double acc = 0.0;
      for (uint64_t idx = 0; idx < (uint64_t{1} << n); ++idx) {
        scratch.words()[0] = idx;
        if (f.eval(scratch) != g.eval(scratch)) acc += mass[idx];
      }
      return acc;
    }
  }
  throw std::logic_error("exact_distance: bad distribution kind");
}

std::pair<double, ParitySupport> distance_to_class(FunctionOracle& f, const DistributionSpec& d,
                                                   int k, ClassMode mode) {
  const int n = f.n();
  if (d.n() != n) throw std::invalid_argument("distance_to_class: dimension mismatch");
  if (n > kMaxClassDim) throw std::invalid_argument("distance_to_class: dimension too large");
  if (k < 0 || k > n) throw std::invalid_argument("distance_to_class: k out of range");

  uint64_t candidates = 0;
  const int w_lo = mode == ClassMode::ExactK ? k : 0;
  for (int w = w_lo; w <= k; ++w) candidates += binomial(n, w);
  if (candidates == 0 || candidates > kMaxCandidates)
    throw std::invalid_argument("distance_to_class: candidate class not enumerable");

  const bool table_dist = d.kind() == DistributionSpec::Kind::Explicit ||
                          d.kind() == DistributionSpec::Kind::Mixture;

  // Cache f once; every candidate is then a straight pass over cached bits.
  std::vector<uint8_t> fv;
  std::vector<double> mass;
  std::vector<uint32_t> pt_idx;  // packed points of a table distribution
  if (table_dist) {
    for (const auto& [pt, w] : d.points()) {
      fv.push_back(f.eval(pt));
      mass.push_back(w);
      pt_idx.push_back(static_cast<uint32_t>(pt.words()[0]));
    }
  } else {
    const uint64_t size = uint64_t{1} << n;
    fv.resize(size);
    BitVector scratch(n);
    for (uint64_t idx = 0; idx < size; ++idx) {
      scratch.words()[0] = idx;
      fv[idx] = f.eval(scratch);
    }
    if (d.kind() == DistributionSpec::Kind::Product) mass = product_masses(n, d.product_ps());
  }

  double best = 2.0;
  uint32_t best_mask = 0;
  const auto consider = [&](uint32_t smask) {
    double dist;
    if (table_dist) {
      ExactSum acc;
      for (size_t i = 0; i < pt_idx.size(); ++i)
        if (fv[i] != (std::popcount(pt_idx[i] & smask) & 1)) acc.add(mass[i]);
      dist = acc.value();
    } else if (d.kind() == DistributionSpec::Kind::Uniform) {
      uint64_t c = 0;
      for (uint64_t idx = 0; idx < fv.size(); ++idx)
        if (fv[idx] != (std::popcount(static_cast<uint32_t>(idx) & smask) & 1)) ++c;
      dist = std::ldexp(static_cast<double>(c), -n);
    } else {
      double acc = 0.0;
      for (uint64_t idx = 0; idx < fv.size(); ++idx)
        if (fv[idx] != (std::popcount(static_cast<uint32_t>(idx) & smask) & 1)) acc += mass[idx];
      dist = acc;
    }
    if (dist < best) {
      best = dist;
      best_mask = smask;
    }
  };

  for (int w = w_lo; w <= k; ++w) for_each_mask(n, w, consider);

  std::vector<int> support;
  for (int i = 1; i <= n; ++i)
    if ((best_mask >> (i - 1)) & 1) support.push_back(i);
  return {best, ParitySupport(n, std::move(support))};
}

}  // namespace klin
