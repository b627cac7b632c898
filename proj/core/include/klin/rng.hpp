#ifndef KLIN_RNG_HPP
#define KLIN_RNG_HPP

#include <cstdint>
#include <random>
#include <span>

namespace klin {

// SplitMix64 finalizer, used for seed derivation.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives the seed of sub-stream (a, b) from a master seed. This exact
// formula is part of the experiment-reproducibility contract: per-trial
// streams are derive_seed(master, cell_index, trial_index).
inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b = 0) {
  return mix64(mix64(master ^ mix64(a)) ^ mix64(b ^ 0x5851f42d4c957f2dull));
}

// mt19937_64 with hand-rolled draw helpers. std:: distributions are
// implementation-defined, so everything here is spelled out to keep
// streams byte-identical across platforms and library versions.
class Rng {
public:
  explicit Rng(uint64_t seed) : eng_(mix64(seed)) {}

  uint64_t next_u64() { return eng_(); }

  // Unbiased integer in [0, bound), bound >= 1.
  uint64_t below(uint64_t bound) {
    const uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % bound;
    uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  // [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Fills `w` with random bits, clearing everything above bit `nbits`.
  void fill_words(std::span<uint64_t> w, int nbits) {
    for (auto& word : w) word = next_u64();
    const int tail = nbits & 63;
    if (tail != 0 && !w.empty()) w.back() &= (uint64_t{1} << tail) - 1;
  }

private:
  std::mt19937_64 eng_;
};

}  // namespace klin

#endif
