#ifndef KLIN_BITVECTOR_HPP
#define KLIN_BITVECTOR_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "klin/rng.hpp"

namespace klin {

/// A point of {0,1}^n, bit-packed into 64-bit words.
///
/// Coordinates are 1-indexed; coordinate 1 is the leftmost character of the
/// text form. Bits above n are kept zero, so operator== is word equality.
class BitVector {
public:
  BitVector() = default;
  explicit BitVector(int n) : n_(check_dim(n)), w_((n + 63) / 64, 0) {}

  static BitVector from_string(std::string_view s);

  // Low `n` bits of `bits` become coordinates 1..n (requires n <= 64).
  static BitVector from_low_bits(int n, uint64_t bits) {
    if (n < 0 || n > 64) throw std::invalid_argument("from_low_bits: n must be in [0, 64]");
    BitVector v(n);
    if (n > 0) v.w_[0] = n == 64 ? bits : (bits & ((uint64_t{1} << n) - 1));
    return v;
  }

  int n() const { return n_; }
  size_t word_count() const { return w_.size(); }
  const uint64_t* words() const { return w_.data(); }
  uint64_t* words() { return w_.data(); }

  bool get(int i) const {
    check_index(i);
    return (w_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1;
  }

  void set(int i, bool v) {
    check_index(i);
    const uint64_t bit = uint64_t{1} << ((i - 1) & 63);
    if (v)
      w_[(i - 1) >> 6] |= bit;
    else
      w_[(i - 1) >> 6] &= ~bit;
  }

  int weight() const {
    int c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }

  void clear() {
    for (auto& w : w_) w = 0;
  }

  // Coordinatewise sum over GF(2).
  BitVector& operator^=(const BitVector& o) {
    if (o.n_ != n_) throw std::invalid_argument("BitVector xor: dimension mismatch");
    for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }

  bool operator==(const BitVector&) const = default;

  void randomize(Rng& rng) { rng.fill_words({w_.data(), w_.size()}, n_); }

  std::string to_string() const;

private:
  static int check_dim(int n) {
    if (n < 0) throw std::invalid_argument("BitVector: negative dimension");
    return n;
  }
  void check_index(int i) const {
    if (i < 1 || i > n_) throw std::invalid_argument("BitVector: index out of range");
  }

  int n_ = 0;
  std::vector<uint64_t> w_;
};

/// Non-owning view of a packed point; the type oracles evaluate.
struct BitView {
  int n = 0;
  const uint64_t* w = nullptr;

  BitView() = default;
  BitView(const BitVector& v) : n(v.n()), w(v.words()) {}
  BitView(int n_, const uint64_t* w_) : n(n_), w(w_) {}

  bool get(int i) const { return (w[(i - 1) >> 6] >> ((i - 1) & 63)) & 1; }
  size_t word_count() const { return (static_cast<size_t>(n) + 63) / 64; }
  BitVector to_vector() const {
    BitVector v(n);
    for (size_t i = 0; i < v.word_count(); ++i) v.words()[i] = w[i];
    return v;
  }
};

// XOR_{i in mask} x_i, the workhorse of every parity evaluation.
inline bool parity_and(BitView x, const BitVector& mask) {
  if (x.n != mask.n()) throw std::invalid_argument("parity_and: dimension mismatch");
  uint64_t acc = 0;
  const uint64_t* m = mask.words();
  for (size_t i = 0; i < mask.word_count(); ++i) acc ^= x.w[i] & m[i];
  return std::popcount(acc) & 1;
}

}  // namespace klin

#endif
