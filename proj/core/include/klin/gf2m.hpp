#ifndef KLIN_GF2M_HPP
#define KLIN_GF2M_HPP

#include <cstdint>
#include <vector>

namespace klin {

/// Log/antilog tables for GF(2^m), 3 <= m <= 16, over a pinned primitive
/// polynomial per degree so that matrices built on top are bit-identical
/// across runs.
struct FieldTables {
  int m = 0;
  uint32_t primitive_poly = 0;  // bit i = coefficient of x^i
  std::vector<uint32_t> antilog;  // antilog[i] = alpha^i, i in [0, 2^m - 2]
  std::vector<int32_t> log;       // log[v] for v in [1, 2^m - 1]; log[0] = -1

  uint32_t order() const { return static_cast<uint32_t>(antilog.size()); }  // 2^m - 1

  uint32_t mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return antilog[(static_cast<uint32_t>(log[a]) + log[b]) % order()];
  }

  uint32_t inv(uint32_t a) const;

  uint32_t pow_alpha(uint64_t e) const { return antilog[e % order()]; }
};

// Builds the tables and verifies primitivity: alpha must generate the whole
// multiplicative group.
FieldTables build_field(int m);

// The pinned degree-m primitive polynomial as a coefficient bitmask.
uint32_t primitive_poly_for(int m);

}  // namespace klin

#endif
