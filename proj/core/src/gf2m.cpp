#include "klin/gf2m.hpp"

#include <stdexcept>

namespace klin {

uint32_t primitive_poly_for(int m) {
  // Standard table (same picks as the classic BCH literature).
  switch (m) {
    case 3: return 0b1011;                 // x^3 + x + 1
    case 4: return 0b10011;                // x^4 + x + 1
    case 5: return 0b100101;               // x^5 + x^2 + 1
    case 6: return 0b1000011;              // x^6 + x + 1
    case 7: return 0b10000011;             // x^7 + x + 1
    case 8: return 0b101110001;            // x^8 + x^6 + x^5 + x^4 + 1
    case 9: return 0b1000010001;           // x^9 + x^4 + 1
    case 10: return 0b10000001001;         // x^10 + x^3 + 1
    case 11: return 0b100000000101;        // x^11 + x^2 + 1
    case 12: return 0b1000010011001;       // x^12 + x^7 + x^4 + x^3 + 1
    case 13: return 0b10000000011011;      // x^13 + x^4 + x^3 + x + 1
    case 14: return 0b101100000000011;     // x^14 + x^12 + x^11 + x + 1
    case 15: return 0b1000000000000011;    // x^15 + x + 1
    case 16: return 0b10000000000101101;   // x^16 + x^5 + x^3 + x^2 + 1
    default: throw std::invalid_argument("primitive_poly_for: m must be in [3, 16]");
  }
}

FieldTables build_field(int m) {
  if (m < 3 || m > 16) throw std::invalid_argument("build_field: m must be in [3, 16]");
  FieldTables f;
  f.m = m;
  f.primitive_poly = primitive_poly_for(m);
  const uint32_t size = uint32_t{1} << m;
  const uint32_t order = size - 1;
  f.antilog.resize(order);
  f.log.assign(size, -1);

  uint32_t v = 1;
  for (uint32_t i = 0; i < order; ++i) {
    f.antilog[i] = v;
    if (f.log[v] != -1)
      throw std::logic_error("build_field: polynomial is not primitive (cycle too short)");
    f.log[v] = static_cast<int32_t>(i);
    v <<= 1;
    if (v & size) v ^= f.primitive_poly;
  }
  if (v != 1) throw std::logic_error("build_field: alpha^(2^m - 1) != 1");
  for (uint32_t e = 1; e < size; ++e)
    if (f.log[e] == -1) throw std::logic_error("build_field: antilog is not onto");
  return f;
}

uint32_t FieldTables::inv(uint32_t a) const {
  if (a == 0) throw std::invalid_argument("FieldTables::inv: zero has no inverse");
  return antilog[(order() - log[a]) % order()];
}

}  // namespace klin
