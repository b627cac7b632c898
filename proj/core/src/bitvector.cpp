#include "klin/bitvector.hpp"

namespace klin {

BitVector BitVector::from_string(std::string_view s) {
  if (s.size() > static_cast<size_t>(1) << 30)
    throw std::invalid_argument("BitVector: string too long");
  BitVector v(static_cast<int>(s.size()));
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v.w_[i >> 6] |= uint64_t{1} << (i & 63);
    else if (s[i] != '0')
      throw std::invalid_argument("BitVector: text form must be 0/1 characters");
  }
  return v;
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (int i = 0; i < n_; ++i)
    if ((w_[i >> 6] >> (i & 63)) & 1) s[i] = '1';
  return s;
}

}  // namespace klin
