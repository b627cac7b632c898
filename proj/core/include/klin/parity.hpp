#ifndef KLIN_PARITY_HPP
#define KLIN_PARITY_HPP

#include <algorithm>
#include <vector>

#include "klin/bitvector.hpp"

namespace klin {

/// The support S of a parity chi_S over [n]: a sorted, duplicate-free index
/// set. Doubles as the relevant-coordinate indicator of a linear function.
class ParitySupport {
public:
  ParitySupport(int n, std::vector<int> indices) : n_(n), idx_(std::move(indices)), mask_(n) {
    std::sort(idx_.begin(), idx_.end());
    for (size_t i = 0; i < idx_.size(); ++i) {
      if (idx_[i] < 1 || idx_[i] > n_)
        throw std::invalid_argument("ParitySupport: index out of [1, n]");
      if (i > 0 && idx_[i] == idx_[i - 1])
        throw std::invalid_argument("ParitySupport: duplicate index");
      mask_.set(idx_[i], true);
    }
  }

  static ParitySupport empty(int n) { return ParitySupport(n, {}); }

  int n() const { return n_; }
  int weight() const { return static_cast<int>(idx_.size()); }
  const std::vector<int>& indices() const { return idx_; }
  const BitVector& mask() const { return mask_; }

  // chi_S(x); the empty support is the zero function.
  bool eval(BitView x) const { return parity_and(x, mask_); }

  bool operator==(const ParitySupport& o) const { return n_ == o.n_ && idx_ == o.idx_; }

private:
  int n_;
  std::vector<int> idx_;
  BitVector mask_;
};

inline bool parity_eval(const ParitySupport& s, BitView x) { return s.eval(x); }

}  // namespace klin

#endif
